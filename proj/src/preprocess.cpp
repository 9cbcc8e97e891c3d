// Copyright 2026 The EVI Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Spoken-form normalization applied to every ASR hypothesis before
// extraction.

#include <optional>
#include <string>
#include <vector>

#include "evi/nlu.hpp"
#include "evi/text.hpp"

namespace evi {
namespace {

constexpr std::string_view kStripChars = ",.;:!?\"()";

struct Tok {
  std::string text;
  std::string key;

  explicit Tok(std::string t) : text(std::move(t)), key(lookup_key(text)) {}
};

std::string strip_punct(std::string_view s) {
  const auto b = s.find_first_not_of(kStripChars);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(kStripChars);
  return std::string(s.substr(b, e - b + 1));
}

bool is_letter(const Tok& t) { return text::is_single_letter(t.text); }
bool is_digits(const Tok& t) { return text::is_all_digits(t.text); }

class Normalizer {
 public:
  explicit Normalizer(const LocaleResources& res) : res_(res), nums_(res.numbers) {}

  std::vector<Tok> tokenize(std::string_view hyp) const {
    std::vector<Tok> out;
    for (auto& raw : text::split_ws(text::nfc(hyp))) {
      std::string t = strip_punct(raw);
      if (t.empty()) continue;
      if (t.find('-') != std::string::npos) {
        auto parts = text::split_ws(lookup_key(t));
        bool all_numeric = parts.size() > 1;
        for (const auto& p : parts) {
          all_numeric = all_numeric && (nums_.words.count(p) || nums_.multipliers.count(p) || nums_.connectors.count(p));
        }
        if (all_numeric) {
          for (auto& p : parts) out.emplace_back(std::move(p));
          continue;
        }
      }
      out.emplace_back(std::move(t));
    }
    return out;
  }

  // One rewrite pass; returns true if anything changed.
  bool rewrite(std::vector<Tok>& toks) const {
    bool changed = spelling(toks);
    changed = numbers(toks) || changed;
    changed = alphabet(toks) || changed;
    return changed;
  }

 private:
  // "B for Bravo" / "B jak Barbara" / "B comme Bernard" -> "B".
  bool spelling(std::vector<Tok>& toks) const {
    bool changed = false;
    std::vector<Tok> out;
    for (std::size_t i = 0; i < toks.size(); ++i) {
      out.push_back(toks[i]);
      if (!is_letter(toks[i])) continue;
      const std::string letter = text::fold_diacritics(toks[i].text);
      for (const auto& conn : res_.spelling.connectors) {
        const std::size_t word = i + 1 + conn.size();
        if (word >= toks.size()) continue;
        bool hit = true;
        for (std::size_t k = 0; k < conn.size() && hit; ++k) hit = toks[i + 1 + k].key == conn[k];
        if (!hit) continue;
        const std::string w = text::fold_diacritics(toks[word].text);
        if (text::to_u32(w).size() >= 2 && w.compare(0, letter.size(), letter) == 0) {
          i = word;
          changed = true;
          break;
        }
      }
    }
    toks = std::move(out);
    return changed;
  }

  struct WordHit {
    int value = 0;
    std::size_t len = 0;
    bool ordinal = false;
  };

  std::optional<WordHit> number_word(const std::vector<Tok>& toks, std::size_t i) const {
    std::optional<WordHit> best;
    std::string key;
    for (std::size_t n = 1; n <= nums_.max_words && i + n <= toks.size(); ++n) {
      if (n > 1) key += ' ';
      key += toks[i + n - 1].key;
      auto it = nums_.words.find(key);
      if (it != nums_.words.end()) best = WordHit{it->second, n, nums_.ordinal_words.count(key) > 0};
    }
    return best;
  }

  std::optional<int> multiplier(const Tok& t) const {
    auto it = nums_.multipliers.find(t.key);
    if (it == nums_.multipliers.end()) return std::nullopt;
    return it->second;
  }

  // Largest value that may still be added after v: nothing after units and
  // teens, units after tens (teens too for locales such as fr 60/80), and
  // anything below 100 after hundreds.
  int ceiling_after(int v) const {
    if (v >= 10 && v < 20) return 1;
    for (int t : nums_.tens_taking_teens) {
      if (v % 100 == t) return 20;
    }
    int c = 1;
    while (v > 0 && v % 10 == 0) {
      v /= 10;
      c *= 10;
    }
    return c;
  }

  struct Composed {
    long value = 0;
    std::size_t len = 0;
  };

  std::optional<Composed> compose(const std::vector<Tok>& toks, std::size_t start) const {
    long total = 0;
    long group = 0;
    long ceiling = 0;
    bool have = false;
    bool ordinal = false;  // once an ordinal is read only ordinals may follow
    std::size_t i = start;

    if (is_digits(toks[i])) {
      if (i + 1 >= toks.size() || !multiplier(toks[i + 1]) || toks[i].text.size() > 3) return std::nullopt;
      group = std::stol(toks[i].text);
      have = true;
      ++i;
    }

    while (i < toks.size()) {
      if (auto m = multiplier(toks[i])) {
        if (ordinal) break;
        if (*m == 100 && group < 100) {
          group = std::max(group, 1L) * 100;
          ceiling = 100;
        } else if (*m == 1000 && total == 0 && group < 1000) {
          total = std::max(group, 1L) * 1000;
          group = 0;
          ceiling = 1000;
        } else {
          break;
        }
        have = true;
        ++i;
        continue;
      }
      std::size_t at = i;
      const bool connector = have && nums_.connectors.count(toks[i].key) > 0;
      if (connector) ++at;
      if (at >= toks.size()) break;
      auto w = number_word(toks, at);
      if (!w || (ordinal && !w->ordinal)) break;
      if (w->value == 0) {
        if (!have) return Composed{0, w->len};
        break;
      }
      if (!have) {
        group = w->value;
      } else if (w->value < ceiling) {
        group += w->value;
      } else {
        break;
      }
      have = true;
      ceiling = ceiling_after(w->value);
      i = at + w->len;
      ordinal = w->ordinal;
    }
    const std::size_t min_len = is_digits(toks[start]) ? 2 : 1;
    if (!have || i - start < min_len) return std::nullopt;
    return Composed{total + group, i - start};
  }

  bool numbers(std::vector<Tok>& toks) const {
    bool changed = false;
    std::vector<Tok> out;
    for (std::size_t i = 0; i < toks.size();) {
      if (auto rep = nums_.repeaters.find(toks[i].key); rep != nums_.repeaters.end() && i + 1 < toks.size()) {
        std::optional<int> digit;
        std::size_t len = 1;
        if (is_digits(toks[i + 1]) && toks[i + 1].text.size() == 1) {
          digit = toks[i + 1].text[0] - '0';
        } else if (auto w = number_word(toks, i + 1); w && w->value < 10) {
          digit = w->value;
          len = w->len;
        }
        if (digit) {
          for (int k = 0; k < rep->second; ++k) out.emplace_back(std::to_string(*digit));
          i += 1 + len;
          changed = true;
          continue;
        }
      }
      if (auto c = compose(toks, i)) {
        out.emplace_back(std::to_string(c->value));
        i += c->len;
        changed = true;
        continue;
      }
      out.push_back(toks[i]);
      ++i;
    }
    toks = std::move(out);
    return changed;
  }

  // Alphabet words become letters only next to other spelled material, so
  // "Victor" alone or "November 1990" keep their word reading.
  bool alphabet(std::vector<Tok>& toks) const {
    const auto& alpha = res_.spelling.alphabet;
    auto spelled = [&](std::size_t j, bool allow_digit) {
      const Tok& t = toks[j];
      return is_letter(t) || alpha.count(t.key) > 0 || (allow_digit && is_digits(t));
    };
    bool changed = false;
    for (std::size_t i = 0; i < toks.size(); ++i) {
      auto it = alpha.find(toks[i].key);
      if (it == alpha.end()) continue;
      const bool allow_digit = res_.months.count(toks[i].key) == 0;
      const bool left = i > 0 && spelled(i - 1, allow_digit);
      const bool right = i + 1 < toks.size() && spelled(i + 1, allow_digit);
      if (left || right) {
        toks[i] = Tok(it->second);
        changed = true;
      }
    }
    return changed;
  }

  const LocaleResources& res_;
  const NumberTables& nums_;
};

}  // namespace

std::string preprocess(std::string_view hypothesis, const LocaleResources& res) {
  const Normalizer norm(res);
  std::vector<Tok> toks = norm.tokenize(hypothesis);
  for (int pass = 0; pass < 32 && norm.rewrite(toks); ++pass) {
  }
  std::vector<std::string> words;
  words.reserve(toks.size());
  for (const auto& t : toks) words.push_back(text::upper(t.text));
  return text::join(words, " ");
}

}  // namespace evi
