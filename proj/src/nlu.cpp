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

#include "evi/nlu.hpp"

#include <algorithm>

#include "evi/postcode.hpp"
#include "evi/text.hpp"

namespace evi {

ItemKind Turn::item_for_turn(int turn_index) {
  if (turn_index < 1 || turn_index > kMaxTurns) {
    throw ContractError("turn index " + std::to_string(turn_index) + " outside 1..9");
  }
  return static_cast<ItemKind>((turn_index - 1) / kTurnsPerItem);
}

NluMode parse_nlu_mode(std::string_view s) {
  if (s == "cautious") return NluMode::kCautious;
  if (s == "seeking") return NluMode::kSeeking;
  throw ConfigError("unknown NLU mode '" + std::string(s) + "' (expected cautious or seeking)");
}

std::string_view to_string(NluMode mode) { return mode == NluMode::kCautious ? "cautious" : "seeking"; }

ParsedName make_name(std::optional<std::string> first, std::optional<std::string> last) {
  ParsedName n{std::move(first), std::move(last), std::nullopt};
  if (n.first && n.last) n.full = *n.first + " " + *n.last;
  return n;
}

namespace {

template <class T>
std::vector<T> collect(const std::vector<NluValue>& values) {
  std::vector<T> out;
  for (const auto& v : values) {
    if (auto* p = std::get_if<T>(&v)) out.push_back(*p);
  }
  return out;
}

std::vector<std::string> split_spaces(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    auto j = s.find(' ', i);
    if (j == std::string_view::npos) j = s.size();
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j + 1;
  }
  return out;
}

// ---- names ----

struct Segment {
  std::string text;
  std::uint8_t roles = 0;

  bool first_only() const { return roles == kFirstName; }
  bool last_only() const { return roles == kLastName; }
};

// "J-O-H-N" -> {"J","O","H","N"}; anything else -> empty.
std::vector<std::string> hyphenated_letters(const std::string& tok) {
  if (tok.find('-') == std::string::npos) return {};
  std::vector<std::string> parts;
  std::size_t i = 0;
  while (i <= tok.size()) {
    auto j = tok.find('-', i);
    if (j == std::string::npos) j = tok.size();
    parts.push_back(tok.substr(i, j - i));
    i = j + 1;
  }
  for (const auto& p : parts) {
    if (!text::is_single_letter(p)) return {};
  }
  return parts;
}

// Canonical tokens with spelled letter runs joined into one token.
std::vector<std::string> name_tokens(std::string_view preprocessed) {
  std::vector<std::string> out;
  std::string run;
  std::size_t run_len = 0;
  auto flush = [&] {
    if (run_len > 0) out.push_back(text::canonical_name(run));
    run.clear();
    run_len = 0;
  };
  for (const auto& tok : split_spaces(preprocessed)) {
    if (text::is_single_letter(tok)) {
      run += tok;
      ++run_len;
      continue;
    }
    if (auto letters = hyphenated_letters(tok); !letters.empty()) {
      for (const auto& l : letters) run += l;
      run_len += letters.size();
      continue;
    }
    flush();
    out.push_back(text::canonical_name(tok));
  }
  flush();
  return out;
}

ParsedName read_pair(const Segment& a, const Segment& b) {
  if (a.last_only() && b.first_only()) return make_name(b.text, a.text);
  return make_name(a.text, b.text);
}

ParsedName read_run(const std::vector<Segment>& segs, std::size_t from, std::size_t to) {
  if (to - from == 2) return read_pair(segs[from], segs[from + 1]);
  std::string last;
  for (std::size_t k = from + 1; k < to; ++k) {
    if (!last.empty()) last += ' ';
    last += segs[k].text;
  }
  return make_name(segs[from].text, last);
}

ParsedName read_single(const Segment& s) {
  return (s.roles & kFirstName) ? make_name(s.text, std::nullopt) : make_name(std::nullopt, s.text);
}

template <class T>
void push_unique(std::vector<T>& out, T v) {
  if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
}

template <class Finder>
NluResult extract_with(const Turn& turn, ItemKind kind, const LocaleResources& res, Finder&& find) {
  if (turn.item_kind() != kind) {
    throw ContractError("turn " + std::to_string(turn.turn_index) + " asks for " +
                        std::string(to_string(turn.item_kind())) + ", not " + std::string(to_string(kind)));
  }
  NluResult r;
  r.item_kind = kind;
  const std::size_t n = std::min(turn.nbest.size(), kMaxNbest);
  for (std::size_t rank = 0; rank < n; ++rank) {
    for (auto& v : find(preprocess(turn.nbest[rank], res))) {
      NluValue value(std::move(v));
      if (std::find(r.values.begin(), r.values.end(), value) != r.values.end()) continue;
      r.values.push_back(std::move(value));
      r.source_rank.push_back(rank);
    }
  }
  return r;
}

}  // namespace

std::vector<std::string> NluResult::postcodes() const { return collect<std::string>(values); }
std::vector<ParsedName> NluResult::names() const { return collect<ParsedName>(values); }
std::vector<Date> NluResult::dates() const { return collect<Date>(values); }

std::vector<std::string> find_postcodes(std::string_view preprocessed, const LocaleResources& res, NluMode mode) {
  // Whitespace and hyphens are separators; matches start and end on token
  // boundaries so "IS AB1 2CD" cannot yield "SAB12CD".
  std::string chars;
  std::vector<std::size_t> starts, ends;
  for (const auto& tok : split_spaces(preprocessed)) {
    const std::size_t before = chars.size();
    for (char c : tok) {
      if (c != '-') chars += c;
    }
    if (chars.size() == before) continue;
    starts.push_back(before);
    ends.push_back(chars.size());
  }
  const PostcodePattern& pat = res.postcode_pattern;
  std::vector<std::string> out;
  if (mode == NluMode::kCautious) {
    if (!chars.empty() && pat.matches(chars)) out.push_back(chars);
    return out;
  }
  for (std::size_t s : starts) {
    for (std::size_t e : ends) {
      if (e <= s || e - s < pat.min_length()) continue;
      if (e - s > pat.max_length()) break;
      if (pat.matches(chars.data() + s, chars.data() + e)) push_unique(out, chars.substr(s, e - s));
    }
  }
  return out;
}

std::vector<ParsedName> find_names(std::string_view preprocessed, const LocaleResources& res, NluMode mode) {
  const std::vector<std::string> toks = name_tokens(preprocessed);
  const NameLexicon& lex = res.lexicon;
  std::vector<ParsedName> out;

  if (mode == NluMode::kCautious) {
    std::vector<Segment> segs;
    for (std::size_t p = 0; p < toks.size();) {
      const auto m = lex.longest_match(toks, p);
      if (m.length == 0) return {};
      std::vector<std::string> words(toks.begin() + static_cast<std::ptrdiff_t>(p),
                                     toks.begin() + static_cast<std::ptrdiff_t>(p + m.length));
      segs.push_back({text::join(words, " "), m.roles});
      p += m.length;
    }
    if (segs.size() == 1) out.push_back(read_single(segs[0]));
    if (segs.size() >= 2) out.push_back(read_run(segs, 0, segs.size()));
    return out;
  }

  std::vector<std::vector<Segment>> runs(1);
  for (std::size_t p = 0; p < toks.size();) {
    const auto m = lex.longest_match(toks, p);
    if (m.length == 0) {
      if (!runs.back().empty()) runs.emplace_back();
      ++p;
      continue;
    }
    std::vector<std::string> words(toks.begin() + static_cast<std::ptrdiff_t>(p),
                                   toks.begin() + static_cast<std::ptrdiff_t>(p + m.length));
    runs.back().push_back({text::join(words, " "), m.roles});
    p += m.length;
  }
  for (const auto& segs : runs) {
    if (segs.size() >= 3) push_unique(out, read_run(segs, 0, segs.size()));
    for (std::size_t k = 0; k + 1 < segs.size(); ++k) push_unique(out, read_pair(segs[k], segs[k + 1]));
    for (const auto& s : segs) {
      if (s.roles & kFirstName) push_unique(out, make_name(s.text, std::nullopt));
      if (s.roles & kLastName) push_unique(out, make_name(std::nullopt, s.text));
    }
  }
  return out;
}

NluResult extract_postcode(const Turn& turn, const LocaleResources& res, NluMode mode) {
  return extract_with(turn, ItemKind::kPostcode, res,
                      [&](const std::string& pre) { return find_postcodes(pre, res, mode); });
}

NluResult extract_name(const Turn& turn, const LocaleResources& res, NluMode mode) {
  return extract_with(turn, ItemKind::kName, res, [&](const std::string& pre) { return find_names(pre, res, mode); });
}

NluResult extract_date(const Turn& turn, const LocaleResources& res, NluMode mode) {
  return extract_with(turn, ItemKind::kDob, res, [&](const std::string& pre) { return find_dates(pre, res, mode); });
}

NluResult extract(const Turn& turn, const LocaleResources& res, NluMode mode) {
  switch (turn.item_kind()) {
    case ItemKind::kPostcode: return extract_postcode(turn, res, mode);
    case ItemKind::kName: return extract_name(turn, res, mode);
    case ItemKind::kDob: return extract_date(turn, res, mode);
  }
  return {};
}

}  // namespace evi
