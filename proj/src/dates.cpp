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

// Date-of-birth grammar. Numeric forms are read day-first in every
// supported locale.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "evi/nlu.hpp"
#include "evi/text.hpp"

namespace evi {
namespace {

constexpr int kMinYear = 1900;
constexpr int kMaxYear = 2099;

std::optional<int> to_int(std::string_view s, std::size_t min_len, std::size_t max_len) {
  if (s.size() < min_len || s.size() > max_len || !text::is_all_digits(s)) return std::nullopt;
  return std::stoi(std::string(s));
}

std::optional<Date> full_date(int y, int m, int d) {
  if (y < kMinYear || y > kMaxYear) return std::nullopt;
  return Date::make(y, m, d);
}

struct Candidate {
  std::size_t end;
  Date date;
};

class DateGrammar {
 public:
  DateGrammar(const LocaleResources& res, std::string_view preprocessed) : res_(res) {
    for (auto& tok : text::split_ws(preprocessed)) {
      // Numeric tokens keep their separators for the d/m/y reader.
      const bool numeric = std::any_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; });
      std::string key = numeric ? text::casefold(tok) : lookup_key(tok);
      if (res.date_fillers.count(key)) continue;
      keys_.push_back(std::move(key));
    }
  }

  std::size_t size() const { return keys_.size(); }

  /// Every parse starting at i, in preference order.
  std::vector<Candidate> parses_at(std::size_t i) const {
    std::vector<Candidate> out;
    if (auto d = numeric_token(keys_[i])) out.push_back({i + 1, *d});

    auto with_years = [&](std::size_t at, int m, int d, bool allow_short) {
      for (auto [end, y] : years_at(at, allow_short)) {
        if (auto date = full_date(y, m, d)) out.push_back({end, *date});
      }
    };
    const auto day = day_at(i);
    const auto month = month_word(i);
    if (day && i + 1 < size()) {
      if (auto m = month_word(i + 1)) with_years(i + 2, *m, *day, true);
    }
    if (month && i + 1 < size()) {
      if (auto d = day_at(i + 1)) with_years(i + 2, *month, *d, true);
    }
    if (day && i + 1 < size()) {
      if (auto m = to_int(keys_[i + 1], 1, 2)) with_years(i + 2, *m, *day, false);
    }
    return out;
  }

 private:
  std::optional<int> day_at(std::size_t i) const {
    const std::string& k = keys_[i];
    std::size_t n = 0;
    while (n < k.size() && k[n] >= '0' && k[n] <= '9') ++n;
    if (n == 0 || n > 2) return std::nullopt;
    if (n < k.size()) {
      const std::string_view suffix(k.data() + n, k.size() - n);
      bool ok = false;
      for (const auto& s : res_.numbers.ordinal_suffixes) ok = ok || suffix == s;
      if (!ok) return std::nullopt;
    }
    const int d = std::stoi(k.substr(0, n));
    if (d < 1 || d > 31) return std::nullopt;
    return d;
  }

  std::optional<int> month_word(std::size_t i) const {
    auto it = res_.months.find(keys_[i]);
    if (it == res_.months.end()) return std::nullopt;
    return it->second;
  }

  int pivot(int yy) const { return yy <= res_.two_digit_year_pivot ? 2000 + yy : 1900 + yy; }

  // (end, year) readings starting at i, longest first.
  std::vector<std::pair<std::size_t, int>> years_at(std::size_t i, bool allow_short) const {
    std::vector<std::pair<std::size_t, int>> out;
    if (i >= size()) return out;
    if (i + 4 <= size()) {
      int y = 0;
      bool ok = true;
      for (std::size_t k = i; k < i + 4 && ok; ++k) {
        auto d = to_int(keys_[k], 1, 1);
        ok = d.has_value();
        if (ok) y = y * 10 + *d;
      }
      if (ok) out.emplace_back(i + 4, y);
    }
    if (i + 2 <= size() && (keys_[i] == "19" || keys_[i] == "20")) {
      if (auto yy = to_int(keys_[i + 1], 2, 2)) out.emplace_back(i + 2, std::stoi(keys_[i]) * 100 + *yy);
    }
    if (auto y = to_int(keys_[i], 4, 4)) out.emplace_back(i + 1, *y);
    if (allow_short) {
      if (auto yy = to_int(keys_[i], 2, 2)) out.emplace_back(i + 1, pivot(*yy));
    }
    return out;
  }

  std::optional<Date> numeric_token(const std::string& k) const {
    for (char sep : {'/', '.', '-'}) {
      if (k.find(sep) == std::string::npos) continue;
      std::vector<std::string> parts;
      std::size_t i = 0;
      while (true) {
        auto j = k.find(sep, i);
        parts.push_back(k.substr(i, j == std::string::npos ? std::string::npos : j - i));
        if (j == std::string::npos) break;
        i = j + 1;
      }
      if (parts.size() != 3) return std::nullopt;
      if (auto y = to_int(parts[0], 4, 4)) {
        auto m = to_int(parts[1], 1, 2);
        auto d = to_int(parts[2], 1, 2);
        if (m && d) return full_date(*y, *m, *d);
        return std::nullopt;
      }
      auto d = to_int(parts[0], 1, 2);
      auto m = to_int(parts[1], 1, 2);
      std::optional<int> y = to_int(parts[2], 4, 4);
      if (!y) {
        if (auto yy = to_int(parts[2], 2, 2)) y = pivot(*yy);
      }
      if (d && m && y) return full_date(*y, *m, *d);
      return std::nullopt;
    }
    return std::nullopt;
  }

  const LocaleResources& res_;
  std::vector<std::string> keys_;
};

}  // namespace

std::vector<Date> find_dates(std::string_view preprocessed, const LocaleResources& res, NluMode mode) {
  const DateGrammar g(res, preprocessed);
  std::vector<Date> out;
  if (g.size() == 0) return out;

  if (mode == NluMode::kCautious) {
    for (const auto& c : g.parses_at(0)) {
      if (c.end == g.size()) return {c.date};
    }
    return out;
  }

  std::size_t covered_to = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto parses = g.parses_at(i);
    const Candidate* best = nullptr;
    for (const auto& c : parses) {
      if (!best || c.end > best->end) best = &c;
    }
    if (!best || best->end <= covered_to) continue;
    covered_to = best->end;
    if (std::find(out.begin(), out.end(), best->date) == out.end()) out.push_back(best->date);
  }
  return out;
}

}  // namespace evi
