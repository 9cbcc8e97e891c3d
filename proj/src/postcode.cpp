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

#include "evi/postcode.hpp"

#include <cctype>

#include "evi/common.hpp"

namespace evi {

PostcodePattern::PostcodePattern(std::string_view notation) : notation_(notation) {
  bool in_group = false;
  Group current;
  auto flush = [&] {
    if (!current.chars.empty()) groups_.push_back(current);
    current = Group{};
  };
  for (char c : notation) {
    switch (c) {
      case ' ':
        break;
      case '(':
        if (in_group) throw ConfigError("nested group in postcode pattern '" + notation_ + "'");
        flush();
        in_group = true;
        current.optional = true;
        break;
      case ')':
        if (!in_group || current.chars.empty()) {
          throw ConfigError("unbalanced group in postcode pattern '" + notation_ + "'");
        }
        flush();
        in_group = false;
        break;
      case 'A':
      case '9':
      case 'X': {
        const CharClass cls = c == 'A' ? CharClass::kLetter : c == '9' ? CharClass::kDigit : CharClass::kAlnum;
        if (in_group) {
          current.chars.push_back(cls);
        } else {
          groups_.push_back(Group{{cls}, false});
        }
        break;
      }
      default:
        throw ConfigError("bad character '" + std::string(1, c) + "' in postcode pattern '" + notation_ + "'");
    }
  }
  if (in_group) throw ConfigError("unterminated group in postcode pattern '" + notation_ + "'");
  if (groups_.empty()) throw ConfigError("empty postcode pattern");
  for (const auto& g : groups_) {
    max_len_ += g.chars.size();
    if (!g.optional) min_len_ += g.chars.size();
  }
}

bool PostcodePattern::accepts(CharClass cls, char c) {
  const bool letter = c >= 'A' && c <= 'Z';
  const bool digit = c >= '0' && c <= '9';
  switch (cls) {
    case CharClass::kLetter: return letter;
    case CharClass::kDigit: return digit;
    case CharClass::kAlnum: return letter || digit;
  }
  return false;
}

bool PostcodePattern::match_from(std::size_t group, const char* p, const char* end) const {
  if (group == groups_.size()) return p == end;
  const Group& g = groups_[group];
  const auto n = static_cast<std::ptrdiff_t>(g.chars.size());
  if (end - p >= n) {
    bool ok = true;
    for (std::ptrdiff_t i = 0; i < n && ok; ++i) ok = accepts(g.chars[static_cast<std::size_t>(i)], p[i]);
    if (ok && match_from(group + 1, p + n, end)) return true;
  }
  return g.optional && match_from(group + 1, p, end);
}

bool PostcodePattern::matches(const char* begin, const char* end) const {
  const auto len = static_cast<std::size_t>(end - begin);
  if (groups_.empty() || len < min_len_ || len > max_len_) return false;
  return match_from(0, begin, end);
}

bool PostcodePattern::matches(std::string_view canonical) const {
  return matches(canonical.data(), canonical.data() + canonical.size());
}

std::string canonical_postcode(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isspace(u) || c == '-') continue;
    out.push_back(static_cast<char>(std::toupper(u)));
  }
  return out;
}

std::string sample_postcode(std::string_view format, Rng& rng) {
  static constexpr std::string_view kLetters = "ABCDEFGHIJKLMNOPQRSTUVWXYZ";
  static constexpr std::string_view kDigits = "0123456789";
  static constexpr std::string_view kAlnum = "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
  std::string out;
  for (char c : format) {
    switch (c) {
      case 'A': out.push_back(kLetters[rng.below(kLetters.size())]); break;
      case '9': out.push_back(kDigits[rng.below(kDigits.size())]); break;
      case 'X': out.push_back(kAlnum[rng.below(kAlnum.size())]); break;
      default: out.push_back(c);
    }
  }
  return canonical_postcode(out);
}

double postcode_format_capacity(std::string_view format) {
  double n = 1;
  for (char c : format) {
    if (c == 'A') n *= 26;
    else if (c == '9') n *= 10;
    else if (c == 'X') n *= 36;
  }
  return n;
}

}  // namespace evi
