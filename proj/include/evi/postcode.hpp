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

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "evi/rng.hpp"

namespace evi {

/// Postcode shape written in the compact notation used by the locale files:
///   A  an ASCII letter        9  a digit        X  a letter or a digit
///   (...)  an optional group  space  ignored (separator position)
/// e.g. "A(A)9(X) 9AA" for en-GB, "99999" for pl-PL and fr-FR.
///
/// Matching operates on canonical postcodes: uppercase, separators removed.
class PostcodePattern {
 public:
  PostcodePattern() = default;
  explicit PostcodePattern(std::string_view notation);

  bool matches(std::string_view canonical) const;
  /// Same as matches() but over a sub-range given as a vector of chars.
  bool matches(const char* begin, const char* end) const;

  const std::string& notation() const { return notation_; }
  std::size_t min_length() const { return min_len_; }
  std::size_t max_length() const { return max_len_; }

 private:
  enum class CharClass { kLetter, kDigit, kAlnum };
  struct Group {
    std::vector<CharClass> chars;
    bool optional = false;
  };

  bool match_from(std::size_t group, const char* p, const char* end) const;
  static bool accepts(CharClass cls, char c);

  std::string notation_;
  std::vector<Group> groups_;
  std::size_t min_len_ = 0;
  std::size_t max_len_ = 0;
};

/// Uppercase ASCII, whitespace and hyphens removed.
std::string canonical_postcode(std::string_view raw);

/// Expands a generation format ("AA9A 9AA") with uniform draws per class;
/// other characters are copied. Result is canonicalized.
std::string sample_postcode(std::string_view format, Rng& rng);

/// Number of distinct canonical strings a generation format can produce.
double postcode_format_capacity(std::string_view format);

}  // namespace evi
