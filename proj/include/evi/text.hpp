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

/// UTF-8 helpers backed by ICU. All functions accept arbitrary UTF-8 and
/// replace invalid sequences with U+FFFD.
namespace evi::text {

std::string nfc(std::string_view s);
/// NFC followed by full Unicode case folding.
std::string casefold(std::string_view s);
std::string upper(std::string_view s);
/// Casefold with combining marks removed ("Łódź" -> "lodz"). Used for
/// lookup keys of closed word classes (numbers, months, spelling words).
std::string fold_diacritics(std::string_view s);
/// NFC, casefold, whitespace collapsed to single spaces, trimmed.
std::string canonical_name(std::string_view s);

std::u32string to_u32(std::string_view s);
std::string to_utf8(std::u32string_view s);

std::vector<std::string> split_ws(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
std::string collapse_ws(std::string_view s);

/// Exactly one alphabetic code point.
bool is_single_letter(std::string_view token);
bool is_all_digits(std::string_view token);
/// Alphabetic code points only (any script).
bool is_alpha_word(std::string_view token);

}  // namespace evi::text
