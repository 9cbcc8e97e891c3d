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

#include "evi/text.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include "evi/common.hpp"

namespace evi::text {
namespace {

const icu::Normalizer2& nfc_instance() {
  static const icu::Normalizer2* n = [] {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* inst = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status)) throw ConfigError("ICU NFC normalizer unavailable");
    return inst;
  }();
  return *n;
}

const icu::Normalizer2& nfd_instance() {
  static const icu::Normalizer2* n = [] {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* inst = icu::Normalizer2::getNFDInstance(status);
    if (U_FAILURE(status)) throw ConfigError("ICU NFD normalizer unavailable");
    return inst;
  }();
  return *n;
}

icu::UnicodeString from_utf8(std::string_view s) {
  return icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
}

std::string utf8(const icu::UnicodeString& u) {
  std::string out;
  u.toUTF8String(out);
  return out;
}

icu::UnicodeString normalized(const icu::Normalizer2& n, const icu::UnicodeString& u) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString r = n.normalize(u, status);
  if (U_FAILURE(status)) return u;
  return r;
}

bool is_space(char32_t c) { return u_isUWhiteSpace(static_cast<UChar32>(c)); }

}  // namespace

std::string nfc(std::string_view s) { return utf8(normalized(nfc_instance(), from_utf8(s))); }

std::string casefold(std::string_view s) {
  icu::UnicodeString u = normalized(nfc_instance(), from_utf8(s));
  u.foldCase();
  return utf8(normalized(nfc_instance(), u));
}

std::string upper(std::string_view s) {
  icu::UnicodeString u = normalized(nfc_instance(), from_utf8(s));
  u.toUpper(icu::Locale::getRoot());
  return utf8(normalized(nfc_instance(), u));
}

std::string fold_diacritics(std::string_view s) {
  icu::UnicodeString u = normalized(nfd_instance(), from_utf8(s));
  u.foldCase();
  icu::UnicodeString out;
  for (int32_t i = 0; i < u.length();) {
    const UChar32 c = u.char32At(i);
    i += U16_LENGTH(c);
    if (u_charType(c) == U_NON_SPACING_MARK) continue;
    // Polish barred l has no canonical decomposition.
    if (c == 0x0142 || c == 0x0141) {
      out.append(static_cast<UChar32>('l'));
      continue;
    }
    out.append(c);
  }
  return utf8(normalized(nfc_instance(), out));
}

std::string collapse_ws(std::string_view s) {
  return join(split_ws(s), " ");
}

std::string canonical_name(std::string_view s) { return collapse_ws(casefold(s)); }

std::u32string to_u32(std::string_view s) {
  const icu::UnicodeString u = from_utf8(s);
  std::u32string out;
  out.reserve(static_cast<std::size_t>(u.length()));
  for (int32_t i = 0; i < u.length();) {
    const UChar32 c = u.char32At(i);
    out.push_back(static_cast<char32_t>(c));
    i += U16_LENGTH(c);
  }
  return out;
}

std::string to_utf8(std::u32string_view s) {
  icu::UnicodeString u;
  for (char32_t c : s) u.append(static_cast<UChar32>(c));
  return utf8(u);
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  const std::u32string u = to_u32(s);
  std::u32string cur;
  for (char32_t c : u) {
    if (is_space(c)) {
      if (!cur.empty()) out.push_back(to_utf8(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(to_utf8(cur));
  return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

bool is_single_letter(std::string_view token) {
  const std::u32string u = to_u32(token);
  return u.size() == 1 && u_isalpha(static_cast<UChar32>(u[0]));
}

bool is_all_digits(std::string_view token) {
  if (token.empty()) return false;
  for (char c : token) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

bool is_alpha_word(std::string_view token) {
  const std::u32string u = to_u32(token);
  if (u.empty()) return false;
  for (char32_t c : u) {
    if (!u_isalpha(static_cast<UChar32>(c))) return false;
  }
  return true;
}

}  // namespace evi::text
