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

#include <compare>
#include <filesystem>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace evi {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad flags, missing resources, unknown locales.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. `line()` is 1-based, 0 when not line-oriented.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + (line ? ":" + std::to_string(line) : std::string()) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Input data that is well-formed but inconsistent (e.g. locale mismatch).
class DataError : public Error {
 public:
  using Error::Error;
};

class LookupError : public Error {
 public:
  using Error::Error;
};

/// A caller broke an API precondition (empty score list, r < 1, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

enum class Locale { kEnGB, kPlPL, kFrFR };

/// Accepts "en-GB", "pl-PL", "fr-FR" (and the underscore spelling).
Locale parse_locale(std::string_view tag);
std::string_view to_string(Locale locale);

enum class ItemKind { kPostcode = 0, kName = 1, kDob = 2 };
inline constexpr ItemKind kAllItems[] = {ItemKind::kPostcode, ItemKind::kName, ItemKind::kDob};
std::string_view to_string(ItemKind kind);

struct Date {
  int year = 0;
  int month = 0;
  int day = 0;

  bool valid() const;
  /// YYYY-MM-DD, zero padded.
  std::string iso() const;
  static std::optional<Date> from_iso(std::string_view text);
  static std::optional<Date> make(int year, int month, int day);

  /// Days since 1970-01-01.
  std::int64_t to_days() const;
  static Date from_days(std::int64_t days);

  friend auto operator<=>(const Date&, const Date&) = default;
};

/// Writes `content` to a sibling temp file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

}  // namespace evi
