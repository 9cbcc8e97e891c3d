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

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "evi/common.hpp"
#include "evi/postcode.hpp"

namespace evi {

enum NameRole : std::uint8_t { kFirstName = 1, kLastName = 2 };

/// First/last name lexicon keyed by canonical (casefolded) token sequences.
/// Multi-word entries ("da silva") are supported.
class NameLexicon {
 public:
  struct Match {
    std::size_t length = 0;  // tokens consumed, 0 on miss
    std::uint8_t roles = 0;  // NameRole bits
  };

  void add(std::string_view name, NameRole role);
  /// Longest entry starting at `start`. Tokens must already be canonical.
  Match longest_match(std::span<const std::string> tokens, std::size_t start) const;
  std::uint8_t roles(std::string_view canonical) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, std::uint8_t> entries_;
  std::size_t max_tokens_ = 1;
};

/// Closed-class word tables; all keys are diacritic-folded, multi-word keys
/// joined with single spaces.
struct NumberTables {
  std::unordered_map<std::string, int> words;  // cardinals and ordinals
  std::unordered_set<std::string> ordinal_words;
  std::size_t max_words = 1;
  std::unordered_map<std::string, int> multipliers;
  std::unordered_set<std::string> connectors;
  std::vector<int> tens_taking_teens;
  std::unordered_map<std::string, int> repeaters;
  std::vector<std::string> ordinal_suffixes;  // longest first
};

struct SpellingTables {
  std::vector<std::vector<std::string>> connectors;  // "as in" -> {"as", "in"}
  std::unordered_map<std::string, std::string> alphabet;  // folded word -> uppercase letter
};

/// Everything locale-specific: postcode shape, word tables, lexica.
/// Immutable after load; share freely between threads.
struct LocaleResources {
  Locale locale = Locale::kEnGB;
  PostcodePattern postcode_pattern;
  std::vector<std::string> postcode_formats;
  int display_split = 0;
  std::string display_separator;

  NumberTables numbers;
  SpellingTables spelling;
  std::unordered_map<std::string, int> months;
  std::unordered_set<std::string> date_fillers;
  int two_digit_year_pivot = 25;

  // First-listed spoken form of each digit and month, for simulation.
  std::array<std::string, 10> digit_words;
  std::array<std::string, 12> month_words;

  std::vector<std::string> first_names;  // canonical, file order, unique
  std::vector<std::string> last_names;
  NameLexicon lexicon;

  /// Loads `<root>/locales/<tag>/locale.json` and the wordlists it names.
  static LocaleResources load(const std::filesystem::path& root, Locale locale);
  static LocaleResources load_dir(const std::filesystem::path& locale_dir);

  /// Adds names from an extra lexicon file (one name per line).
  void add_lexicon_file(const std::filesystem::path& file, NameRole role);

  /// "AB12CD" -> "AB1 2CD", "12345" -> "12-345" for display/simulation.
  std::string display_postcode(std::string_view canonical) const;
};

/// $EVI_RESOURCE_DIR if set, else the directory compiled in at build time.
std::filesystem::path default_resource_root();

/// Key used for every closed-class table: diacritics folded, casefolded,
/// hyphens treated as spaces ("Dix-Sept" -> "dix sept").
std::string lookup_key(std::string_view word);

/// Reads a UTF-8 wordlist: one entry per line, blank lines and '#' comments skipped.
std::vector<std::string> read_wordlist(const std::filesystem::path& file);

}  // namespace evi
