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

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "evi/common.hpp"
#include "evi/locale.hpp"

namespace evi {

inline constexpr std::size_t kMaxNbest = 20;
inline constexpr int kTurnsPerItem = 3;
inline constexpr int kMaxTurns = 9;

struct Turn {
  int turn_index = 1;  // 1..9
  std::vector<std::string> nbest;
  std::string prompt_variant;

  /// Turns 1-3 ask for the postcode, 4-6 the name, 7-9 the date of birth.
  ItemKind item_kind() const { return item_for_turn(turn_index); }
  static ItemKind item_for_turn(int turn_index);
};

enum class NluMode { kCautious, kSeeking };
NluMode parse_nlu_mode(std::string_view s);
std::string_view to_string(NluMode mode);

struct ParsedName {
  std::optional<std::string> first;
  std::optional<std::string> last;
  std::optional<std::string> full;

  friend bool operator==(const ParsedName&, const ParsedName&) = default;
};

/// Builds a name from optional parts; full is set when both parts are.
ParsedName make_name(std::optional<std::string> first, std::optional<std::string> last);

using NluValue = std::variant<std::string, ParsedName, Date>;

struct NluResult {
  ItemKind item_kind = ItemKind::kPostcode;
  std::vector<NluValue> values;
  std::vector<std::size_t> source_rank;  // n-best rank each value came from

  bool empty() const { return values.empty(); }
  std::vector<std::string> postcodes() const;
  std::vector<ParsedName> names() const;
  std::vector<Date> dates() const;
};

/// Spoken-form normalization: number words to digits, spelling phrases and
/// alphabet words to letters, uppercase, single spaces. Idempotent.
std::string preprocess(std::string_view hypothesis, const LocaleResources& res);

/// Hypothesis-level extractors. Input must already be preprocessed.
std::vector<std::string> find_postcodes(std::string_view preprocessed, const LocaleResources& res, NluMode mode);
std::vector<ParsedName> find_names(std::string_view preprocessed, const LocaleResources& res, NluMode mode);
std::vector<Date> find_dates(std::string_view preprocessed, const LocaleResources& res, NluMode mode);

/// Turn-level extraction over the whole n-best list. Each throws
/// ContractError when the turn asks for a different item.
NluResult extract_postcode(const Turn& turn, const LocaleResources& res, NluMode mode);
NluResult extract_name(const Turn& turn, const LocaleResources& res, NluMode mode);
NluResult extract_date(const Turn& turn, const LocaleResources& res, NluMode mode);
/// Dispatches on turn.item_kind().
NluResult extract(const Turn& turn, const LocaleResources& res, NluMode mode);

}  // namespace evi
