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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evi/kb.hpp"
#include "evi/nlu.hpp"
#include "evi/rng.hpp"

namespace evi {

/// nullopt means undefined (no evidence yet).
using ItemScore = std::optional<double>;

enum class OperatorFamily { kStandard, kPnorm, kInfinityOne };

struct FuzzyConfig {
  OperatorFamily family = OperatorFamily::kStandard;
  double p = 2.0;      // kPnorm
  double alpha = 0.5;  // kInfinityOne

  static FuzzyConfig standard() { return {}; }
  static FuzzyConfig pnorm(double p) { return {OperatorFamily::kPnorm, p, 0.5}; }
  static FuzzyConfig infinity_one(double alpha) { return {OperatorFamily::kInfinityOne, 2.0, alpha}; }

  /// Throws ConfigError on p < 1 or alpha outside [0, 1].
  void validate() const;
  std::string describe() const;
};

/// Scores must be non-empty (ContractError otherwise) and lie in [0, 1].
double fuzzy_and(const FuzzyConfig& cfg, std::span<const double> scores);
double fuzzy_or(const FuzzyConfig& cfg, std::span<const double> scores);
/// Part of the operator set; no scoring expression uses it.
double fuzzy_not(double x);

std::size_t edit_distance(std::u32string_view a, std::u32string_view b);
double normalized_levenshtein(std::u32string_view a, std::u32string_view b);
/// Compares code points of the UTF-8 inputs.
double normalized_levenshtein(std::string_view a, std::string_view b);

enum class UndefinedPolicy { kAsZero, kAsOne };

struct ProfileScoreInput {
  ItemScore postcode;
  ItemScore dob;
  ItemScore name_full;
  ItemScore name_first;
  ItemScore name_last;

  /// Symbol-wise maximum; an undefined side is ignored.
  void merge_max(const ProfileScoreInput& other);
  bool all_undefined() const { return !postcode && !dob && !name_full && !name_first && !name_last; }

  friend bool operator==(const ProfileScoreInput&, const ProfileScoreInput&) = default;
};

/// AND(postcode, dob, OR(full, AND(first, last))) with undefined symbols
/// replaced per policy.
double profile_score(const ProfileScoreInput& in, UndefinedPolicy policy, const FuzzyConfig& cfg);

enum class ScorerModel { kRandom, kExact, kFuzzy };
ScorerModel parse_scorer_model(std::string_view s);
std::string_view to_string(ScorerModel m);

/// Single-symbol scorer over canonical strings. RANDOM ignores the values
/// and draws one uniform number from `rng`.
ItemScore score_item(ScorerModel model, std::string_view claimed, const std::vector<std::string>& values, Rng& rng);

/// Scores one turn's NLU result against the claimed profile. Only the
/// symbols fed by nlu.item_kind are set.
ProfileScoreInput score_evidence(ScorerModel model, const Profile& claimed, const NluResult& nlu, Rng& rng);

/// Per-(seed, dialogue, item) stream for the RANDOM scorer.
Rng random_scorer_rng(std::uint64_t seed, std::string_view dialogue_id, ItemKind item);

}  // namespace evi
