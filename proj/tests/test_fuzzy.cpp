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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "evi/fuzzy.hpp"
#include "evi/rng.hpp"
#include "evi/text.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace evi {
namespace {

using oracle::all_strings;

std::size_t dp_oracle(const std::string& a, const std::string& b) { return oracle::edit_distance(a, b); }

std::vector<double> random_scores(Rng& rng, std::size_t n) {
  std::vector<double> s(n);
  for (auto& x : s) x = rng.uniform();
  return s;
}

double mean_of(const std::vector<double>& s) { return std::accumulate(s.begin(), s.end(), 0.0) / s.size(); }

TEST(EditDistance, SpecExamples) {
  EXPECT_DOUBLE_EQ(normalized_levenshtein("AB12CD", "AB12CD"), 1.0);
  EXPECT_NEAR(normalized_levenshtein("kitten", "sitting"), 1.0 - 3.0 / 7.0, 1e-12);
  EXPECT_DOUBLE_EQ(normalized_levenshtein("a", ""), 0.0);
  EXPECT_DOUBLE_EQ(normalized_levenshtein("", ""), 1.0);
}

TEST(EditDistance, ExhaustiveAgainstDpOracle) {
  const auto strs = all_strings(6, "abc");
  ASSERT_EQ(strs.size(), 1093u);
  for (const auto& a : strs) {
    const auto ua = text::to_u32(a);
    for (const auto& b : strs) {
      const auto ub = text::to_u32(b);
      const std::size_t d = edit_distance(ua, ub);
      ASSERT_EQ(d, dp_oracle(a, b)) << a << " / " << b;
      const double n = normalized_levenshtein(ua, ub);
      ASSERT_GE(n, 0.0);
      ASSERT_LE(n, 1.0);
      ASSERT_EQ(n, normalized_levenshtein(ub, ua));
      ASSERT_EQ(n == 1.0, a == b);
    }
  }
}

TEST(EditDistance, TriangleInequality) {
  const auto strs = all_strings(5, "abcd");
  Rng rng(17);
  for (int i = 0; i < 20000; ++i) {
    const auto& a = strs[rng.below(strs.size())];
    const auto& b = strs[rng.below(strs.size())];
    const auto& c = strs[rng.below(strs.size())];
    ASSERT_LE(dp_oracle(a, c), dp_oracle(a, b) + dp_oracle(b, c));
    ASSERT_LE(edit_distance(text::to_u32(a), text::to_u32(c)),
              edit_distance(text::to_u32(a), text::to_u32(b)) + edit_distance(text::to_u32(b), text::to_u32(c)));
  }
}

TEST(EditDistance, CodePointsNotBytes) {
  EXPECT_EQ(edit_distance(text::to_u32("łódź"), text::to_u32("lodz")), 3u);
  EXPECT_NEAR(normalized_levenshtein("zoë", "zoe"), 2.0 / 3.0, 1e-12);
}

TEST(Operators, SpecExamples) {
  const std::vector<double> half_one{0.5, 1.0};
  EXPECT_DOUBLE_EQ(fuzzy_and(FuzzyConfig::standard(), half_one), 0.5);
  const std::vector<double> or_in{0.2, 0.8};
  EXPECT_NEAR(fuzzy_or(FuzzyConfig::infinity_one(0.5), or_in), 0.65, 1e-12);
  EXPECT_THROW(fuzzy_and(FuzzyConfig::standard(), {}), ContractError);
  EXPECT_THROW(fuzzy_or(FuzzyConfig::pnorm(2), {}), ContractError);
}

TEST(Operators, Algebra) {
  Rng rng(99);
  for (int i = 0; i < 10000; ++i) {
    const auto s = random_scores(rng, 1 + rng.below(5));
    const double mn = *std::min_element(s.begin(), s.end());
    const double mx = *std::max_element(s.begin(), s.end());
    const double mean = mean_of(s);
    ASSERT_EQ(fuzzy_and(FuzzyConfig::standard(), s), mn);
    ASSERT_EQ(fuzzy_or(FuzzyConfig::standard(), s), mx);
    const double a = rng.uniform();
    const auto inf = FuzzyConfig::infinity_one(a);
    ASSERT_NEAR(fuzzy_and(inf, s), a * mn + (1 - a) * mean, 1e-12);
    ASSERT_NEAR(fuzzy_or(inf, s), a * mx + (1 - a) * mean, 1e-12);
    ASSERT_EQ(fuzzy_and(FuzzyConfig::infinity_one(1.0), s), mn);
    ASSERT_NEAR(fuzzy_and(FuzzyConfig::pnorm(1), s), mean, 1e-12);
    ASSERT_NEAR(fuzzy_or(FuzzyConfig::pnorm(1), s), mean, 1e-12);
    // p-norm is a direct evaluation of the power-mean definition.
    const double p = 1 + 9 * rng.uniform();
    double sa = 0, so = 0;
    for (double x : s) {
      sa += std::pow(1 - x, p);
      so += std::pow(x, p);
    }
    ASSERT_NEAR(fuzzy_and(FuzzyConfig::pnorm(p), s), 1 - std::pow(sa / s.size(), 1 / p), 1e-12);
    ASSERT_NEAR(fuzzy_or(FuzzyConfig::pnorm(p), s), std::pow(so / s.size(), 1 / p), 1e-12);
  }
}

TEST(Operators, CommutativeMonotoneBounded) {
  Rng rng(4);
  const FuzzyConfig cfgs[] = {FuzzyConfig::standard(), FuzzyConfig::pnorm(3), FuzzyConfig::pnorm(200),
                              FuzzyConfig::infinity_one(0.3)};
  for (int i = 0; i < 3000; ++i) {
    auto s = random_scores(rng, 3);
    for (const auto& cfg : cfgs) {
      const double a = fuzzy_and(cfg, s), o = fuzzy_or(cfg, s);
      ASSERT_GE(a, 0.0);
      ASSERT_LE(a, 1.0);
      ASSERT_GE(o, 0.0);
      ASSERT_LE(o, 1.0);
      auto perm = s;
      std::reverse(perm.begin(), perm.end());
      ASSERT_NEAR(fuzzy_and(cfg, perm), a, 1e-12);
      ASSERT_NEAR(fuzzy_or(cfg, perm), o, 1e-12);
      auto up = s;
      up[rng.below(3)] = std::min(1.0, up[0] + rng.uniform());
      std::sort(up.begin(), up.end());
      auto base = s;
      std::sort(base.begin(), base.end());
      bool dominates = true;
      for (int k = 0; k < 3; ++k) dominates = dominates && up[k] >= base[k];
      if (dominates) {
        ASSERT_GE(fuzzy_and(cfg, up) + 1e-12, fuzzy_and(cfg, base));
        ASSERT_GE(fuzzy_or(cfg, up) + 1e-12, fuzzy_or(cfg, base));
      }
    }
  }
}

TEST(Operators, PnormApproachesMinMaxWithinAnalyticBound) {
  // On n arguments the p-norm AND differs from min by at most 1 - n^(-1/p).
  Rng rng(8);
  const double p = 200;
  const double bound = 1 - std::pow(3.0, -1 / p);
  double worst = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto s = random_scores(rng, 3);
    const double mn = *std::min_element(s.begin(), s.end());
    const double mx = *std::max_element(s.begin(), s.end());
    const double ea = std::abs(fuzzy_and(FuzzyConfig::pnorm(p), s) - mn);
    const double eo = std::abs(fuzzy_or(FuzzyConfig::pnorm(p), s) - mx);
    ASSERT_LE(ea, bound + 1e-12);
    ASSERT_LE(eo, bound + 1e-12);
    worst = std::max({worst, ea, eo});
  }
  EXPECT_GT(worst, 1e-3);  // the bound is approached, so 1e-3 agreement is not attainable
  // No underflow at large p for tiny scores.
  const std::vector<double> tiny{1e-300, 1e-300, 1e-300};
  EXPECT_NEAR(fuzzy_or(FuzzyConfig::pnorm(200), tiny), 1e-300, 1e-310);
}

TEST(FuzzyConfig, Validation) {
  EXPECT_THROW(FuzzyConfig::pnorm(0.5).validate(), ConfigError);
  EXPECT_THROW(FuzzyConfig::infinity_one(1.5).validate(), ConfigError);
  EXPECT_THROW(FuzzyConfig::infinity_one(-0.1).validate(), ConfigError);
  EXPECT_NO_THROW(FuzzyConfig::infinity_one(0).validate());
}

TEST(ScoreItem, SpecExamples) {
  Rng rng(1);
  EXPECT_EQ(score_item(ScorerModel::kExact, "AB12CD", {"AB12CB", "AB12CD"}, rng), 1.0);
  EXPECT_NEAR(*score_item(ScorerModel::kFuzzy, "JOHN SMITH", {"JON SMITH"}, rng), 0.9, 1e-12);
  EXPECT_FALSE(score_item(ScorerModel::kExact, "AB12CD", {}, rng).has_value());
  EXPECT_FALSE(score_item(ScorerModel::kFuzzy, "AB12CD", {}, rng).has_value());
  const auto r = score_item(ScorerModel::kRandom, "AB12CD", {}, rng);
  ASSERT_TRUE(r.has_value());
  EXPECT_GE(*r, 0.0);
  EXPECT_LT(*r, 1.0);
}

TEST(ScoreItem, ExactIsMembershipIndicatorExhaustive) {
  const std::vector<std::string> universe{"A", "B", "C", "D"};
  Rng rng(1);
  for (unsigned mask = 1; mask < 16; ++mask) {
    std::vector<std::string> values;
    for (unsigned k = 0; k < 4; ++k) {
      if (mask & (1u << k)) values.push_back(universe[k]);
    }
    for (const auto& claimed : universe) {
      const bool member = std::find(values.begin(), values.end(), claimed) != values.end();
      const auto exact = score_item(ScorerModel::kExact, claimed, values, rng);
      ASSERT_EQ(*exact, member ? 1.0 : 0.0);
      const auto fuzzy = score_item(ScorerModel::kFuzzy, claimed, values, rng);
      if (*exact == 1.0) {
        ASSERT_EQ(*fuzzy, 1.0);
      }
    }
  }
}

TEST(ProfileScore, SpecExamples) {
  const auto std_cfg = FuzzyConfig::standard();
  ProfileScoreInput ones{1.0, 1.0, 1.0, 1.0, 1.0};
  for (const auto& cfg : {std_cfg, FuzzyConfig::pnorm(2), FuzzyConfig::infinity_one(0.5)}) {
    EXPECT_NEAR(profile_score(ones, UndefinedPolicy::kAsZero, cfg), 1.0, 1e-12);
  }
  ProfileScoreInput mixed{0.9, 0.8, 0.5, 0.95, 0.7};
  EXPECT_DOUBLE_EQ(profile_score(mixed, UndefinedPolicy::kAsZero, std_cfg), 0.7);
  ProfileScoreInput none;
  EXPECT_EQ(profile_score(none, UndefinedPolicy::kAsOne, std_cfg), 1.0);
  EXPECT_EQ(profile_score(none, UndefinedPolicy::kAsZero, std_cfg), 0.0);
}

TEST(ProfileScore, FormulaOracle) {
  // postcode AND dob AND (full OR (first AND last)), evaluated by hand for infinity-one.
  Rng rng(12);
  for (int i = 0; i < 5000; ++i) {
    const double a = rng.uniform();
    const auto cfg = FuzzyConfig::infinity_one(a);
    const auto s = random_scores(rng, 5);
    const ProfileScoreInput in{s[0], s[1], s[2], s[3], s[4]};
    auto and2 = [&](double x, double y) { return a * std::min(x, y) + (1 - a) * (x + y) / 2; };
    auto or2 = [&](double x, double y) { return a * std::max(x, y) + (1 - a) * (x + y) / 2; };
    auto and3 = [&](double x, double y, double z) {
      return a * std::min({x, y, z}) + (1 - a) * (x + y + z) / 3;
    };
    const double expect = and3(s[0], s[1], or2(s[2], and2(s[3], s[4])));
    ASSERT_NEAR(profile_score(in, UndefinedPolicy::kAsZero, cfg), expect, 1e-12);
  }
}

TEST(ProfileScore, MergeMaxKeepsMaximum) {
  ProfileScoreInput a{0.2, std::nullopt, 0.9, std::nullopt, 0.1};
  const ProfileScoreInput b{0.5, 0.3, 0.4, std::nullopt, std::nullopt};
  a.merge_max(b);
  EXPECT_EQ(a, (ProfileScoreInput{0.5, 0.3, 0.9, std::nullopt, 0.1}));
}

TEST(ScoreEvidence, NameSymbols) {
  const Profile claimed = testing::make_profile("P1", "AB12CD", "john", "smith", {1980, 1, 2});
  NluResult nlu;
  nlu.item_kind = ItemKind::kName;
  nlu.values = {make_name(std::nullopt, "smith")};
  Rng rng(1);
  const auto s = score_evidence(ScorerModel::kExact, claimed, nlu, rng);
  EXPECT_EQ(s.name_last, 1.0);
  EXPECT_FALSE(s.name_first.has_value());
  EXPECT_FALSE(s.name_full.has_value());
  EXPECT_FALSE(s.postcode.has_value());
}

}  // namespace
}  // namespace evi
