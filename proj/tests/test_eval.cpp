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
#include <functional>

#include "evi/eval.hpp"
#include "evi/rng.hpp"
#include "test_util.hpp"

namespace evi {
namespace {

std::vector<Outcome> outcomes(int total, int extracted, int correct) {
  std::vector<Outcome> out(static_cast<std::size_t>(total));
  for (int i = 0; i < extracted; ++i) out[static_cast<std::size_t>(i)] = {true, i < correct};
  return out;
}

// Rates computed by direct counting at one threshold.
std::pair<double, double> rates_at(const std::vector<double>& g, const std::vector<double>& im, double t) {
  const double far = std::count_if(im.begin(), im.end(), [&](double s) { return s >= t; }) / double(im.size());
  const double frr = std::count_if(g.begin(), g.end(), [&](double s) { return s < t; }) / double(g.size());
  return {far, frr};
}

std::vector<double> random_scores(Rng& rng, std::size_t n, int levels) {
  std::vector<double> s(n);
  for (auto& x : s) x = levels ? double(rng.below(levels)) / (levels - 1) : rng.uniform();
  return s;
}

TEST(Prf, CountingOracle) {
  const Prf p = prf(outcomes(10, 8, 6));
  EXPECT_DOUBLE_EQ(p.precision, 0.75);
  EXPECT_DOUBLE_EQ(p.recall, 0.6);
  EXPECT_NEAR(p.f1, 2 * 0.75 * 0.6 / 1.35, 1e-12);
  EXPECT_EQ(p.total, 10u);
  EXPECT_EQ(p.extracted, 8u);
  EXPECT_EQ(p.correct, 6u);
}

TEST(Prf, Boundaries) {
  const Prf all = prf(outcomes(5, 5, 5));
  EXPECT_EQ(all.precision, 1.0);
  EXPECT_EQ(all.recall, 1.0);
  EXPECT_EQ(all.f1, 1.0);
  const Prf none = prf(outcomes(5, 0, 0));
  EXPECT_TRUE(none.precision_undefined);
  EXPECT_EQ(none.f1, 0.0);
  EXPECT_THROW(prf({}), ContractError);
}

TEST(Prf, Invariants) {
  for (int total = 1; total <= 12; ++total) {
    for (int ex = 0; ex <= total; ++ex) {
      for (int c = 0; c <= ex; ++c) {
        const Prf p = prf(outcomes(total, ex, c));
        ASSERT_EQ(p.f1 == 0, p.precision == 0 || p.recall == 0);
        if (p.f1 > 0) {
          ASSERT_NEAR(p.f1, 2 * p.precision * p.recall / (p.precision + p.recall), 1e-12);
        }
        if (ex == total) {
          ASSERT_DOUBLE_EQ(p.precision, p.recall);
          ASSERT_DOUBLE_EQ(p.recall, p.f1);
        }
      }
    }
  }
}

TEST(Det, HandComputedThreeVersusThree) {
  const DetCurve c = det_sweep({0.8, 0.6, 0.4}, {0.5, 0.3, 0.1});
  EXPECT_EQ(eer(c), 1.0 / 3.0);
  // Exhaustive sweep oracle over every observed score.
  for (const auto& pt : c.points) {
    const auto [far, frr] = rates_at({0.8, 0.6, 0.4}, {0.5, 0.3, 0.1}, pt.theta);
    EXPECT_EQ(pt.far, far);
    EXPECT_EQ(pt.frr, frr);
  }
}

TEST(Det, Boundaries) {
  EXPECT_EQ(eer(det_sweep({0.9, 0.8}, {0.1, 0.2})), 0.0);
  EXPECT_EQ(eer(det_sweep({0.5, 0.5}, {0.5, 0.5})), 0.5);
  EXPECT_THROW(det_sweep({}, {0.1}), ContractError);
  EXPECT_THROW(det_sweep({0.1}, {}), ContractError);
}

TEST(Det, ExactModelCurveIsDegenerateAndInterpolated) {
  const DetCurve c = det_sweep({1, 1, 1, 0}, {0, 0, 0, 1});
  EXPECT_TRUE(c.degenerate);
  EXPECT_NEAR(eer(c), 0.25, 1e-12);
  EXPECT_FALSE(det_sweep({0.9, 0.5, 0.2}, {0.1}).degenerate);
}

TEST(Det, RandomCurveInvariants) {
  Rng rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    const int levels = trial % 3 == 0 ? 2 : trial % 3 == 1 ? 11 : 0;
    const auto g = random_scores(rng, 1 + rng.below(40), levels);
    const auto im = random_scores(rng, 1 + rng.below(40), levels);
    const DetCurve c = det_sweep(g, im);
    ASSERT_EQ(c.points.front().far, 1.0);
    ASSERT_EQ(c.points.front().frr, 0.0);
    ASSERT_EQ(c.points.back().far, 0.0);
    ASSERT_EQ(c.points.back().frr, 1.0);
    double min_max = 1, max_min = 0;
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      const auto& p = c.points[i];
      const auto [far, frr] = rates_at(g, im, p.theta);
      ASSERT_EQ(p.far, far);
      ASSERT_EQ(p.frr, frr);
      if (i) {
        ASSERT_GT(p.theta, c.points[i - 1].theta);
        ASSERT_LE(p.far, c.points[i - 1].far);
        ASSERT_GE(p.frr, c.points[i - 1].frr);
      }
      min_max = std::min(min_max, std::max(far, frr));
      max_min = std::max(max_min, std::min(far, frr));
    }
    const double e = eer(c);
    ASSERT_GE(e, max_min - 1e-12);
    ASSERT_LE(e, min_max + 1e-12);
  }
}

TEST(Det, EerInvariantUnderMonotoneTransforms) {
  Rng rng(5);
  const std::vector<std::function<double(double)>> transforms = {
      [](double x) { return x * x; }, [](double x) { return std::sqrt(x); },
      [](double x) { return 0.1 + 0.5 * x; }, [](double x) { return std::pow(x, 7); }};
  for (int trial = 0; trial < 300; ++trial) {
    const auto g = random_scores(rng, 2 + rng.below(30), trial % 2 ? 21 : 0);
    const auto im = random_scores(rng, 2 + rng.below(30), trial % 2 ? 21 : 0);
    const double base = eer(det_sweep(g, im));
    for (const auto& f : transforms) {
      std::vector<double> g2, im2;
      for (double x : g) g2.push_back(f(x));
      for (double x : im) im2.push_back(f(x));
      ASSERT_NEAR(eer(det_sweep(g2, im2)), base, 1e-12);
    }
  }
}

TEST(FrrAtFar, ResolutionAndSeparation) {
  const DetCurve toy = det_sweep({0.9, 0.7, 0.2}, {0.5, 0.3, 0.1});
  const FrrAtFar r = frr_at_far(toy, 1e-4);
  EXPECT_TRUE(r.resolution_limited);
  EXPECT_EQ(r.far, 0.0);
  EXPECT_NEAR(r.frr, 1.0 / 3.0, 1e-12);
  EXPECT_GT(r.theta, 0.5);

  const FrrAtFar sep = frr_at_far(det_sweep({0.9, 0.8}, {0.1, 0.2}), 1e-4);
  EXPECT_EQ(sep.frr, 0.0);
  EXPECT_EQ(sep.far, 0.0);

  std::vector<double> many(20000, 0.1);
  EXPECT_FALSE(frr_at_far(det_sweep({0.9}, many), 1e-4).resolution_limited);
}

TEST(FrrAtFar, PicksLowestQualifyingThreshold) {
  Rng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = random_scores(rng, 30, 0);
    const auto im = random_scores(rng, 30, 0);
    const double target = 0.1 * rng.uniform();
    const DetCurve c = det_sweep(g, im);
    const FrrAtFar r = frr_at_far(c, target);
    ASSERT_LE(r.far, target);
    for (const auto& p : c.points) {
      if (p.far <= target) {
        ASSERT_GE(p.frr, r.frr);
      }
    }
  }
}

TEST(IrAtR, Definition) {
  EXPECT_EQ(ir_at_r({1, 1, 1}, 1), 1.0);
  const std::vector<std::size_t> ranks{2, 0, 1, 5};
  EXPECT_EQ(ir_at_r(ranks, 1), 0.25);
  EXPECT_EQ(ir_at_r(ranks, 2), 0.5);
  EXPECT_EQ(ir_at_r(ranks, 10), 0.75);
  double prev = 0;
  for (std::size_t r = 1; r < 12; ++r) {
    ASSERT_GE(ir_at_r(ranks, r), prev);
    prev = ir_at_r(ranks, r);
  }
}

TEST(SampleImpostors, ShapeDeterminismAndStability) {
  const KnowledgeBase kb = testing::toy_kb();
  std::vector<DialogueTranscript> ds;
  for (int i = 0; i < 30; ++i) {
    DialogueTranscript d;
    d.dialogue_id = "d" + std::to_string(i);
    d.true_profile_id = kb.profiles()[static_cast<std::size_t>(i) % kb.size()].profile_id;
    ds.push_back(d);
  }
  const auto a = sample_impostors(ds, kb, 7);
  const auto b = sample_impostors(ds, kb, 7);
  ASSERT_EQ(a.size(), 60u);
  EXPECT_EQ(std::count_if(a.begin(), a.end(), [](const Trial& t) { return t.genuine; }), 30);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].claimed, b[i].claimed);
    EXPECT_EQ(a[i].genuine, a[i].claimed->profile_id == ds[a[i].dialogue].true_profile_id);
  }
  // Reordering dialogues permutes the pairs without changing them.
  auto rev = ds;
  std::reverse(rev.begin(), rev.end());
  const auto c = sample_impostors(rev, kb, 7);
  for (const auto& t : c) {
    const auto it = std::find_if(a.begin(), a.end(), [&](const Trial& u) {
      return ds[u.dialogue].dialogue_id == rev[t.dialogue].dialogue_id && u.genuine == t.genuine;
    });
    ASSERT_NE(it, a.end());
    EXPECT_EQ(it->claimed, t.claimed);
  }
  KnowledgeBase one(Locale::kEnGB);
  one.add(kb.profiles()[0]);
  EXPECT_THROW(sample_impostors(ds, one, 7), ContractError);
}

TEST(Mean, Basic) {
  EXPECT_EQ(mean({1, 2, 3}), 2.0);
  EXPECT_EQ(mean({}), 0.0);
}

}  // namespace
}  // namespace evi
