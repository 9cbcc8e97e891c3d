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

#include "evi/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "evi/text.hpp"

namespace evi {
namespace {

void require_scores(std::span<const double> s) {
  if (s.empty()) throw ContractError("fuzzy operator applied to an empty score list");
}

double mean(std::span<const double> s) { return std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size()); }

// (mean x_i^p)^(1/p), scaled by max x_i so large p does not underflow.
double power_mean(std::span<const double> x, double p) {
  const double m = *std::max_element(x.begin(), x.end());
  if (m <= 0) return 0;
  double acc = 0;
  for (double v : x) acc += std::pow(v / m, p);
  return m * std::pow(acc / static_cast<double>(x.size()), 1.0 / p);
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

void FuzzyConfig::validate() const {
  if (family == OperatorFamily::kPnorm && !(p >= 1)) throw ConfigError("p-norm requires p >= 1");
  if (family == OperatorFamily::kInfinityOne && !(alpha >= 0 && alpha <= 1)) {
    throw ConfigError("infinity-one requires alpha in [0, 1]");
  }
}

std::string FuzzyConfig::describe() const {
  switch (family) {
    case OperatorFamily::kStandard: return "standard";
    case OperatorFamily::kPnorm: return "pnorm(p=" + std::to_string(p) + ")";
    case OperatorFamily::kInfinityOne: {
      char buf[48];
      std::snprintf(buf, sizeof buf, "infinity-one(alpha=%g)", alpha);
      return buf;
    }
  }
  return "?";
}

double fuzzy_and(const FuzzyConfig& cfg, std::span<const double> s) {
  require_scores(s);
  const double lo = *std::min_element(s.begin(), s.end());
  switch (cfg.family) {
    case OperatorFamily::kStandard:
      return lo;
    case OperatorFamily::kPnorm: {
      std::vector<double> comp(s.size());
      std::transform(s.begin(), s.end(), comp.begin(), [](double v) { return std::abs(1 - v); });
      return clamp01(1 - power_mean(comp, cfg.p));
    }
    case OperatorFamily::kInfinityOne:
      return cfg.alpha * lo + (1 - cfg.alpha) * mean(s);
  }
  return lo;
}

double fuzzy_or(const FuzzyConfig& cfg, std::span<const double> s) {
  require_scores(s);
  const double hi = *std::max_element(s.begin(), s.end());
  switch (cfg.family) {
    case OperatorFamily::kStandard:
      return hi;
    case OperatorFamily::kPnorm: {
      std::vector<double> mag(s.size());
      std::transform(s.begin(), s.end(), mag.begin(), [](double v) { return std::abs(v); });
      return clamp01(power_mean(mag, cfg.p));
    }
    case OperatorFamily::kInfinityOne:
      return cfg.alpha * hi + (1 - cfg.alpha) * mean(s);
  }
  return hi;
}

double fuzzy_not(double x) { return 1 - x; }

std::size_t edit_distance(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  std::iota(prev.begin(), prev.end(), 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double normalized_levenshtein(std::u32string_view a, std::u32string_view b) {
  const std::size_t n = std::max(a.size(), b.size());
  if (n == 0) return 1.0;
  return 1.0 - static_cast<double>(edit_distance(a, b)) / static_cast<double>(n);
}

double normalized_levenshtein(std::string_view a, std::string_view b) {
  return normalized_levenshtein(text::to_u32(a), text::to_u32(b));
}

void ProfileScoreInput::merge_max(const ProfileScoreInput& o) {
  auto merge = [](ItemScore& mine, const ItemScore& theirs) {
    if (theirs && (!mine || *theirs > *mine)) mine = theirs;
  };
  merge(postcode, o.postcode);
  merge(dob, o.dob);
  merge(name_full, o.name_full);
  merge(name_first, o.name_first);
  merge(name_last, o.name_last);
}

double profile_score(const ProfileScoreInput& in, UndefinedPolicy policy, const FuzzyConfig& cfg) {
  const double fill = policy == UndefinedPolicy::kAsOne ? 1.0 : 0.0;
  auto v = [fill](const ItemScore& s) { return s.value_or(fill); };
  const double first_last[] = {v(in.name_first), v(in.name_last)};
  const double name[] = {v(in.name_full), fuzzy_and(cfg, first_last)};
  const double profile[] = {v(in.postcode), v(in.dob), fuzzy_or(cfg, name)};
  return fuzzy_and(cfg, profile);
}

ScorerModel parse_scorer_model(std::string_view s) {
  if (s == "random") return ScorerModel::kRandom;
  if (s == "exact") return ScorerModel::kExact;
  if (s == "fuzzy") return ScorerModel::kFuzzy;
  throw ConfigError("unknown scorer model '" + std::string(s) + "' (expected random, exact or fuzzy)");
}

std::string_view to_string(ScorerModel m) {
  switch (m) {
    case ScorerModel::kRandom: return "random";
    case ScorerModel::kExact: return "exact";
    case ScorerModel::kFuzzy: return "fuzzy";
  }
  return "?";
}

ItemScore score_item(ScorerModel model, std::string_view claimed, const std::vector<std::string>& values, Rng& rng) {
  switch (model) {
    case ScorerModel::kRandom:
      return rng.uniform();
    case ScorerModel::kExact:
      if (values.empty()) return std::nullopt;
      return std::find(values.begin(), values.end(), claimed) != values.end() ? 1.0 : 0.0;
    case ScorerModel::kFuzzy: {
      if (values.empty()) return std::nullopt;
      const std::u32string c = text::to_u32(claimed);
      double best = 0;
      for (const auto& v : values) best = std::max(best, normalized_levenshtein(c, text::to_u32(v)));
      return best;
    }
  }
  return std::nullopt;
}

ProfileScoreInput score_evidence(ScorerModel model, const Profile& claimed, const NluResult& nlu, Rng& rng) {
  ProfileScoreInput out;
  switch (nlu.item_kind) {
    case ItemKind::kPostcode:
      out.postcode = score_item(model, claimed.postcode, nlu.postcodes(), rng);
      break;
    case ItemKind::kDob: {
      std::vector<std::string> iso;
      for (const auto& d : nlu.dates()) iso.push_back(d.iso());
      out.dob = score_item(model, claimed.dob.iso(), iso, rng);
      break;
    }
    case ItemKind::kName: {
      std::vector<std::string> full, first, last;
      for (const auto& n : nlu.names()) {
        if (n.full) full.push_back(*n.full);
        if (n.first) first.push_back(*n.first);
        if (n.last) last.push_back(*n.last);
      }
      out.name_full = score_item(model, claimed.name_full(), full, rng);
      out.name_first = score_item(model, claimed.name_first, first, rng);
      out.name_last = score_item(model, claimed.name_last, last, rng);
      break;
    }
  }
  return out;
}

Rng random_scorer_rng(std::uint64_t seed, std::string_view dialogue_id, ItemKind item) {
  return Rng::keyed(seed, {"random-scorer", dialogue_id, to_string(item)});
}

}  // namespace evi
