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

#include "evi/eval.hpp"

#include <algorithm>
#include <numeric>

#include "evi/rng.hpp"

namespace evi {

Prf prf(const std::vector<Outcome>& outcomes) {
  if (outcomes.empty()) throw ContractError("prf of an empty outcome list");
  Prf r;
  r.total = outcomes.size();
  for (const auto& o : outcomes) {
    if (o.correct && !o.extracted) throw ContractError("outcome marked correct without an extraction");
    r.extracted += o.extracted;
    r.correct += o.correct;
  }
  r.precision_undefined = r.extracted == 0;
  r.precision = r.extracted ? static_cast<double>(r.correct) / static_cast<double>(r.extracted) : 0.0;
  r.recall = static_cast<double>(r.correct) / static_cast<double>(r.total);
  r.f1 = r.precision + r.recall > 0 ? 2 * r.precision * r.recall / (r.precision + r.recall) : 0.0;
  return r;
}

std::vector<Trial> sample_impostors(const std::vector<DialogueTranscript>& dialogues, const KnowledgeBase& kb,
                                    std::uint64_t seed) {
  if (kb.size() < 2) throw ContractError("impostor sampling needs at least two profiles");
  std::vector<Trial> out;
  out.reserve(2 * dialogues.size());
  for (std::size_t i = 0; i < dialogues.size(); ++i) {
    const Profile& truth = kb.at(dialogues[i].true_profile_id);
    const auto truth_idx = static_cast<std::size_t>(&truth - kb.profiles().data());
    Rng rng = Rng::keyed(seed, {"impostor", dialogues[i].dialogue_id});
    std::size_t pick = rng.below(kb.size() - 1);
    if (pick >= truth_idx) ++pick;
    out.push_back({i, &truth, true});
    out.push_back({i, &kb.profiles()[pick], false});
  }
  return out;
}

DetCurve det_sweep(const std::vector<double>& genuine, const std::vector<double>& impostor) {
  if (genuine.empty() || impostor.empty()) throw ContractError("DET sweep needs genuine and impostor scores");
  std::vector<double> g = genuine, im = impostor;
  std::sort(g.begin(), g.end());
  std::sort(im.begin(), im.end());

  std::vector<double> thetas;
  thetas.reserve(g.size() + im.size() + 2);
  thetas.insert(thetas.end(), g.begin(), g.end());
  thetas.insert(thetas.end(), im.begin(), im.end());
  std::sort(thetas.begin(), thetas.end());
  thetas.erase(std::unique(thetas.begin(), thetas.end()), thetas.end());

  DetCurve c;
  c.n_genuine = g.size();
  c.n_impostor = im.size();
  c.degenerate = thetas.size() <= 2;
  const double top = std::max(1.0, thetas.back()) + 1e-9;
  if (thetas.front() > 0) thetas.insert(thetas.begin(), 0.0);
  thetas.push_back(top);

  const auto ng = static_cast<double>(g.size());
  const auto ni = static_cast<double>(im.size());
  for (double t : thetas) {
    const auto rejected = std::lower_bound(g.begin(), g.end(), t) - g.begin();
    const auto accepted = im.end() - std::lower_bound(im.begin(), im.end(), t);
    c.points.push_back({t, static_cast<double>(accepted) / ni, static_cast<double>(rejected) / ng});
  }
  return c;
}

double eer(const DetCurve& curve) {
  const auto& p = curve.points;
  if (p.empty()) throw ContractError("EER of an empty curve");
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i].frr < p[i].far) continue;
    if (i == 0 || p[i].frr == p[i].far) return p[i].frr;
    // FRR - FAR changes sign between i-1 and i; intersect the segment with
    // the diagonal FAR = FRR.
    const DetPoint& a = p[i - 1];
    const DetPoint& b = p[i];
    const double da = a.frr - a.far;
    const double db = b.frr - b.far;
    const double t = da / (da - db);
    return a.far + t * (b.far - a.far);
  }
  return p.back().frr;
}

FrrAtFar frr_at_far(const DetCurve& curve, double far_target) {
  if (!(far_target > 0 && far_target < 1)) throw ContractError("FAR target must lie in (0, 1)");
  FrrAtFar r;
  r.resolution_limited = static_cast<double>(curve.n_impostor) < 1.0 / far_target;
  for (const auto& pt : curve.points) {
    if (pt.far <= far_target) {
      r.frr = pt.frr;
      r.far = pt.far;
      r.theta = pt.theta;
      return r;
    }
  }
  const auto& last = curve.points.back();
  r.frr = last.frr;
  r.far = last.far;
  r.theta = last.theta;
  return r;
}

double ir_at_r(const std::vector<std::size_t>& ranks, std::size_t r) {
  if (r == 0) throw ContractError("IR@r needs r >= 1");
  if (ranks.empty()) return 0;
  const auto hits = std::count_if(ranks.begin(), ranks.end(), [r](std::size_t k) { return k >= 1 && k <= r; });
  return static_cast<double>(hits) / static_cast<double>(ranks.size());
}

double mean(const std::vector<double>& xs) {
  if (xs.empty()) return 0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

}  // namespace evi
