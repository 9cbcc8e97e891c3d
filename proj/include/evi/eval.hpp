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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "evi/kb.hpp"
#include "evi/transcript.hpp"

namespace evi {

struct Prf {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  std::size_t total = 0;
  std::size_t extracted = 0;
  std::size_t correct = 0;
  bool precision_undefined = false;  // nothing extracted; precision reported as 0
};

/// One trial: whether something was extracted and whether it was right.
struct Outcome {
  bool extracted = false;
  bool correct = false;
};

/// Throws ContractError on an empty list or a correct-but-not-extracted outcome.
Prf prf(const std::vector<Outcome>& outcomes);

struct Trial {
  std::size_t dialogue = 0;  // index into the input list
  const Profile* claimed = nullptr;
  bool genuine = false;
};

/// Two trials per dialogue, genuine first. The impostor is drawn uniformly
/// from the other KB profiles with a stream keyed by (seed, dialogue_id), so
/// a dialogue's pairing does not depend on list order.
std::vector<Trial> sample_impostors(const std::vector<DialogueTranscript>& dialogues, const KnowledgeBase& kb,
                                    std::uint64_t seed);

struct DetPoint {
  double theta = 0;
  double far = 0;
  double frr = 0;
};

struct DetCurve {
  std::vector<DetPoint> points;  // theta ascending
  std::size_t n_genuine = 0;
  std::size_t n_impostor = 0;
  /// At most two distinct scores (e.g. the EXACT model): the curve is a
  /// couple of points joined by straight segments.
  bool degenerate = false;
};

/// Thresholds are every distinct observed score plus 0 and a value above 1.
/// FAR(t) = share of impostor scores >= t, FRR(t) = share of genuine < t.
DetCurve det_sweep(const std::vector<double>& genuine, const std::vector<double>& impostor);

/// Rate where FAR and FRR cross, interpolating linearly between the
/// neighbouring sweep points.
double eer(const DetCurve& curve);

struct FrrAtFar {
  double frr = 0;
  double far = 0;      // FAR actually achieved
  double theta = 0;
  bool resolution_limited = false;  // fewer impostors than 1/target
};

/// FRR at the lowest threshold whose FAR does not exceed the target.
FrrAtFar frr_at_far(const DetCurve& curve, double far_target);

/// ranks[i] is the 1-based rank of the true profile in run i, 0 if absent.
double ir_at_r(const std::vector<std::size_t>& ranks, std::size_t r);

double mean(const std::vector<double>& xs);

}  // namespace evi
