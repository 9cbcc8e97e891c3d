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
#include <vector>

#include "evi/kb.hpp"
#include "evi/locale.hpp"
#include "evi/transcript.hpp"

namespace evi {

/// Knobs for synthetic dialogues: each turn speaks the impersonated
/// profile's value in one of several surface forms, then ASR-like noise is
/// applied per hypothesis.
struct SimulationSpec {
  std::size_t n_dialogues = 200;
  std::uint64_t seed = 11;
  double noise = 0.2;       // chance a hypothesis gets one corruption
  double miss_rate = 0.1;   // chance a turn carries no usable value
  std::size_t max_nbest = 5;
};

/// Deterministic in (kb, spec). Every dialogue has all nine turns.
std::vector<DialogueTranscript> simulate_dialogues(const KnowledgeBase& kb, const LocaleResources& res,
                                                   const SimulationSpec& spec);

}  // namespace evi
