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
#include <json.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "evi/batch.hpp"
#include "evi/dialogue.hpp"
#include "evi/eval.hpp"
#include "evi/fuzzy.hpp"
#include "evi/kb.hpp"
#include "evi/locale.hpp"
#include "evi/transcript.hpp"

namespace evi {

enum class Task { kEnrol, kVerify, kIdentify };
Task parse_task(std::string_view s);
std::string_view to_string(Task t);

struct ExperimentConfig {
  Task task = Task::kVerify;
  Locale locale = Locale::kEnGB;
  NluMode nlu = NluMode::kSeeking;
  ScorerModel model = ScorerModel::kFuzzy;
  FuzzyConfig fuzzy = FuzzyConfig::standard();
  std::optional<double> theta;  // nullopt: sweep (verification only)
  KbMode kb_mode = KbMode::kNormal;
  IdMode id_mode = IdMode::kScored;
  bool early_term = true;
  std::uint64_t seed = 7;
  TurnSelector turns;
  double far_target = 1e-4;
  ExecMode exec = ExecMode::kParallel;
  std::string dataset;  // recorded for provenance only
  std::string kb_path;

  /// Throws ConfigError for combinations that make no sense for the task.
  void validate() const;
  nlohmann::json to_json() const;
};

/// NLU output per dialogue for one mode, in input order.
std::vector<DialogueNlu> analyze_all(const std::vector<DialogueTranscript>& dialogues, const LocaleResources& res,
                                     NluMode mode, ExecMode exec);

/// Memoizes analyze_all per NLU mode so several experiments over the same
/// dialogues extract each turn once.
class NluCache {
 public:
  NluCache(const std::vector<DialogueTranscript>& dialogues, const LocaleResources& res, ExecMode exec)
      : dialogues_(dialogues), res_(res), exec_(exec) {}
  const std::vector<DialogueNlu>& get(NluMode mode);

 private:
  const std::vector<DialogueTranscript>& dialogues_;
  const LocaleResources& res_;
  ExecMode exec_;
  std::map<NluMode, std::vector<DialogueNlu>> cache_;
};

/// Throws DataError when a dialogue's locale differs from the KB's or its
/// true profile is missing.
void check_inputs(const std::vector<DialogueTranscript>& dialogues, const KnowledgeBase& kb, Locale locale);

/// Runs one configured task over all dialogues. Returns a results document:
/// {"schema": "evi-results", "version": 1, "config", "report", "dialogues"}.
nlohmann::json run_experiment(const ExperimentConfig& cfg, const KnowledgeBase& kb,
                              const std::vector<DialogueTranscript>& dialogues, NluCache& cache);

inline constexpr std::string_view kResultsSchema = "evi-results";
inline constexpr int kResultsVersion = 1;

}  // namespace evi
