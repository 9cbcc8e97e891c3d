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
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "evi/fuzzy.hpp"
#include "evi/kb.hpp"
#include "evi/locale.hpp"
#include "evi/nlu.hpp"
#include "evi/transcript.hpp"

namespace evi {

/// NLU output for all nine turn slots of one dialogue. Missing turns hold an
/// empty result. Computing this once per (transcript, mode) lets every task
/// and model reuse it.
struct DialogueNlu {
  std::string dialogue_id;
  std::string true_profile_id;
  std::array<NluResult, kMaxTurns> turns;

  const NluResult& at(ItemKind item, int attempt) const {
    return turns[static_cast<std::size_t>(static_cast<int>(item) * kTurnsPerItem + attempt)];
  }
};

DialogueNlu analyze_dialogue(const DialogueTranscript& t, const LocaleResources& res, NluMode mode);

// ---- enrolment ----

/// Which attempts of each item the enrolment policy may use.
struct TurnSelector {
  int single = 0;  // 0 = all attempts, k in 1..3 = only attempt k

  static TurnSelector parse(std::string_view spec);  // "multi" | "single:k"
  std::string describe() const;
};

struct EnrolResult {
  std::optional<std::string> postcode;
  std::optional<ParsedName> name;
  std::optional<Date> dob;
  int turns_consumed = 0;
};

/// Per item: takes the top-1 value of the first non-empty NLU result among
/// the selected attempts, stopping there.
EnrolResult run_enrolment(const DialogueNlu& nlu, TurnSelector selector = {});

// ---- verification ----

/// What one turn contributes: whether NLU found anything, and the symbol
/// scores it produced.
struct TurnEvidence {
  bool observed = false;
  ProfileScoreInput scores;
};

using EvidenceSource = std::function<TurnEvidence(ItemKind item, int attempt)>;

struct VerifyOutcome {
  double score = 0;
  bool accepted = false;
  int turns_consumed = 0;
  bool early_terminated = false;
  ProfileScoreInput state;
};

/// Profile score with undefined symbols read as 1: no continuation of the
/// dialogue can end above it.
double upper_bound_score(const ProfileScoreInput& state, const FuzzyConfig& cfg);

/// The verification policy over an abstract evidence source. An item ends
/// once a turn's NLU is non-empty or after three attempts; with early_term the
/// dialogue stops after any item whose upper bound falls below theta.
VerifyOutcome verify_policy(const EvidenceSource& source, const FuzzyConfig& cfg, double theta, bool early_term);

struct VerifyConfig {
  ScorerModel model = ScorerModel::kFuzzy;
  FuzzyConfig fuzzy = FuzzyConfig::standard();
  double theta = 0.5;
  bool early_term = false;
  std::uint64_t seed = 7;
};

VerifyOutcome run_verification(const DialogueNlu& nlu, const Profile& claimed, const VerifyConfig& cfg);

// ---- identification ----

enum class KbMode { kNormal, kOracle };
enum class IdMode { kNone, kScored, kOracle };
IdMode parse_id_mode(std::string_view s);
std::string_view to_string(IdMode m);

struct IdentifyConfig {
  ScorerModel model = ScorerModel::kFuzzy;
  FuzzyConfig fuzzy = FuzzyConfig::infinity_one(0.5);
  double theta = 0.0;
  KbMode kb_mode = KbMode::kNormal;
  IdMode id_mode = IdMode::kScored;
  std::uint64_t seed = 7;
};

struct RankedCandidate {
  const Profile* profile = nullptr;
  double score = std::nan("");  // NaN when id_mode is kNone
};

/// Anytime identification state. Postcode evidence queries the KB; all
/// evidence accumulates per item; the candidate set never shrinks.
class IdentificationTracker {
 public:
  IdentificationTracker(const KnowledgeBase& kb, IdentifyConfig cfg, std::string dialogue_id,
                        std::string true_profile_id);

  /// Feeds one consumed turn of the given item.
  void observe(ItemKind item, const NluResult& nlu);

  /// Ranking over current evidence: score descending, then profile_id.
  std::vector<RankedCandidate> ranking() const;

  std::size_t candidate_count() const { return candidates_.size(); }
  bool has_candidate(std::string_view profile_id) const;
  std::vector<std::string> candidate_ids() const;

 private:
  ProfileScoreInput evidence_for(const Profile& p) const;

  const KnowledgeBase& kb_;
  IdentifyConfig cfg_;
  std::string dialogue_id_;
  std::string true_profile_id_;
  std::array<NluResult, 3> evidence_;
  std::vector<std::size_t> candidates_;  // sorted KB indices
};

struct IdentifyOutcome {
  std::vector<RankedCandidate> ranking;
  int turns_consumed = 0;
  std::vector<std::size_t> candidates_after_turn;  // one entry per consumed turn

  /// 1-based rank of the profile, 0 if absent.
  std::size_t rank_of(std::string_view profile_id) const;
};

IdentifyOutcome run_identification(const DialogueNlu& nlu, const KnowledgeBase& kb, const IdentifyConfig& cfg);

}  // namespace evi
