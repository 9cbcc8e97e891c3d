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

#include "evi/dialogue.hpp"

#include <algorithm>
#include <cmath>

namespace evi {

DialogueNlu analyze_dialogue(const DialogueTranscript& t, const LocaleResources& res, NluMode mode) {
  DialogueNlu out;
  out.dialogue_id = t.dialogue_id;
  out.true_profile_id = t.true_profile_id;
  for (int i = 1; i <= kMaxTurns; ++i) {
    NluResult& r = out.turns[static_cast<std::size_t>(i - 1)];
    if (const Turn* turn = t.turn(i)) {
      r = extract(*turn, res, mode);
    } else {
      r.item_kind = Turn::item_for_turn(i);
    }
  }
  return out;
}

TurnSelector TurnSelector::parse(std::string_view spec) {
  if (spec == "multi") return {};
  if (spec.substr(0, 7) == "single:" && spec.size() == 8 && spec[7] >= '1' && spec[7] <= '3') {
    return TurnSelector{spec[7] - '0'};
  }
  throw ConfigError("bad turn selector '" + std::string(spec) + "' (expected multi or single:1..3)");
}

std::string TurnSelector::describe() const { return single ? "single:" + std::to_string(single) : "multi"; }

EnrolResult run_enrolment(const DialogueNlu& nlu, TurnSelector selector) {
  EnrolResult out;
  for (ItemKind item : kAllItems) {
    for (int attempt = 0; attempt < kTurnsPerItem; ++attempt) {
      if (selector.single && attempt != selector.single - 1) continue;
      ++out.turns_consumed;
      const NluResult& r = nlu.at(item, attempt);
      if (r.empty()) continue;
      const NluValue& top = r.values.front();
      switch (item) {
        case ItemKind::kPostcode: out.postcode = std::get<std::string>(top); break;
        case ItemKind::kName: out.name = std::get<ParsedName>(top); break;
        case ItemKind::kDob: out.dob = std::get<Date>(top); break;
      }
      break;
    }
  }
  return out;
}

double upper_bound_score(const ProfileScoreInput& state, const FuzzyConfig& cfg) {
  return profile_score(state, UndefinedPolicy::kAsOne, cfg);
}

VerifyOutcome verify_policy(const EvidenceSource& source, const FuzzyConfig& cfg, double theta, bool early_term) {
  VerifyOutcome out;
  for (ItemKind item : kAllItems) {
    for (int attempt = 0; attempt < kTurnsPerItem; ++attempt) {
      ++out.turns_consumed;
      const TurnEvidence ev = source(item, attempt);
      out.state.merge_max(ev.scores);
      if (ev.observed) break;
    }
    if (early_term && item != ItemKind::kDob && upper_bound_score(out.state, cfg) < theta) {
      out.early_terminated = true;
      break;
    }
  }
  out.score = profile_score(out.state, UndefinedPolicy::kAsZero, cfg);
  out.accepted = out.score >= theta;
  return out;
}

VerifyOutcome run_verification(const DialogueNlu& nlu, const Profile& claimed, const VerifyConfig& cfg) {
  auto source = [&](ItemKind item, int attempt) {
    const NluResult& r = nlu.at(item, attempt);
    Rng rng = random_scorer_rng(cfg.seed, nlu.dialogue_id, item);
    return TurnEvidence{!r.empty(), score_evidence(cfg.model, claimed, r, rng)};
  };
  return verify_policy(source, cfg.fuzzy, cfg.theta, cfg.early_term);
}

IdMode parse_id_mode(std::string_view s) {
  if (s == "none") return IdMode::kNone;
  if (s == "scored") return IdMode::kScored;
  if (s == "oracle") return IdMode::kOracle;
  throw ConfigError("unknown identification mode '" + std::string(s) + "' (expected none, scored or oracle)");
}

std::string_view to_string(IdMode m) {
  switch (m) {
    case IdMode::kNone: return "none";
    case IdMode::kScored: return "scored";
    case IdMode::kOracle: return "oracle";
  }
  return "?";
}

IdentificationTracker::IdentificationTracker(const KnowledgeBase& kb, IdentifyConfig cfg, std::string dialogue_id,
                                             std::string true_profile_id)
    : kb_(kb), cfg_(cfg), dialogue_id_(std::move(dialogue_id)), true_profile_id_(std::move(true_profile_id)) {
  for (ItemKind item : kAllItems) evidence_[static_cast<std::size_t>(item)].item_kind = item;
}

void IdentificationTracker::observe(ItemKind item, const NluResult& nlu) {
  NluResult& acc = evidence_[static_cast<std::size_t>(item)];
  for (std::size_t i = 0; i < nlu.values.size(); ++i) {
    if (std::find(acc.values.begin(), acc.values.end(), nlu.values[i]) != acc.values.end()) continue;
    acc.values.push_back(nlu.values[i]);
    acc.source_rank.push_back(nlu.source_rank[i]);
  }
  if (item != ItemKind::kPostcode) return;

  const auto postcodes = nlu.postcodes();
  const auto hits = cfg_.kb_mode == KbMode::kOracle ? oracle_query(kb_, postcodes, true_profile_id_)
                                                    : query_by_postcode(kb_, postcodes);
  const Profile* base = kb_.profiles().data();
  std::vector<std::size_t> merged;
  std::vector<std::size_t> found;
  for (const Profile* p : hits) found.push_back(static_cast<std::size_t>(p - base));
  std::set_union(candidates_.begin(), candidates_.end(), found.begin(), found.end(), std::back_inserter(merged));
  candidates_ = std::move(merged);
}

ProfileScoreInput IdentificationTracker::evidence_for(const Profile& p) const {
  ProfileScoreInput in;
  for (ItemKind item : kAllItems) {
    const NluResult& ev = evidence_[static_cast<std::size_t>(item)];
    if (ev.empty() && cfg_.model != ScorerModel::kRandom) continue;
    Rng rng = Rng::keyed(cfg_.seed, {"random-identify", dialogue_id_, to_string(item), p.profile_id});
    in.merge_max(score_evidence(cfg_.model, p, ev, rng));
  }
  return in;
}

std::vector<RankedCandidate> IdentificationTracker::ranking() const {
  std::vector<RankedCandidate> out;
  for (std::size_t idx : candidates_) {
    const Profile& p = kb_.profiles()[idx];
    if (cfg_.id_mode == IdMode::kNone) {
      out.push_back({&p, std::nan("")});
      continue;
    }
    const double s = profile_score(evidence_for(p), UndefinedPolicy::kAsZero, cfg_.fuzzy);
    if (s >= cfg_.theta || (cfg_.id_mode == IdMode::kOracle && p.profile_id == true_profile_id_)) {
      out.push_back({&p, s});
    }
  }
  // Scores that differ only by rounding noise count as ties, broken by profile id.
  auto key = [](double s) { return std::llround(s * 1e9); };
  std::stable_sort(out.begin(), out.end(), [&](const RankedCandidate& a, const RankedCandidate& b) {
    if (cfg_.id_mode != IdMode::kNone && key(a.score) != key(b.score)) return key(a.score) > key(b.score);
    return a.profile->profile_id < b.profile->profile_id;
  });
  if (cfg_.id_mode == IdMode::kOracle) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const RankedCandidate& c) { return c.profile->profile_id == true_profile_id_; });
    if (it != out.end()) std::rotate(out.begin(), it, it + 1);
  }
  return out;
}

bool IdentificationTracker::has_candidate(std::string_view profile_id) const {
  const Profile* p = kb_.find(profile_id);
  if (!p) return false;
  const auto idx = static_cast<std::size_t>(p - kb_.profiles().data());
  return std::binary_search(candidates_.begin(), candidates_.end(), idx);
}

std::vector<std::string> IdentificationTracker::candidate_ids() const {
  std::vector<std::string> out;
  for (auto idx : candidates_) out.push_back(kb_.profiles()[idx].profile_id);
  return out;
}

std::size_t IdentifyOutcome::rank_of(std::string_view profile_id) const {
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    if (ranking[i].profile->profile_id == profile_id) return i + 1;
  }
  return 0;
}

IdentifyOutcome run_identification(const DialogueNlu& nlu, const KnowledgeBase& kb, const IdentifyConfig& cfg) {
  IdentificationTracker tracker(kb, cfg, nlu.dialogue_id, nlu.true_profile_id);
  IdentifyOutcome out;
  auto finish = [&] {
    out.ranking = tracker.ranking();
    return out;
  };
  for (ItemKind item : kAllItems) {
    for (int attempt = 0; attempt < kTurnsPerItem; ++attempt) {
      const NluResult& r = nlu.at(item, attempt);
      ++out.turns_consumed;
      tracker.observe(item, r);
      out.candidates_after_turn.push_back(tracker.candidate_count());
      if (cfg.id_mode == IdMode::kOracle && tracker.has_candidate(nlu.true_profile_id)) return finish();
      if (!r.empty()) break;
    }
    // Only postcode turns query the KB, so an empty set here is final.
    if (item == ItemKind::kPostcode && tracker.candidate_count() == 0) break;
  }
  return finish();
}

}  // namespace evi
