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

#include "evi/experiment.hpp"

#include <algorithm>

namespace evi {

using nlohmann::json;

Task parse_task(std::string_view s) {
  if (s == "e" || s == "enrol" || s == "E") return Task::kEnrol;
  if (s == "v" || s == "verify" || s == "V") return Task::kVerify;
  if (s == "i" || s == "identify" || s == "I") return Task::kIdentify;
  throw ConfigError("unknown task '" + std::string(s) + "' (expected e, v or i)");
}

std::string_view to_string(Task t) {
  switch (t) {
    case Task::kEnrol: return "e";
    case Task::kVerify: return "v";
    case Task::kIdentify: return "i";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  fuzzy.validate();
  if (theta && !(*theta >= 0 && *theta <= 1)) throw ConfigError("theta must lie in [0, 1]");
  if (!(far_target > 0 && far_target < 1)) throw ConfigError("FAR target must lie in (0, 1)");
  if (task == Task::kIdentify && !theta) throw ConfigError("identification needs a fixed theta");
  if (task != Task::kEnrol && turns.single) throw ConfigError("--turns applies to enrolment only");
  if (task != Task::kIdentify && (kb_mode != KbMode::kNormal || id_mode != IdMode::kScored)) {
    throw ConfigError("KB and identification oracles apply to identification only");
  }
}

json ExperimentConfig::to_json() const {
  json j;
  j["task"] = std::string(to_string(task));
  j["locale"] = std::string(to_string(locale));
  j["nlu"] = std::string(to_string(nlu));
  if (task != Task::kEnrol) {
    j["model"] = std::string(to_string(model));
    j["operators"] = fuzzy.describe();
    j["alpha"] = fuzzy.alpha;
    j["p"] = fuzzy.p;
  }
  if (task == Task::kVerify) {
    j["theta"] = theta ? json(*theta) : json("sweep");
    j["early_term"] = early_term;
    j["far_target"] = far_target;
  }
  if (task == Task::kIdentify) {
    j["theta"] = theta.value_or(0.0);
    j["kb_mode"] = kb_mode == KbMode::kOracle ? "oracle" : "normal";
    j["id_mode"] = std::string(to_string(id_mode));
  }
  if (task == Task::kEnrol) j["turns"] = turns.describe();
  j["seed"] = seed;
  j["dataset"] = dataset;
  j["kb"] = kb_path;
  return j;
}

std::vector<DialogueNlu> analyze_all(const std::vector<DialogueTranscript>& dialogues, const LocaleResources& res,
                                     NluMode mode, ExecMode exec) {
  return map_indices(
      dialogues.size(), [&](std::size_t i) { return analyze_dialogue(dialogues[i], res, mode); }, exec);
}

const std::vector<DialogueNlu>& NluCache::get(NluMode mode) {
  auto it = cache_.find(mode);
  if (it == cache_.end()) it = cache_.emplace(mode, analyze_all(dialogues_, res_, mode, exec_)).first;
  return it->second;
}

void check_inputs(const std::vector<DialogueTranscript>& dialogues, const KnowledgeBase& kb, Locale locale) {
  if (kb.locale() != locale) {
    throw DataError("KB locale " + std::string(to_string(kb.locale())) + " does not match requested locale " +
                    std::string(to_string(locale)));
  }
  for (const auto& d : dialogues) {
    if (d.locale != kb.locale()) {
      throw DataError("dialogue " + d.dialogue_id + " has locale " + std::string(to_string(d.locale)) +
                      " but the KB is " + std::string(to_string(kb.locale())));
    }
    if (!kb.find(d.true_profile_id)) {
      throw DataError("dialogue " + d.dialogue_id + " refers to unknown profile " + d.true_profile_id);
    }
  }
}

namespace {

json prf_json(const Prf& p) {
  return {{"P", p.precision}, {"R", p.recall}, {"F1", p.f1}, {"total", p.total},
          {"extracted", p.extracted}, {"correct", p.correct}, {"precision_undefined", p.precision_undefined}};
}

json name_json(const std::optional<ParsedName>& n) {
  if (!n) return nullptr;
  json j = json::object();
  if (n->first) j["first"] = *n->first;
  if (n->last) j["last"] = *n->last;
  if (n->full) j["full"] = *n->full;
  return j;
}

json run_enrol(const ExperimentConfig& cfg, const KnowledgeBase& kb, const std::vector<DialogueNlu>& nlu,
               json& rows) {
  const auto results =
      map_indices(nlu.size(), [&](std::size_t i) { return run_enrolment(nlu[i], cfg.turns); }, cfg.exec);
  std::vector<Outcome> pc, name, dob, profile;
  std::vector<double> turns;
  for (std::size_t i = 0; i < nlu.size(); ++i) {
    const EnrolResult& r = results[i];
    const Profile& truth = kb.at(nlu[i].true_profile_id);
    const Outcome o_pc{r.postcode.has_value(), r.postcode && *r.postcode == truth.postcode};
    const Outcome o_name{r.name.has_value(), r.name && r.name->full && *r.name->full == truth.name_full()};
    const Outcome o_dob{r.dob.has_value(), r.dob && *r.dob == truth.dob};
    const Outcome o_all{o_pc.extracted && o_name.extracted && o_dob.extracted,
                        o_pc.correct && o_name.correct && o_dob.correct};
    pc.push_back(o_pc);
    name.push_back(o_name);
    dob.push_back(o_dob);
    profile.push_back(o_all);
    turns.push_back(r.turns_consumed);
    rows.push_back({{"dialogue_id", nlu[i].dialogue_id},
                    {"true_profile_id", nlu[i].true_profile_id},
                    {"postcode", r.postcode ? json(*r.postcode) : json(nullptr)},
                    {"name", name_json(r.name)},
                    {"dob", r.dob ? json(r.dob->iso()) : json(nullptr)},
                    {"turns", r.turns_consumed},
                    {"correct", {{"postcode", o_pc.correct}, {"name", o_name.correct}, {"dob", o_dob.correct}}}});
  }
  return {{"n", nlu.size()},
          {"postcode", prf_json(prf(pc))},
          {"name", prf_json(prf(name))},
          {"dob", prf_json(prf(dob))},
          {"profile", prf_json(prf(profile))},
          {"L", mean(turns)}};
}

json run_verify(const ExperimentConfig& cfg, const KnowledgeBase& kb, const std::vector<DialogueTranscript>& dialogues,
                const std::vector<DialogueNlu>& nlu, json& rows) {
  const auto trials = sample_impostors(dialogues, kb, cfg.seed);
  VerifyConfig plain{cfg.model, cfg.fuzzy, 0.0, false, cfg.seed};
  const auto full = map_indices(
      trials.size(), [&](std::size_t i) { return run_verification(nlu[trials[i].dialogue], *trials[i].claimed, plain); },
      cfg.exec);

  std::vector<double> genuine, impostor, turns;
  for (std::size_t i = 0; i < trials.size(); ++i) {
    (trials[i].genuine ? genuine : impostor).push_back(full[i].score);
    turns.push_back(full[i].turns_consumed);
  }
  const DetCurve curve = det_sweep(genuine, impostor);
  const FrrAtFar op = frr_at_far(curve, cfg.far_target);
  const double theta = cfg.theta.value_or(op.theta);

  VerifyConfig timed{cfg.model, cfg.fuzzy, theta, cfg.early_term, cfg.seed};
  const auto early = map_indices(
      trials.size(), [&](std::size_t i) { return run_verification(nlu[trials[i].dialogue], *trials[i].claimed, timed); },
      cfg.exec);

  std::vector<double> turns_early;
  std::size_t mismatches = 0, false_accepts = 0, false_rejects = 0;
  for (std::size_t i = 0; i < trials.size(); ++i) {
    turns_early.push_back(early[i].turns_consumed);
    const bool decision = full[i].score >= theta;
    mismatches += decision != early[i].accepted;
    if (trials[i].genuine && !early[i].accepted) ++false_rejects;
    if (!trials[i].genuine && early[i].accepted) ++false_accepts;
    rows.push_back({{"dialogue_id", dialogues[trials[i].dialogue].dialogue_id},
                    {"claimed_profile_id", trials[i].claimed->profile_id},
                    {"genuine", trials[i].genuine},
                    {"score", full[i].score},
                    {"turns", full[i].turns_consumed},
                    {"accepted", early[i].accepted},
                    {"turns_early", early[i].turns_consumed},
                    {"early_terminated", early[i].early_terminated}});
  }
  json det = json::array();
  for (const auto& p : curve.points) det.push_back({p.theta, p.far, p.frr});
  return {{"n_genuine", genuine.size()},
          {"n_impostor", impostor.size()},
          {"eer", eer(curve)},
          {"far_target", cfg.far_target},
          {"frr_at_far", op.frr},
          {"far_at_operating_point", op.far},
          {"resolution_limited", op.resolution_limited},
          {"theta", theta},
          {"theta_from_sweep", !cfg.theta.has_value()},
          {"far_at_theta", static_cast<double>(false_accepts) / static_cast<double>(impostor.size())},
          {"frr_at_theta", static_cast<double>(false_rejects) / static_cast<double>(genuine.size())},
          {"L", mean(turns)},
          {"L_early", mean(turns_early)},
          {"early_term", cfg.early_term},
          {"decision_mismatches", mismatches},
          {"det_degenerate", curve.degenerate},
          {"det", det}};
}

json run_identify(const ExperimentConfig& cfg, const KnowledgeBase& kb, const std::vector<DialogueNlu>& nlu,
                  json& rows) {
  IdentifyConfig icfg{cfg.model, cfg.fuzzy, cfg.theta.value_or(0.0), cfg.kb_mode, cfg.id_mode, cfg.seed};
  const auto results =
      map_indices(nlu.size(), [&](std::size_t i) { return run_identification(nlu[i], kb, icfg); }, cfg.exec);
  std::vector<std::size_t> ranks;
  std::vector<double> turns;
  for (std::size_t i = 0; i < nlu.size(); ++i) {
    const IdentifyOutcome& r = results[i];
    const std::size_t rank = r.rank_of(nlu[i].true_profile_id);
    ranks.push_back(rank);
    turns.push_back(r.turns_consumed);
    json top = json::array();
    for (std::size_t k = 0; k < r.ranking.size() && k < 10; ++k) top.push_back(r.ranking[k].profile->profile_id);
    rows.push_back({{"dialogue_id", nlu[i].dialogue_id},
                    {"true_profile_id", nlu[i].true_profile_id},
                    {"rank", rank},
                    {"retrieved", r.ranking.size()},
                    {"turns", r.turns_consumed},
                    {"top", top}});
  }
  const double any = static_cast<double>(std::count_if(ranks.begin(), ranks.end(), [](auto k) { return k > 0; })) /
                     static_cast<double>(std::max<std::size_t>(ranks.size(), 1));
  return {{"n", nlu.size()},
          {"ir_at_1", ir_at_r(ranks, 1)},
          {"ir_at_3", ir_at_r(ranks, 3)},
          {"ir_at_10", ir_at_r(ranks, 10)},
          {"ir_any", any},
          {"L", mean(turns)}};
}

}  // namespace

json run_experiment(const ExperimentConfig& cfg, const KnowledgeBase& kb,
                    const std::vector<DialogueTranscript>& dialogues, NluCache& cache) {
  cfg.validate();
  check_inputs(dialogues, kb, cfg.locale);
  if (dialogues.empty()) throw DataError("no dialogues to evaluate");
  const auto& nlu = cache.get(cfg.nlu);

  json rows = json::array();
  json report;
  switch (cfg.task) {
    case Task::kEnrol: report = run_enrol(cfg, kb, nlu, rows); break;
    case Task::kVerify: report = run_verify(cfg, kb, dialogues, nlu, rows); break;
    case Task::kIdentify: report = run_identify(cfg, kb, nlu, rows); break;
  }
  return {{"schema", kResultsSchema}, {"version", kResultsVersion}, {"config", cfg.to_json()}, {"report", report},
          {"dialogues", rows}};
}

}  // namespace evi
