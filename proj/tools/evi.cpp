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

// evi: generate knowledge bases, run EVI experiments, merge reports.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "evi/experiment.hpp"
#include "evi/kb.hpp"
#include "evi/locale.hpp"
#include "evi/report.hpp"
#include "evi/sim.hpp"
#include "evi/transcript.hpp"

namespace fs = std::filesystem;
using namespace evi;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct ResourceFlags {
  std::string root;
  std::vector<std::string> extra_first;
  std::vector<std::string> extra_last;

  LocaleResources load(Locale locale) const {
    LocaleResources res = LocaleResources::load(root.empty() ? default_resource_root() : fs::path(root), locale);
    for (const auto& f : extra_first) res.add_lexicon_file(f, kFirstName);
    for (const auto& f : extra_last) res.add_lexicon_file(f, kLastName);
    return res;
  }
};

void add_resource_flags(CLI::App* cmd, ResourceFlags& r) {
  cmd->add_option("--resources", r.root, "Resource directory (default: $EVI_RESOURCE_DIR or the build-time path)");
  cmd->add_option("--lexicon-first", r.extra_first, "Extra first-name lexicon file(s)")->check(CLI::ExistingFile);
  cmd->add_option("--lexicon-last", r.extra_last, "Extra last-name lexicon file(s)")->check(CLI::ExistingFile);
}

// ---- gen-kb ----

struct GenKbFlags {
  std::string locale;
  std::size_t profiles = 10000;
  std::size_t postcodes = 2000;
  std::uint64_t seed = 7;
  std::string out;
  std::string first_names;
  std::string last_names;
  std::string dob_min = "1940-01-01";
  std::string dob_max = "2002-12-31";
  ResourceFlags res;
};

Date parse_date_flag(const std::string& flag, const std::string& value) {
  auto d = Date::from_iso(value);
  if (!d) throw ConfigError(flag + ": expected YYYY-MM-DD, got '" + value + "'");
  return *d;
}

std::vector<std::string> wordlist_flag(const std::string& flag, const std::string& path) {
  if (!fs::exists(path)) throw ConfigError(flag + ": wordlist '" + path + "' does not exist");
  return read_wordlist(path);
}

int cmd_gen_kb(const GenKbFlags& f) {
  const Locale locale = parse_locale(f.locale);
  const LocaleResources res = f.res.load(locale);
  GenerationSpec spec;
  spec.locale = locale;
  spec.n_profiles = f.profiles;
  spec.n_postcodes = f.postcodes;
  spec.seed = f.seed;
  spec.postcode_formats = res.postcode_formats;
  spec.first_name_pool = f.first_names.empty() ? res.first_names : wordlist_flag("--first-names", f.first_names);
  spec.last_name_pool = f.last_names.empty() ? res.last_names : wordlist_flag("--last-names", f.last_names);
  spec.dob_min = parse_date_flag("--dob-min", f.dob_min);
  spec.dob_max = parse_date_flag("--dob-max", f.dob_max);
  const KnowledgeBase kb = generate_kb(spec);
  save_kb(kb, f.out);
  std::cerr << "wrote " << kb.size() << " profiles (" << kb.distinct_postcodes() << " postcodes) to " << f.out << "\n";
  return 0;
}

// ---- run ----

struct RunFlags {
  std::string task;
  std::string locale;
  std::string data;
  std::string evi_turns;
  std::string kb;
  std::string evi_profiles;
  std::string nlu = "seeking";
  std::string model;
  std::string id_model;
  std::string operators;
  std::optional<double> alpha;
  std::optional<double> p;
  std::string theta;
  bool no_early_term = false;
  bool kb_oracle = false;
  std::string turns = "multi";
  std::uint64_t seed = 7;
  double far_target = 1e-4;
  std::string exec = "parallel";
  std::string out;
  std::string det_out;
  ResourceFlags res;
};

ExperimentConfig build_config(const RunFlags& f) {
  ExperimentConfig c;
  c.task = parse_task(f.task);
  c.locale = parse_locale(f.locale);
  c.nlu = parse_nlu_mode(f.nlu);
  c.seed = f.seed;
  c.far_target = f.far_target;
  c.exec = parse_exec_mode(f.exec);
  c.turns = TurnSelector::parse(f.turns);
  c.early_term = !f.no_early_term;
  c.kb_mode = f.kb_oracle ? KbMode::kOracle : KbMode::kNormal;
  c.dataset = f.data.empty() ? f.evi_turns : f.data;
  c.kb_path = f.kb.empty() ? f.evi_profiles : f.kb;

  if (!f.model.empty()) c.model = parse_scorer_model(f.model);
  if (!f.id_model.empty()) {
    if (c.task != Task::kIdentify) throw ConfigError("--id-model applies to --task i only");
    if (f.id_model == "none") {
      c.id_mode = IdMode::kNone;
    } else if (f.id_model == "oracle") {
      c.id_mode = IdMode::kOracle;
    } else {
      c.model = parse_scorer_model(f.id_model);
    }
  }

  // Verification defaults to min/max operators, identification to
  // infinity-one with alpha 0.5.
  std::string ops = f.operators;
  if (ops.empty()) ops = (c.task == Task::kIdentify || f.alpha) ? "infinity-one" : f.p ? "pnorm" : "standard";
  if (ops == "standard") {
    c.fuzzy = FuzzyConfig::standard();
  } else if (ops == "pnorm") {
    c.fuzzy = FuzzyConfig::pnorm(f.p.value_or(2.0));
  } else if (ops == "infinity-one") {
    c.fuzzy = FuzzyConfig::infinity_one(f.alpha.value_or(0.5));
  } else {
    throw ConfigError("--operators: expected standard, pnorm or infinity-one");
  }

  if (f.theta.empty() || f.theta == "sweep") {
    if (!f.theta.empty() && c.task != Task::kVerify) throw ConfigError("--theta sweep applies to --task v only");
    if (c.task == Task::kIdentify) c.theta = 0.0;
  } else {
    try {
      std::size_t used = 0;
      c.theta = std::stod(f.theta, &used);
      if (used != f.theta.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ConfigError("--theta: expected a number in [0, 1] or 'sweep'");
    }
  }
  if (c.task == Task::kEnrol && (!f.model.empty() || !f.theta.empty())) {
    throw ConfigError("--model and --theta do not apply to --task e");
  }
  c.validate();
  return c;
}

int cmd_run(const RunFlags& f) {
  const ExperimentConfig cfg = build_config(f);
  if (f.data.empty() == f.evi_turns.empty()) throw ConfigError("give exactly one of --data or --evi-turns");
  if (f.kb.empty() == f.evi_profiles.empty()) throw ConfigError("give exactly one of --kb or --evi-profiles");

  const LocaleResources res = f.res.load(cfg.locale);
  const KnowledgeBase kb = f.kb.empty() ? load_evi_dataset_profiles(f.evi_profiles, cfg.locale) : load_kb(f.kb);
  std::vector<DialogueTranscript> dialogues =
      f.data.empty() ? load_evi_dataset_turns(f.evi_turns) : load_transcripts(f.data);
  if (!f.evi_turns.empty()) {
    std::erase_if(dialogues, [&](const DialogueTranscript& d) { return d.locale != cfg.locale; });
  }

  NluCache cache(dialogues, res, cfg.exec);
  const nlohmann::json result = run_experiment(cfg, kb, dialogues, cache);
  if (!f.out.empty()) save_results(result, f.out);
  if (!f.det_out.empty()) write_file_atomic(f.det_out, det_tsv(result));
  for (const auto& t : build_tables({result})) std::cout << t.render() << "\n";
  return 0;
}

// ---- report ----

struct ReportFlags {
  std::vector<std::string> inputs;
  std::string tsv;
  std::string det_dir;
};

int cmd_report(const ReportFlags& f) {
  if (f.inputs.empty()) throw ConfigError("report: no results files given");
  std::vector<nlohmann::json> results;
  for (const auto& in : f.inputs) results.push_back(load_results(in));
  const auto tables = build_tables(results);
  std::string tsv;
  for (const auto& t : tables) {
    std::cout << t.render() << "\n";
    tsv += "# " + t.title + "\n" + t.tsv();
  }
  if (!f.tsv.empty()) write_file_atomic(f.tsv, tsv);
  if (!f.det_dir.empty()) {
    for (std::size_t i = 0; i < results.size(); ++i) {
      if (results[i].at("config").at("task") != "v") continue;
      const std::string stem = fs::path(f.inputs[i]).stem().string();
      write_file_atomic(fs::path(f.det_dir) / (stem + ".det.tsv"), det_tsv(results[i]));
    }
  }
  return 0;
}

// ---- simulate ----

struct SimulateFlags {
  std::string locale;
  std::string kb;
  std::string out;
  SimulationSpec spec;
  ResourceFlags res;
};

int cmd_simulate(const SimulateFlags& f) {
  const Locale locale = parse_locale(f.locale);
  const LocaleResources res = f.res.load(locale);
  const KnowledgeBase kb = load_kb(f.kb);
  if (kb.locale() != locale) throw DataError("KB locale does not match --locale");
  save_transcripts(simulate_dialogues(kb, res, f.spec), f.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Knowledge-based enrolment, verification and identification over dialogue transcripts"};
  app.require_subcommand(1);

  GenKbFlags gen;
  auto* g = app.add_subcommand("gen-kb", "Generate a synthetic profile knowledge base");
  g->add_option("--locale", gen.locale, "en-GB, pl-PL or fr-FR")->required();
  g->add_option("--profiles", gen.profiles, "Number of profiles");
  g->add_option("--postcodes", gen.postcodes, "Size of the postcode pool");
  g->add_option("--seed", gen.seed, "Random seed");
  g->add_option("--out", gen.out, "Output KB file")->required();
  g->add_option("--first-names", gen.first_names, "First-name wordlist (default: locale resources)");
  g->add_option("--last-names", gen.last_names, "Last-name wordlist (default: locale resources)");
  g->add_option("--dob-min", gen.dob_min, "Earliest date of birth");
  g->add_option("--dob-max", gen.dob_max, "Latest date of birth");
  add_resource_flags(g, gen.res);

  RunFlags run;
  auto* r = app.add_subcommand("run", "Run one task over a set of dialogues");
  r->add_option("--task", run.task, "e (enrolment), v (verification) or i (identification)")->required();
  r->add_option("--locale", run.locale, "en-GB, pl-PL or fr-FR")->required();
  r->add_option("--data", run.data, "Transcripts (JSONL)");
  r->add_option("--evi-turns", run.evi_turns, "Dialogue turns in the published dataset layout");
  r->add_option("--kb", run.kb, "KB file written by gen-kb");
  r->add_option("--evi-profiles", run.evi_profiles, "Profiles in the published dataset layout");
  r->add_option("--nlu", run.nlu, "cautious or seeking");
  r->add_option("--model", run.model, "random, exact or fuzzy");
  r->add_option("--id-model", run.id_model, "Identification model: none, exact, fuzzy, random or oracle");
  r->add_option("--operators", run.operators, "standard, pnorm or infinity-one");
  r->add_option("--alpha", run.alpha, "infinity-one alpha");
  r->add_option("--p", run.p, "p-norm exponent");
  r->add_option("--theta", run.theta, "Threshold, or 'sweep' for verification");
  r->add_flag("--no-early-term", run.no_early_term, "Disable early termination in verification");
  r->add_flag("--kb-oracle", run.kb_oracle, "Always query the true profile's postcode");
  r->add_option("--turns", run.turns, "multi or single:k (enrolment)");
  r->add_option("--seed", run.seed, "Seed for impostor sampling and the random model");
  r->add_option("--far-target", run.far_target, "FAR operating point for FRR reporting");
  r->add_option("--exec", run.exec, "parallel or serial");
  r->add_option("--out", run.out, "Results file (JSON)");
  r->add_option("--det-out", run.det_out, "DET points (TSV), verification only");
  add_resource_flags(r, run.res);

  ReportFlags rep;
  auto* p = app.add_subcommand("report", "Merge results files into comparison tables");
  p->add_option("inputs", rep.inputs, "Results files");
  p->add_option("--tsv", rep.tsv, "Also write the tables as TSV");
  p->add_option("--det-dir", rep.det_dir, "Write one DET TSV per verification result");

  SimulateFlags sim;
  auto* s = app.add_subcommand("simulate", "Write synthetic transcripts for a KB");
  s->add_option("--locale", sim.locale, "en-GB, pl-PL or fr-FR")->required();
  s->add_option("--kb", sim.kb, "KB file")->required();
  s->add_option("--out", sim.out, "Output transcripts (JSONL)")->required();
  s->add_option("--dialogues", sim.spec.n_dialogues, "Number of dialogues");
  s->add_option("--seed", sim.spec.seed, "Random seed");
  s->add_option("--noise", sim.spec.noise, "Per-hypothesis corruption probability")->check(CLI::Range(0.0, 1.0));
  s->add_option("--miss-rate", sim.spec.miss_rate, "Per-turn miss probability")->check(CLI::Range(0.0, 1.0));
  s->add_option("--max-nbest", sim.spec.max_nbest, "Largest n-best list")->check(CLI::Range(1, 20));
  add_resource_flags(s, sim.res);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*g) return cmd_gen_kb(gen);
    if (*r) return cmd_run(run);
    if (*p) return cmd_report(rep);
    if (*s) return cmd_simulate(sim);
  } catch (const ConfigError& e) {
    std::cerr << "evi: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ContractError& e) {
    std::cerr << "evi: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "evi: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "evi: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
