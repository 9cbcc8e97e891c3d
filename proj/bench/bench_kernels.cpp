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

// Serial reference vs. OpenMP kernels on a synthetic en-GB corpus.
// Run with OMP_NUM_THREADS set to compare thread counts.

#include <benchmark/benchmark.h>

#include "evi/experiment.hpp"
#include "evi/kb.hpp"
#include "evi/sim.hpp"

namespace {

using namespace evi;

struct Corpus {
  LocaleResources res;
  KnowledgeBase kb;
  std::vector<DialogueTranscript> dialogues;
};

const Corpus& corpus() {
  static const Corpus c = [] {
    auto res = LocaleResources::load(default_resource_root(), Locale::kEnGB);
    GenerationSpec g;
    g.locale = Locale::kEnGB;
    g.n_profiles = 10000;
    g.n_postcodes = 1000;
    g.postcode_formats = res.postcode_formats;
    g.first_name_pool = res.first_names;
    g.last_name_pool = res.last_names;
    KnowledgeBase kb = generate_kb(g);
    SimulationSpec s;
    s.n_dialogues = 400;
    auto dialogues = simulate_dialogues(kb, res, s);
    return Corpus{std::move(res), std::move(kb), std::move(dialogues)};
  }();
  return c;
}

ExecMode mode(const benchmark::State& state) { return state.range(0) ? ExecMode::kParallel : ExecMode::kSerial; }

void BM_AnalyzeAll(benchmark::State& state) {
  const Corpus& c = corpus();
  for (auto _ : state) {
    benchmark::DoNotOptimize(analyze_all(c.dialogues, c.res, NluMode::kSeeking, mode(state)));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(c.dialogues.size()));
}

void run_task(benchmark::State& state, ExperimentConfig cfg) {
  const Corpus& c = corpus();
  cfg.exec = mode(state);
  NluCache cache(c.dialogues, c.res, cfg.exec);
  cache.get(cfg.nlu);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_experiment(cfg, c.kb, c.dialogues, cache));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(c.dialogues.size()));
}

void BM_VerifySweep(benchmark::State& state) {
  ExperimentConfig cfg;
  cfg.task = Task::kVerify;
  run_task(state, cfg);
}

void BM_Identify(benchmark::State& state) {
  ExperimentConfig cfg;
  cfg.task = Task::kIdentify;
  cfg.fuzzy = FuzzyConfig::infinity_one(0.5);
  cfg.theta = 0.0;
  run_task(state, cfg);
}

BENCHMARK(BM_AnalyzeAll)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifySweep)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Identify)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
