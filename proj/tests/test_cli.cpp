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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <json.hpp>
#include <set>
#include <sstream>

#include "evi/common.hpp"
#include "test_util.hpp"

namespace evi {
namespace {

struct Result {
  int code = -1;
  std::string out;  // stdout and stderr
};

Result evi_cli(const std::string& args) {
  const std::string cmd = std::string(EVI_CLI_PATH) + " " + args + " 2>&1";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new testing::TempDir();
    ASSERT_EQ(evi_cli("gen-kb --locale en-GB --profiles 600 --postcodes 120 --seed 3 --out " + p("kb.tsv")).code, 0);
    ASSERT_EQ(evi_cli("simulate --locale en-GB --kb " + p("kb.tsv") + " --dialogues 60 --out " + p("d.jsonl")).code,
              0);
  }
  static void TearDownTestSuite() { delete dir_; }
  static std::string p(const std::string& name) { return (*dir_ / name).string(); }
  static std::string data() { return " --locale en-GB --kb " + p("kb.tsv") + " --data " + p("d.jsonl"); }
  static testing::TempDir* dir_;
};
testing::TempDir* Cli::dir_ = nullptr;

TEST_F(Cli, GenKbTableShapeAndDeterminism) {
  ASSERT_EQ(evi_cli("gen-kb --locale en-GB --profiles 10000 --postcodes 2000 --seed 7 --out " + p("a.tsv")).code, 0);
  ASSERT_EQ(evi_cli("gen-kb --locale en-GB --profiles 10000 --postcodes 2000 --seed 7 --out " + p("b.tsv")).code, 0);
  const std::string a = read_file(p("a.tsv"));
  EXPECT_EQ(a, read_file(p("b.tsv")));
  std::istringstream in(a);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "#evi-kb\t1\ten-GB");
  std::set<std::string> pcs;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    const auto t1 = line.find('\t');
    pcs.insert(line.substr(t1 + 1, line.find('\t', t1 + 1) - t1 - 1));
  }
  EXPECT_EQ(rows, 10000u);
  EXPECT_EQ(pcs.size(), 2000u);
}

TEST_F(Cli, MissingWordlistNamesTheFlag) {
  const auto r = evi_cli("gen-kb --locale en-GB --first-names /nonexistent/x.txt --out " + p("x.tsv"));
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.out.find("--first-names"), std::string::npos) << r.out;
}

TEST_F(Cli, VerificationSweepExportsDet) {
  const auto r = evi_cli("run --task v --nlu seeking --model fuzzy --theta sweep" + data() + " --out " + p("v.json") +
                         " --det-out " + p("v.det"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("EER"), std::string::npos);
  const auto det = read_file(p("v.det"));
  EXPECT_GT(std::count(det.begin(), det.end(), '\n'), 2);
  const auto j = nlohmann::json::parse(read_file(p("v.json")));
  EXPECT_TRUE(j.at("report").contains("eer"));
}

TEST_F(Cli, IdentificationWithKbOracle) {
  const auto r = evi_cli("run --task i --id-model fuzzy --alpha 0.5 --kb-oracle" + data() + " --out " + p("i.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("+kb-oracle"), std::string::npos) << r.out;
  const auto o = evi_cli("run --task i --id-model oracle --kb-oracle" + data() + " --out " + p("io.json"));
  ASSERT_EQ(o.code, 0) << o.out;
  const auto j = nlohmann::json::parse(read_file(p("io.json")));
  EXPECT_EQ(j.at("report").at("ir_at_1").get<double>(), 1.0);
  EXPECT_EQ(j.at("report").at("L").get<double>(), 1.0);
}

TEST_F(Cli, SingleTurnEnrolment) {
  const auto r = evi_cli("run --task e --nlu cautious --turns single:1" + data());
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("single:1"), std::string::npos) << r.out;
}

TEST_F(Cli, RunsAreDeterministic) {
  for (const char* name : {"r1.json", "r2.json"}) {
    ASSERT_EQ(evi_cli("run --task v --model random --theta sweep" + data() + " --out " + p(name)).code, 0);
  }
  EXPECT_EQ(read_file(p("r1.json")), read_file(p("r2.json")));
}

TEST_F(Cli, ReportMergesAndRoundTrips) {
  ASSERT_EQ(evi_cli("run --task v --model fuzzy" + data() + " --out " + p("m1.json")).code, 0);
  ASSERT_EQ(evi_cli("run --task v --model exact" + data() + " --out " + p("m2.json")).code, 0);
  const auto r = evi_cli("report " + p("m1.json") + " " + p("m2.json") + " --tsv " + p("m.tsv"));
  ASSERT_EQ(r.code, 0) << r.out;
  const auto tsv = read_file(p("m.tsv"));
  EXPECT_EQ(std::count(tsv.begin(), tsv.end(), '\n'), 1 + 1 + 2);  // title, header, two rows
  EXPECT_NE(tsv.find("seeking fuzzy"), std::string::npos);
  EXPECT_NE(tsv.find("seeking exact"), std::string::npos);
}

TEST_F(Cli, IdentificationGridGivesTwelveRows) {
  std::string files;
  for (const char* nlu : {"cautious", "seeking"}) {
    for (const char* model : {"none", "exact --alpha 1", "fuzzy --alpha 1", "exact --alpha 0.5",
                              "fuzzy --alpha 0.5", "oracle"}) {
      const std::string out = p(std::string("g-") + nlu + "-" + std::to_string(files.size()) + ".json");
      const auto r = evi_cli(std::string("run --task i --nlu ") + nlu + " --id-model " + model + data() + " --out " + out);
      ASSERT_EQ(r.code, 0) << model << "\n" << r.out;
      files += " " + out;
    }
  }
  ASSERT_EQ(evi_cli("report" + files + " --tsv " + p("grid.tsv")).code, 0);
  const auto tsv = read_file(p("grid.tsv"));
  EXPECT_EQ(std::count(tsv.begin(), tsv.end(), '\n'), 2 + 12);
  std::istringstream in(tsv);
  std::string line;
  std::set<std::string> labels;
  while (std::getline(in, line)) labels.insert(line.substr(0, line.find('\t')));
  EXPECT_EQ(labels.size(), 14u);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(evi_cli("report").code, 1);
  EXPECT_EQ(evi_cli("--help").code, 0);
  EXPECT_EQ(evi_cli("run --task v --bogus" + data()).code, 1);
  EXPECT_EQ(evi_cli("run --task x" + data()).code, 1);
  EXPECT_EQ(evi_cli("run --task e --theta 0.5" + data()).code, 1);
  EXPECT_EQ(evi_cli("run --task v --kb-oracle" + data()).code, 1);
  EXPECT_EQ(evi_cli("run --task i --theta sweep" + data()).code, 1);
  // Dataset and KB disagree on locale.
  ASSERT_EQ(evi_cli("gen-kb --locale pl-PL --profiles 50 --postcodes 10 --out " + p("pl.tsv")).code, 0);
  EXPECT_EQ(evi_cli("run --task e --locale pl-PL --kb " + p("pl.tsv") + " --data " + p("d.jsonl")).code, 2);
  // Malformed inputs.
  write_file_atomic(p("bad.jsonl"), "{oops\n");
  EXPECT_EQ(evi_cli("run --task e --locale en-GB --kb " + p("kb.tsv") + " --data " + p("bad.jsonl")).code, 2);
  write_file_atomic(p("old.json"), R"({"schema":"evi-results","version":99})");
  EXPECT_EQ(evi_cli("report " + p("old.json")).code, 2);
}

}  // namespace
}  // namespace evi
