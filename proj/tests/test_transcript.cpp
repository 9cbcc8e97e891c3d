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

#include <fstream>
#include <sstream>

#include "evi/transcript.hpp"
#include "test_util.hpp"

namespace evi {
namespace {

DialogueTranscript sample() {
  DialogueTranscript t;
  t.dialogue_id = "d1";
  t.locale = Locale::kPlPL;
  t.true_profile_id = "P00001";
  t.turns = {testing::make_turn(1, {"zero zero dziewięćset pięćdziesiąt", "00-950"}),
             testing::make_turn(4, {"anna nowak"}), testing::make_turn(9, {})};
  t.turns[0].prompt_variant = "Q1";
  return t;
}

TEST(Transcript, JsonLineRoundTrip) {
  const auto t = sample();
  std::istringstream in(transcript_to_json_line(t) + "\n\n" + transcript_to_json_line(t) + "\n");
  const auto back = read_transcripts(in, "mem");
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].dialogue_id, "d1");
  EXPECT_EQ(back[0].locale, Locale::kPlPL);
  ASSERT_EQ(back[0].turns.size(), 3u);
  EXPECT_EQ(back[0].turns[0].nbest, t.turns[0].nbest);
  EXPECT_EQ(back[0].turns[0].prompt_variant, "Q1");
  EXPECT_EQ(back[0].turn(4)->nbest, std::vector<std::string>{"anna nowak"});
  EXPECT_EQ(back[0].turn(5), nullptr);
}

TEST(Transcript, FileRoundTrip) {
  testing::TempDir dir;
  save_transcripts({sample()}, dir / "t.jsonl");
  const auto back = load_transcripts(dir / "t.jsonl");
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(transcript_to_json_line(back[0]), transcript_to_json_line(sample()));
  EXPECT_THROW(load_transcripts(dir / "missing.jsonl"), ConfigError);
}

TEST(Transcript, ValidationErrorsNameTheLine) {
  auto bad = [](const std::string& second) {
    std::istringstream in(transcript_to_json_line(sample()) + "\n" + second + "\n");
    try {
      read_transcripts(in, "t.jsonl");
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  EXPECT_EQ(bad("{not json"), 2u);
  EXPECT_EQ(bad(R"({"dialogue_id":"x","locale":"de-DE","true_profile_id":"P","turns":[]})"), 2u);
  EXPECT_EQ(bad(R"({"dialogue_id":"x","locale":"en-GB","true_profile_id":"P","turns":[{"turn":10,"nbest":[]}]})"), 2u);
  EXPECT_EQ(bad(R"({"dialogue_id":"x","locale":"en-GB","true_profile_id":"P","turns":[{"turn":2,"nbest":[]},{"turn":2,"nbest":[]}]})"),
            2u);
  std::string long_list = R"({"dialogue_id":"x","locale":"en-GB","true_profile_id":"P","turns":[{"turn":1,"nbest":[)";
  for (int i = 0; i < 21; ++i) long_list += std::string(i ? "," : "") + "\"h\"";
  EXPECT_EQ(bad(long_list + "]}]}"), 2u);
  EXPECT_EQ(bad(R"({"dialogue_id":"","locale":"en-GB","true_profile_id":"P","turns":[]})"), 2u);
}

TEST(DatasetAdapter, JsonlRowsPerTurn) {
  testing::TempDir dir;
  std::ofstream(dir / "turns.jsonl")
      << R"({"dialogue_id":"a","turn_id":0,"asr_nbest":"[\"a b one\", \"ab one\"]","target_profile_id":"P1","language":"en"})"
      << "\n"
      << R"({"dialogue_id":"a","turn_id":3,"asr_nbest":[{"transcript":"john smith"}],"target_profile_id":"P1","language":"en"})"
      << "\n"
      << R"({"dialogue_id":"b","turn_id":1,"asr_nbest":["00-950"],"target_profile_id":"P2","language":"pl_PL"})" << "\n";
  const auto ds = load_evi_dataset_turns(dir / "turns.jsonl");
  ASSERT_EQ(ds.size(), 2u);
  EXPECT_EQ(ds[0].locale, Locale::kEnGB);
  ASSERT_EQ(ds[0].turns.size(), 2u);
  EXPECT_EQ(ds[0].turns[0].turn_index, 1);
  EXPECT_EQ(ds[0].turns[0].nbest, (std::vector<std::string>{"a b one", "ab one"}));
  EXPECT_EQ(ds[0].turns[1].turn_index, 4);
  EXPECT_EQ(ds[0].turns[1].nbest, std::vector<std::string>{"john smith"});
  EXPECT_EQ(ds[1].locale, Locale::kPlPL);
  EXPECT_EQ(ds[1].turns[0].turn_index, 2);
}

TEST(DatasetAdapter, CsvRows) {
  testing::TempDir dir;
  std::ofstream(dir / "turns.csv") << "dialogue_id,turn_id,asr_nbest,target_profile_id,language\n"
                                   << "x,1,\"[\"\"one, two\"\", \"\"three\"\"]\",P9,fr-FR\n";
  const auto ds = load_evi_dataset_turns(dir / "turns.csv");
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].turns[0].nbest, (std::vector<std::string>{"one, two", "three"}));
  EXPECT_EQ(ds[0].locale, Locale::kFrFR);
}

TEST(DatasetAdapter, Profiles) {
  testing::TempDir dir;
  std::ofstream(dir / "profiles.jsonl")
      << R"({"profile_id":"P1","postcode":"ab1 2cd","name_first":"John","name_last":"Smith","dob":"1980-01-02"})" << "\n"
      << R"({"id":"P2","postcode":"EF3 4GH","first_name":"Mary","last_name":"Jones","date_of_birth":"1970-12-31"})"
      << "\n";
  const KnowledgeBase kb = load_evi_dataset_profiles(dir / "profiles.jsonl", Locale::kEnGB);
  ASSERT_EQ(kb.size(), 2u);
  EXPECT_EQ(kb.at("P1").postcode, "AB12CD");
  EXPECT_EQ(kb.at("P1").name_first, "john");
  EXPECT_EQ(kb.at("P2").dob, (Date{1970, 12, 31}));
}

}  // namespace
}  // namespace evi
