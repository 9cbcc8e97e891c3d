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

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "evi/common.hpp"
#include "evi/kb.hpp"
#include "evi/nlu.hpp"

namespace evi {

struct DialogueTranscript {
  std::string dialogue_id;
  Locale locale = Locale::kEnGB;
  std::string true_profile_id;
  std::vector<Turn> turns;  // ascending turn_index, each index at most once

  /// nullptr when the turn was not recorded.
  const Turn* turn(int turn_index) const;
};

/// Checks turn ordering, index range and n-best length; throws ParseError.
void validate_transcript(const DialogueTranscript& t, const std::string& source = "<transcript>",
                         std::size_t line = 0);

/// JSONL, one dialogue per line:
///   {"dialogue_id": "...", "locale": "en-GB", "true_profile_id": "P00042",
///    "turns": [{"turn": 1, "nbest": ["..."], "prompt_variant": "Q1"}, ...]}
/// n-best lists longer than 20 are truncated.
std::vector<DialogueTranscript> read_transcripts(std::istream& in, const std::string& source);
std::vector<DialogueTranscript> load_transcripts(const std::filesystem::path& path);
std::string transcript_to_json_line(const DialogueTranscript& t);
void save_transcripts(const std::vector<DialogueTranscript>& ts, const std::filesystem::path& path);

/// Published dataset layout: one row per (dialogue, turn) with columns
/// language, dialogue_id, turn_id, target_profile_id and asr_nbest (list or
/// JSON-encoded string). Accepts JSONL, a JSON array, or CSV with a header.
/// Turn ids are 1-based unless a 0 is seen, in which case all are shifted.
std::vector<DialogueTranscript> load_evi_dataset_turns(const std::filesystem::path& path);

/// Profiles from the published dataset: JSON/JSONL/CSV rows with
/// profile_id (or id), postcode, name_first/first_name, name_last/last_name,
/// and dob/date_of_birth.
KnowledgeBase load_evi_dataset_profiles(const std::filesystem::path& path, Locale locale);

}  // namespace evi
