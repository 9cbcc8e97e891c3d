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

#include "evi/transcript.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "evi/text.hpp"

namespace evi {
namespace {

using nlohmann::json;

// Accepts "en", "en_GB", "EN-gb" and similar spellings of the three locales.
std::string dataset_locale(std::string tag) {
  std::string low;
  for (char c : tag) low += c == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (low.rfind("en", 0) == 0) return "en-GB";
  if (low.rfind("pl", 0) == 0) return "pl-PL";
  if (low.rfind("fr", 0) == 0) return "fr-FR";
  return tag;
}

std::vector<std::string> nbest_from_json(const json& j, bool truncate) {
  std::vector<std::string> out;
  const json* list = &j;
  json parsed;
  if (j.is_string()) {
    const std::string& s = j.get_ref<const std::string&>();
    if (!s.empty() && s.front() == '[') {
      parsed = json::parse(s);
      list = &parsed;
    } else {
      out.push_back(s);
      return out;
    }
  }
  if (!list->is_array()) throw json::type_error::create(302, "n-best must be a list", list);
  for (const auto& h : *list) {
    if (h.is_string()) {
      out.push_back(h.get<std::string>());
    } else if (h.is_object()) {
      for (const char* key : {"transcript", "text", "hypothesis"}) {
        if (h.contains(key)) {
          out.push_back(h.at(key).get<std::string>());
          break;
        }
      }
    }
    if (truncate && out.size() == kMaxNbest) break;
  }
  return out;
}

// Minimal RFC 4180 reader: quoted fields, doubled quotes, embedded newlines.
std::vector<std::vector<std::string>> read_csv(std::string_view s) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (quoted) {
      if (c == '"' && i + 1 < s.size() && s[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < s.size() && s[i + 1] == '\n') ++i;
      row.push_back(std::move(field));
      field.clear();
      if (!(row.size() == 1 && row[0].empty())) rows.push_back(std::move(row));
      row.clear();
    } else {
      field += c;
    }
  }
  if (!field.empty() || !row.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

// Rows of a JSON array, JSONL or CSV file as JSON objects.
std::vector<json> read_rows(const std::filesystem::path& path) {
  std::string content;
  try {
    content = read_file(path);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  std::vector<json> rows;
  const auto first = content.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return rows;
  try {
    if (content[first] == '[') {
      for (auto& r : json::parse(content)) rows.push_back(std::move(r));
      return rows;
    }
    if (content[first] == '{') {
      std::istringstream in(content);
      std::string line;
      std::size_t n = 0;
      while (std::getline(in, line)) {
        ++n;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
          rows.push_back(json::parse(line));
        } catch (const json::exception& e) {
          throw ParseError(path.string(), n, e.what());
        }
      }
      return rows;
    }
  } catch (const json::exception& e) {
    throw ParseError(path.string(), 0, e.what());
  }
  const auto table = read_csv(content);
  if (table.empty()) return rows;
  const auto& header = table[0];
  for (std::size_t r = 1; r < table.size(); ++r) {
    json obj = json::object();
    for (std::size_t c = 0; c < header.size() && c < table[r].size(); ++c) obj[header[c]] = table[r][c];
    rows.push_back(std::move(obj));
  }
  return rows;
}

const json* field(const json& row, std::initializer_list<const char*> names) {
  for (const char* n : names) {
    auto it = row.find(n);
    if (it != row.end() && !it->is_null()) return &*it;
  }
  return nullptr;
}

std::string as_string(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  return j.dump();
}

int as_int(const json& j) {
  if (j.is_number_integer()) return j.get<int>();
  return std::stoi(as_string(j));
}

}  // namespace

const Turn* DialogueTranscript::turn(int turn_index) const {
  for (const auto& t : turns) {
    if (t.turn_index == turn_index) return &t;
  }
  return nullptr;
}

void validate_transcript(const DialogueTranscript& t, const std::string& source, std::size_t line) {
  if (t.dialogue_id.empty()) throw ParseError(source, line, "empty dialogue_id");
  int prev = 0;
  for (const auto& turn : t.turns) {
    if (turn.turn_index < 1 || turn.turn_index > kMaxTurns) {
      throw ParseError(source, line, "turn index " + std::to_string(turn.turn_index) + " outside 1..9");
    }
    if (turn.turn_index <= prev) throw ParseError(source, line, "turns out of order or repeated");
    if (turn.nbest.size() > kMaxNbest) throw ParseError(source, line, "n-best list longer than 20");
    prev = turn.turn_index;
  }
}

std::vector<DialogueTranscript> read_transcripts(std::istream& in, const std::string& source) {
  std::vector<DialogueTranscript> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    DialogueTranscript t;
    try {
      const json j = json::parse(line);
      t.dialogue_id = as_string(j.at("dialogue_id"));
      t.locale = parse_locale(j.at("locale").get<std::string>());
      t.true_profile_id = as_string(j.at("true_profile_id"));
      for (const auto& jt : j.at("turns")) {
        Turn turn;
        turn.turn_index = jt.at("turn").get<int>();
        turn.nbest = nbest_from_json(jt.at("nbest"), false);
        if (jt.contains("prompt_variant") && !jt.at("prompt_variant").is_null()) {
          turn.prompt_variant = as_string(jt.at("prompt_variant"));
        }
        t.turns.push_back(std::move(turn));
      }
    } catch (const json::exception& e) {
      throw ParseError(source, n, e.what());
    } catch (const ConfigError& e) {
      throw ParseError(source, n, e.what());
    }
    std::sort(t.turns.begin(), t.turns.end(),
              [](const Turn& a, const Turn& b) { return a.turn_index < b.turn_index; });
    validate_transcript(t, source, n);
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<DialogueTranscript> load_transcripts(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open transcripts " + path.string());
  return read_transcripts(in, path.string());
}

std::string transcript_to_json_line(const DialogueTranscript& t) {
  json j;
  j["dialogue_id"] = t.dialogue_id;
  j["locale"] = std::string(to_string(t.locale));
  j["true_profile_id"] = t.true_profile_id;
  j["turns"] = json::array();
  for (const auto& turn : t.turns) {
    j["turns"].push_back({{"turn", turn.turn_index}, {"nbest", turn.nbest}, {"prompt_variant", turn.prompt_variant}});
  }
  return j.dump();
}

void save_transcripts(const std::vector<DialogueTranscript>& ts, const std::filesystem::path& path) {
  std::string out;
  for (const auto& t : ts) out += transcript_to_json_line(t) + "\n";
  write_file_atomic(path, out);
}

std::vector<DialogueTranscript> load_evi_dataset_turns(const std::filesystem::path& path) {
  struct Row {
    int turn_id;
    std::vector<std::string> nbest;
    std::string prompt;
  };
  struct Acc {
    std::string locale;
    std::string profile;
    std::vector<Row> rows;
  };
  std::map<std::string, Acc> dialogues;
  std::vector<std::string> order;
  bool zero_based = false;
  std::size_t n = 0;
  for (const auto& row : read_rows(path)) {
    ++n;
    try {
      const json* id = field(row, {"dialogue_id"});
      const json* turn = field(row, {"turn_id", "turn"});
      const json* nbest = field(row, {"asr_nbest", "nbest"});
      const json* target = field(row, {"target_profile_id", "true_profile_id", "profile_id"});
      if (!id || !turn || !target) throw ParseError(path.string(), n, "missing dialogue_id, turn_id or target_profile_id");
      const std::string did = as_string(*id);
      auto [it, fresh] = dialogues.try_emplace(did);
      if (fresh) order.push_back(did);
      Acc& acc = it->second;
      if (const json* lang = field(row, {"language", "locale"})) acc.locale = as_string(*lang);
      acc.profile = as_string(*target);
      Row r{as_int(*turn), nbest ? nbest_from_json(*nbest, true) : std::vector<std::string>{}, {}};
      if (r.nbest.empty()) {
        if (const json* one = field(row, {"asr_transcription", "transcription"})) r.nbest.push_back(as_string(*one));
      }
      if (const json* p = field(row, {"prompt_variant", "prompt_id"})) r.prompt = as_string(*p);
      zero_based = zero_based || r.turn_id == 0;
      acc.rows.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw ParseError(path.string(), n, e.what());
    }
  }
  std::vector<DialogueTranscript> out;
  for (const auto& did : order) {
    Acc& acc = dialogues.at(did);
    DialogueTranscript t;
    t.dialogue_id = did;
    try {
      t.locale = parse_locale(dataset_locale(acc.locale));
    } catch (const ConfigError& e) {
      throw ParseError(path.string(), 0, "dialogue " + did + ": " + e.what());
    }
    t.true_profile_id = acc.profile;
    std::sort(acc.rows.begin(), acc.rows.end(), [](const Row& a, const Row& b) { return a.turn_id < b.turn_id; });
    for (auto& r : acc.rows) {
      const int idx = r.turn_id + (zero_based ? 1 : 0);
      if (!t.turns.empty() && t.turns.back().turn_index == idx) continue;
      t.turns.push_back(Turn{idx, std::move(r.nbest), std::move(r.prompt)});
    }
    validate_transcript(t, path.string());
    out.push_back(std::move(t));
  }
  return out;
}

KnowledgeBase load_evi_dataset_profiles(const std::filesystem::path& path, Locale locale) {
  KnowledgeBase kb(locale);
  std::size_t n = 0;
  for (const auto& row : read_rows(path)) {
    ++n;
    const json* id = field(row, {"profile_id", "id"});
    const json* pc = field(row, {"postcode", "post_code"});
    const json* first = field(row, {"name_first", "first_name"});
    const json* last = field(row, {"name_last", "last_name"});
    const json* dob = field(row, {"dob", "date_of_birth"});
    if (const json* lang = field(row, {"language", "locale"})) {
      if (parse_locale(as_string(*lang)) != locale) continue;
    }
    if (!id || !pc || !first || !last || !dob) throw ParseError(path.string(), n, "missing profile field");
    const auto date = Date::from_iso(as_string(*dob).substr(0, 10));
    if (!date) throw ParseError(path.string(), n, "bad date " + as_string(*dob));
    Profile p{as_string(*id), canonical_postcode(as_string(*pc)), text::canonical_name(as_string(*first)),
              text::canonical_name(as_string(*last)), *date};
    if (kb.find(p.profile_id)) throw ParseError(path.string(), n, "duplicate profile_id " + p.profile_id);
    kb.add(std::move(p));
  }
  return kb;
}

}  // namespace evi
