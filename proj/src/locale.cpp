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

#include "evi/locale.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "evi/text.hpp"

#ifndef EVI_DEFAULT_RESOURCE_DIR
#define EVI_DEFAULT_RESOURCE_DIR "resources"
#endif

namespace evi {
namespace {

using json = nlohmann::ordered_json;

std::size_t word_count(const std::string& key) {
  return static_cast<std::size_t>(std::count(key.begin(), key.end(), ' ')) + 1;
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

void load_numbers(const json& j, NumberTables& out) {
  for (const char* section : {"cardinals", "ordinals"}) {
    if (!j.contains(section)) continue;
    for (auto& [word, value] : j.at(section).items()) {
      const std::string key = lookup_key(word);
      out.words[key] = value.get<int>();
      if (std::string_view(section) == "ordinals") out.ordinal_words.insert(key);
      out.max_words = std::max(out.max_words, word_count(key));
    }
  }
  if (j.contains("multipliers")) {
    for (auto& [word, value] : j.at("multipliers").items()) out.multipliers[lookup_key(word)] = value.get<int>();
  }
  for (const auto& c : get_or<std::vector<std::string>>(j, "connectors", {})) out.connectors.insert(lookup_key(c));
  out.tens_taking_teens = get_or<std::vector<int>>(j, "compose_tens_teens", {});
  if (j.contains("repeaters")) {
    for (auto& [word, value] : j.at("repeaters").items()) out.repeaters[lookup_key(word)] = value.get<int>();
  }
  for (const auto& s : get_or<std::vector<std::string>>(j, "ordinal_suffixes", {})) {
    out.ordinal_suffixes.push_back(text::fold_diacritics(s));
  }
  std::sort(out.ordinal_suffixes.begin(), out.ordinal_suffixes.end(),
            [](const std::string& a, const std::string& b) { return a.size() > b.size(); });
}

void load_spelling(const json& j, SpellingTables& out) {
  for (const auto& c : get_or<std::vector<std::string>>(j, "connectors", {})) {
    out.connectors.push_back(text::split_ws(lookup_key(c)));
  }
  if (j.contains("alphabet")) {
    for (auto& [word, letter] : j.at("alphabet").items()) {
      out.alphabet[lookup_key(word)] = text::upper(letter.get<std::string>());
    }
  }
}

}  // namespace

std::string lookup_key(std::string_view word) {
  std::string s(word);
  std::replace(s.begin(), s.end(), '-', ' ');
  return text::join(text::split_ws(text::fold_diacritics(s)), " ");
}

void NameLexicon::add(std::string_view name, NameRole role) {
  const std::string key = text::canonical_name(name);
  if (key.empty()) return;
  entries_[key] |= role;
  max_tokens_ = std::max(max_tokens_, word_count(key));
}

NameLexicon::Match NameLexicon::longest_match(std::span<const std::string> tokens, std::size_t start) const {
  const std::size_t limit = std::min(max_tokens_, tokens.size() - std::min(start, tokens.size()));
  std::string key;
  Match best;
  for (std::size_t n = 1; n <= limit; ++n) {
    if (n > 1) key += ' ';
    key += tokens[start + n - 1];
    auto it = entries_.find(key);
    if (it != entries_.end()) best = Match{n, it->second};
  }
  return best;
}

std::uint8_t NameLexicon::roles(std::string_view canonical) const {
  auto it = entries_.find(std::string(canonical));
  return it == entries_.end() ? 0 : it->second;
}

std::vector<std::string> read_wordlist(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open wordlist " + file.string());
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string trimmed = text::collapse_ws(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    out.push_back(trimmed);
  }
  return out;
}

LocaleResources LocaleResources::load(const std::filesystem::path& root, Locale locale) {
  LocaleResources r = load_dir(root / "locales" / std::string(to_string(locale)));
  if (r.locale != locale) {
    throw ConfigError("locale file under " + std::string(to_string(locale)) + " declares " +
                      std::string(to_string(r.locale)));
  }
  return r;
}

LocaleResources LocaleResources::load_dir(const std::filesystem::path& dir) {
  const auto path = dir / "locale.json";
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open locale config " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path.string(), 0, e.what());
  }

  LocaleResources r;
  try {
    r.locale = parse_locale(j.at("locale").get<std::string>());
    const json& pc = j.at("postcode");
    r.postcode_pattern = PostcodePattern(pc.at("pattern").get<std::string>());
    r.postcode_formats = pc.at("generation_formats").get<std::vector<std::string>>();
    r.display_split = get_or<int>(pc, "display_split", 0);
    r.display_separator = get_or<std::string>(pc, "display_separator", "");
    load_numbers(j.at("numbers"), r.numbers);
    load_spelling(j.at("spelling"), r.spelling);
    for (auto& [word, m] : j.at("months").items()) {
      const int month = m.get<int>();
      r.months[lookup_key(word)] = month;
      if (month >= 1 && month <= 12 && r.month_words[static_cast<std::size_t>(month - 1)].empty()) {
        r.month_words[static_cast<std::size_t>(month - 1)] = word;
      }
    }
    for (auto& [word, v] : j.at("numbers").at("cardinals").items()) {
      const int d = v.get<int>();
      if (d >= 0 && d <= 9 && r.digit_words[static_cast<std::size_t>(d)].empty()) {
        r.digit_words[static_cast<std::size_t>(d)] = word;
      }
    }
    for (const auto& f : get_or<std::vector<std::string>>(j, "date_fillers", {})) r.date_fillers.insert(lookup_key(f));
    r.two_digit_year_pivot = get_or<int>(j, "two_digit_year_pivot", 25);

    const json& lex = j.at("lexicon");
    auto load_names = [&](const char* key, std::vector<std::string>& names, NameRole role) {
      std::unordered_set<std::string> seen;
      for (const auto& f : lex.at(key).get<std::vector<std::string>>()) {
        for (const auto& name : read_wordlist(dir / f)) {
          std::string canon = text::canonical_name(name);
          r.lexicon.add(canon, role);
          if (seen.insert(canon).second) names.push_back(std::move(canon));
        }
      }
    };
    load_names("first_names", r.first_names, kFirstName);
    load_names("last_names", r.last_names, kLastName);
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  Rng probe(0);
  for (const auto& f : r.postcode_formats) {
    for (int i = 0; i < 16; ++i) {
      const std::string s = sample_postcode(f, probe);
      if (!r.postcode_pattern.matches(s)) {
        throw ConfigError(path.string() + ": generation format '" + f + "' produces '" + s +
                          "' which the pattern '" + r.postcode_pattern.notation() + "' rejects");
      }
    }
  }
  return r;
}

void LocaleResources::add_lexicon_file(const std::filesystem::path& file, NameRole role) {
  for (const auto& name : read_wordlist(file)) lexicon.add(name, role);
}

std::string LocaleResources::display_postcode(std::string_view canonical) const {
  std::string s(canonical);
  if (display_split == 0 || display_separator.empty()) return s;
  const auto n = static_cast<int>(s.size());
  int at = display_split > 0 ? display_split : n + display_split;
  if (at <= 0 || at >= n) return s;
  return s.substr(0, static_cast<std::size_t>(at)) + display_separator + s.substr(static_cast<std::size_t>(at));
}

std::filesystem::path default_resource_root() {
  if (const char* env = std::getenv("EVI_RESOURCE_DIR"); env && *env) return env;
  return EVI_DEFAULT_RESOURCE_DIR;
}

}  // namespace evi
