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

#include "evi/kb.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_set>

#include "evi/postcode.hpp"
#include "evi/rng.hpp"
#include "evi/text.hpp"

namespace evi {

namespace {

constexpr std::string_view kMagic = "#evi-kb";
constexpr int kFormatVersion = 1;

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

std::string profile_id_for(std::size_t i, std::size_t n) {
  const std::size_t width = std::max<std::size_t>(5, std::to_string(n).size());
  std::string digits = std::to_string(i + 1);
  return "P" + std::string(width - digits.size(), '0') + digits;
}

}  // namespace

void KnowledgeBase::add(Profile profile) {
  if (by_id_.count(profile.profile_id)) {
    throw ContractError("duplicate profile_id " + profile.profile_id);
  }
  const std::size_t idx = profiles_.size();
  by_id_.emplace(profile.profile_id, idx);
  postcode_index_[profile.postcode].push_back(idx);
  profiles_.push_back(std::move(profile));
}

const Profile* KnowledgeBase::find(std::string_view profile_id) const {
  auto it = by_id_.find(std::string(profile_id));
  return it == by_id_.end() ? nullptr : &profiles_[it->second];
}

const Profile& KnowledgeBase::at(std::string_view profile_id) const {
  const Profile* p = find(profile_id);
  if (!p) throw LookupError("unknown profile_id " + std::string(profile_id));
  return *p;
}

const std::vector<std::size_t>& KnowledgeBase::postcode_cohort(std::string_view postcode) const {
  static const std::vector<std::size_t> kEmpty;
  auto it = postcode_index_.find(std::string(postcode));
  return it == postcode_index_.end() ? kEmpty : it->second;
}

std::vector<const Profile*> query_by_postcode(const KnowledgeBase& kb, const std::vector<std::string>& postcodes) {
  std::vector<std::size_t> hits;
  for (const auto& pc : postcodes) {
    const auto& cohort = kb.postcode_cohort(pc);
    hits.insert(hits.end(), cohort.begin(), cohort.end());
  }
  std::sort(hits.begin(), hits.end());
  hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
  std::vector<const Profile*> out;
  out.reserve(hits.size());
  for (auto i : hits) out.push_back(&kb.profiles()[i]);
  return out;
}

std::vector<const Profile*> oracle_query(const KnowledgeBase& kb, const std::vector<std::string>& postcodes,
                                         std::string_view true_profile_id) {
  std::vector<std::string> with_truth = postcodes;
  with_truth.push_back(kb.at(true_profile_id).postcode);
  return query_by_postcode(kb, with_truth);
}

KnowledgeBase generate_kb(const GenerationSpec& spec) {
  if (spec.first_name_pool.empty() || spec.last_name_pool.empty()) {
    throw ConfigError("name pools must be non-empty");
  }
  if (spec.postcode_formats.empty()) throw ConfigError("no postcode generation formats");
  if (spec.n_postcodes == 0 && spec.n_profiles > 0) throw ConfigError("n_postcodes must be positive");
  if (spec.n_postcodes > spec.n_profiles) {
    throw ConfigError("n_postcodes (" + std::to_string(spec.n_postcodes) + ") exceeds n_profiles (" +
                      std::to_string(spec.n_profiles) + ")");
  }
  if (!spec.dob_min.valid() || !spec.dob_max.valid() || !(spec.dob_min < spec.dob_max)) {
    throw ConfigError("invalid dob range " + spec.dob_min.iso() + ".." + spec.dob_max.iso());
  }
  double capacity = 0;
  for (const auto& f : spec.postcode_formats) capacity += postcode_format_capacity(f);
  if (static_cast<double>(spec.n_postcodes) > capacity) {
    throw ConfigError("n_postcodes exceeds the number of distinct postcodes the formats can produce");
  }

  Rng rng(spec.seed);

  // Postcode pool: distinct values, each format chosen uniformly per draw.
  std::vector<std::string> pool;
  std::unordered_set<std::string> seen;
  while (pool.size() < spec.n_postcodes) {
    const auto& format = spec.postcode_formats[rng.below(spec.postcode_formats.size())];
    std::string pc = sample_postcode(format, rng);
    if (seen.insert(pc).second) pool.push_back(std::move(pc));
  }
  std::vector<std::size_t> assignment(spec.n_profiles);
  for (std::size_t i = 0; i < spec.n_profiles; ++i) {
    assignment[i] = i < pool.size() ? i : rng.below(pool.size());
  }
  rng.shuffle(assignment);

  std::vector<std::string> firsts, lasts;
  for (const auto& n : spec.first_name_pool) firsts.push_back(text::canonical_name(n));
  for (const auto& n : spec.last_name_pool) lasts.push_back(text::canonical_name(n));

  const std::int64_t day0 = spec.dob_min.to_days();
  const auto n_days = static_cast<std::uint64_t>(spec.dob_max.to_days() - day0 + 1);

  KnowledgeBase kb(spec.locale);
  std::set<std::tuple<std::string, std::string, std::int64_t>> tuples;
  for (std::size_t i = 0; i < spec.n_profiles; ++i) {
    Profile p;
    p.profile_id = profile_id_for(i, spec.n_profiles);
    p.postcode = pool[assignment[i]];
    for (int attempt = 0;; ++attempt) {
      if (attempt > 1000) throw ConfigError("cannot draw a unique profile; pools too small");
      p.name_first = firsts[rng.below(firsts.size())];
      p.name_last = lasts[rng.below(lasts.size())];
      const std::int64_t day = day0 + static_cast<std::int64_t>(rng.below(n_days));
      p.dob = Date::from_days(day);
      if (tuples.emplace(p.postcode, p.name_full(), day).second) break;
    }
    kb.add(std::move(p));
  }
  return kb;
}

std::string serialize_kb(const KnowledgeBase& kb) {
  std::ostringstream out;
  out << kMagic << '\t' << kFormatVersion << '\t' << to_string(kb.locale()) << '\n';
  for (const auto& p : kb.profiles()) {
    out << p.profile_id << '\t' << p.postcode << '\t' << p.name_first << '\t' << p.name_last << '\t'
        << p.dob.iso() << '\n';
  }
  return out.str();
}

void save_kb(const KnowledgeBase& kb, const std::filesystem::path& path) {
  write_file_atomic(path, serialize_kb(kb));
}

KnowledgeBase parse_kb(std::string_view content, const std::string& source) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  auto next_line = [&](std::string_view& line) {
    if (pos >= content.size()) return false;
    auto nl = content.find('\n', pos);
    if (nl == std::string_view::npos) nl = content.size();
    line = content.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = nl + 1;
    ++line_no;
    return true;
  };

  std::string_view line;
  if (!next_line(line)) throw ParseError(source, 0, "empty file (missing header)");
  const auto header = split_tabs(line);
  if (header.size() != 3 || header[0] != kMagic) throw ParseError(source, 1, "bad header");
  if (header[1] != std::to_string(kFormatVersion)) {
    throw ParseError(source, 1, "unsupported format version " + std::string(header[1]));
  }
  Locale locale;
  try {
    locale = parse_locale(header[2]);
  } catch (const ConfigError& e) {
    throw ParseError(source, 1, e.what());
  }

  KnowledgeBase kb(locale);
  while (next_line(line)) {
    if (line.empty()) continue;
    const auto f = split_tabs(line);
    if (f.size() != 5) throw ParseError(source, line_no, "expected 5 tab-separated fields");
    if (f[0].empty()) throw ParseError(source, line_no, "empty profile_id");
    auto dob = Date::from_iso(f[4]);
    if (!dob) throw ParseError(source, line_no, "bad date '" + std::string(f[4]) + "'");
    Profile p{std::string(f[0]), canonical_postcode(f[1]), text::canonical_name(f[2]),
              text::canonical_name(f[3]), *dob};
    if (p.postcode.empty()) throw ParseError(source, line_no, "empty postcode");
    if (kb.find(p.profile_id)) {
      throw ParseError(source, line_no, "duplicate profile_id " + p.profile_id);
    }
    kb.add(std::move(p));
  }
  return kb;
}

KnowledgeBase load_kb(const std::filesystem::path& path) {
  std::string content;
  try {
    content = read_file(path);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return parse_kb(content, path.string());
}

}  // namespace evi
