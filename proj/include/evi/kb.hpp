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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "evi/common.hpp"

namespace evi {

struct Profile {
  std::string profile_id;
  std::string postcode;  // canonical: uppercase, no separators
  std::string name_first;  // canonical: NFC + casefold
  std::string name_last;
  Date dob;

  std::string name_full() const { return name_first + " " + name_last; }

  friend bool operator==(const Profile&, const Profile&) = default;
};

/// Profiles plus an exact-match postcode index. Several profiles may share a
/// postcode. Immutable once built; concurrent readers are fine.
class KnowledgeBase {
 public:
  KnowledgeBase() = default;
  explicit KnowledgeBase(Locale locale) : locale_(locale) {}

  Locale locale() const { return locale_; }
  const std::vector<Profile>& profiles() const { return profiles_; }
  std::size_t size() const { return profiles_.size(); }

  /// Throws ContractError on a duplicate profile_id.
  void add(Profile profile);

  const Profile* find(std::string_view profile_id) const;
  const Profile& at(std::string_view profile_id) const;  // LookupError if absent

  /// Indices (into profiles()) of profiles with this exact postcode.
  const std::vector<std::size_t>& postcode_cohort(std::string_view postcode) const;
  std::size_t distinct_postcodes() const { return postcode_index_.size(); }

  friend bool operator==(const KnowledgeBase& a, const KnowledgeBase& b) {
    return a.locale_ == b.locale_ && a.profiles_ == b.profiles_;
  }

 private:
  Locale locale_ = Locale::kEnGB;
  std::vector<Profile> profiles_;
  std::unordered_map<std::string, std::size_t> by_id_;
  std::unordered_map<std::string, std::vector<std::size_t>> postcode_index_;
};

/// Union of exact postcode hits. Returned in KB order, without duplicates.
std::vector<const Profile*> query_by_postcode(const KnowledgeBase& kb, const std::vector<std::string>& postcodes);

/// As query_by_postcode, with the true profile's postcode always added.
std::vector<const Profile*> oracle_query(const KnowledgeBase& kb, const std::vector<std::string>& postcodes,
                                         std::string_view true_profile_id);

struct GenerationSpec {
  Locale locale = Locale::kEnGB;
  std::size_t n_profiles = 10000;
  std::size_t n_postcodes = 2000;
  std::vector<std::string> postcode_formats;
  std::vector<std::string> first_name_pool;
  std::vector<std::string> last_name_pool;
  Date dob_min{1940, 1, 1};
  Date dob_max{2002, 12, 31};
  std::uint64_t seed = 7;
};

/// Deterministic in the spec. The postcode pool holds exactly n_postcodes
/// distinct values and every pool entry is used at least once.
KnowledgeBase generate_kb(const GenerationSpec& spec);

void save_kb(const KnowledgeBase& kb, const std::filesystem::path& path);
std::string serialize_kb(const KnowledgeBase& kb);
KnowledgeBase load_kb(const std::filesystem::path& path);
KnowledgeBase parse_kb(std::string_view content, const std::string& source = "<kb>");

}  // namespace evi
