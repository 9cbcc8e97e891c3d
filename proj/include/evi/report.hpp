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
#include <json.hpp>
#include <string>
#include <vector>

namespace evi {

/// Reads a results document and checks its schema tag and version
/// (DataError on mismatch).
nlohmann::json load_results(const std::filesystem::path& path);
void save_results(const nlohmann::json& results, const std::filesystem::path& path);

struct Table {
  std::string title;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column-aligned text.
  std::string render() const;
  /// Tab-separated, header first.
  std::string tsv() const;
};

/// Merges result documents into one table per task (and per locale for
/// enrolment), rows keyed by model configuration, locales side by side.
std::vector<Table> build_tables(const std::vector<nlohmann::json>& results);

/// Short row label for a result's configuration, e.g. "seeking fuzzy(a=0.5)".
std::string row_label(const nlohmann::json& config);

/// theta, FAR, FRR per line, header first. DataError if the result has no curve.
std::string det_tsv(const nlohmann::json& result);

}  // namespace evi
