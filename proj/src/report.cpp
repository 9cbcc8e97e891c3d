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

#include "evi/report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "evi/common.hpp"
#include "evi/experiment.hpp"

namespace evi {

using nlohmann::json;

namespace {

std::string pct(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", 100 * x);
  return buf;
}

std::string fixed2(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string short_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

const std::vector<std::string> kLocaleOrder = {"en-GB", "pl-PL", "fr-FR"};

std::vector<std::string> locales_in(const std::vector<const json*>& rs) {
  std::vector<std::string> out;
  for (const auto& l : kLocaleOrder) {
    for (const json* r : rs) {
      if (r->at("config").at("locale") == l) {
        out.push_back(l);
        break;
      }
    }
  }
  return out;
}

// Rows keyed by label, locales as column groups.
Table side_by_side(const std::string& title, const std::vector<const json*>& rs,
                   const std::vector<std::string>& metrics,
                   std::vector<std::string> (*cells)(const json& report)) {
  Table t;
  t.title = title;
  const auto locales = locales_in(rs);
  t.header.push_back("model");
  for (const auto& l : locales) {
    for (const auto& m : metrics) t.header.push_back(l + " " + m);
  }
  std::vector<std::string> labels;
  std::map<std::string, std::map<std::string, const json*>> grid;
  for (const json* r : rs) {
    const std::string label = row_label(r->at("config"));
    if (!grid.count(label)) labels.push_back(label);
    grid[label][r->at("config").at("locale").get<std::string>()] = r;
  }
  for (const auto& label : labels) {
    std::vector<std::string> row{label};
    for (const auto& l : locales) {
      auto it = grid[label].find(l);
      if (it == grid[label].end()) {
        for (std::size_t k = 0; k < metrics.size(); ++k) row.push_back("-");
      } else {
        for (auto& c : cells(it->second->at("report"))) row.push_back(std::move(c));
      }
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::vector<std::string> verify_cells(const json& r) {
  std::string frr = pct(r.at("frr_at_far").get<double>());
  if (r.at("resolution_limited").get<bool>()) frr += "*";
  return {pct(r.at("eer").get<double>()), frr,
          fixed2(r.at("L").get<double>()) + " (" + fixed2(r.at("L_early").get<double>()) + ")"};
}

std::vector<std::string> identify_cells(const json& r) {
  return {pct(r.at("ir_at_1").get<double>()), fixed2(r.at("L").get<double>())};
}

}  // namespace

json load_results(const std::filesystem::path& path) {
  std::string content;
  try {
    content = read_file(path);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  json j;
  try {
    j = json::parse(content);
  } catch (const json::exception& e) {
    throw ParseError(path.string(), 0, e.what());
  }
  if (!j.is_object() || j.value("schema", "") != kResultsSchema) {
    throw DataError(path.string() + ": not an evi-results document");
  }
  if (j.value("version", 0) != kResultsVersion) {
    throw DataError(path.string() + ": results version " + j.at("version").dump() + " is not supported (expected " +
                    std::to_string(kResultsVersion) + ")");
  }
  for (const char* key : {"config", "report", "dialogues"}) {
    if (!j.contains(key)) throw DataError(path.string() + ": missing '" + key + "'");
  }
  return j;
}

void save_results(const json& results, const std::filesystem::path& path) {
  write_file_atomic(path, results.dump(1) + "\n");
}

std::string Table::render() const {
  std::vector<std::size_t> width(header.size(), 0);
  auto measure = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) {
      // Display width in code points, good enough for the labels used here.
      std::size_t n = 0;
      for (unsigned char ch : row[c]) n += (ch & 0xC0) != 0x80;
      width[c] = std::max(width[c], n);
    }
  };
  measure(header);
  for (const auto& r : rows) measure(r);
  std::ostringstream out;
  if (!title.empty()) out << title << "\n";
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::size_t n = 0;
      for (unsigned char ch : row[c]) n += (ch & 0xC0) != 0x80;
      if (c) out << "  ";
      out << row[c];
      if (c + 1 < row.size()) out << std::string(width[c] - n, ' ');
    }
    out << "\n";
  };
  emit(header);
  std::size_t total = 0;
  for (auto w : width) total += w + 2;
  out << std::string(total > 2 ? total - 2 : 0, '-') << "\n";
  for (const auto& r : rows) emit(r);
  return out.str();
}

std::string Table::tsv() const {
  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "\t" : "") << row[c];
    out << "\n";
  };
  emit(header);
  for (const auto& r : rows) emit(r);
  return out.str();
}

std::string row_label(const json& c) {
  const std::string task = c.at("task");
  std::string label = c.at("nlu").get<std::string>();
  if (task == "e") return label + " " + c.value("turns", "multi");
  const std::string model = c.at("model");
  if (task == "v") return label + " " + model;

  const std::string id_mode = c.value("id_mode", "scored");
  if (id_mode == "none") {
    label += " none";
  } else if (id_mode == "oracle") {
    label += " oracle";
  } else {
    label += " " + model + "(a=" + short_num(c.value("alpha", 1.0)) + ")";
    const std::string ops = c.value("operators", "");
    if (ops.rfind("infinity-one", 0) != 0) label += "[" + ops + "]";
  }
  if (c.value("kb_mode", "normal") == "oracle") label += " +kb-oracle";
  return label;
}

std::vector<Table> build_tables(const std::vector<json>& results) {
  std::vector<const json*> enrol, verify, identify;
  for (const auto& r : results) {
    const std::string task = r.at("config").at("task");
    (task == "e" ? enrol : task == "v" ? verify : identify).push_back(&r);
  }
  std::vector<Table> tables;
  for (const auto& locale : locales_in(enrol)) {
    Table t;
    t.title = "Enrolment (" + locale + "): P / R / F1 per item, L";
    t.header = {"model"};
    for (const char* item : {"postcode", "name", "dob", "profile"}) {
      for (const char* m : {"P", "R", "F1"}) t.header.push_back(std::string(item) + " " + m);
    }
    t.header.push_back("L");
    for (const json* r : enrol) {
      if (r->at("config").at("locale") != locale) continue;
      std::vector<std::string> row{row_label(r->at("config"))};
      const json& rep = r->at("report");
      for (const char* item : {"postcode", "name", "dob", "profile"}) {
        for (const char* m : {"P", "R", "F1"}) row.push_back(pct(rep.at(item).at(m).get<double>()));
      }
      row.push_back(fixed2(rep.at("L").get<double>()));
      t.rows.push_back(std::move(row));
    }
    tables.push_back(std::move(t));
  }
  if (!verify.empty()) {
    tables.push_back(side_by_side("Verification: EER%, FRR% at the FAR target (* = fewer impostors than 1/target), "
                                  "L (with early termination)",
                                  verify, {"EER%", "FRR%", "L"}, verify_cells));
  }
  if (!identify.empty()) {
    tables.push_back(side_by_side("Identification: IR@1%, L", identify, {"IR@1%", "L"}, identify_cells));
  }
  return tables;
}

std::string det_tsv(const json& result) {
  const json& rep = result.at("report");
  if (!rep.contains("det")) throw DataError("result has no DET curve (not a verification run)");
  std::ostringstream out;
  out.precision(12);
  out << "theta\tfar\tfrr\n";
  for (const auto& p : rep.at("det")) {
    out << p.at(0).get<double>() << '\t' << p.at(1).get<double>() << '\t' << p.at(2).get<double>() << '\n';
  }
  return out.str();
}

}  // namespace evi
