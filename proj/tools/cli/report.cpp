// Copyright 2026 The multiequi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli/report.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include "cli/specs.hpp"

namespace multiequi::cli {
namespace {

std::string scalar(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + scalar(v[i]);
    return out;
  }
  return v.dump();
}

bool is_table(const Json& v) {
  return v.is_array() && !v.empty() &&
         std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_object(); });
}

void flatten(const Json& obj, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& rows,
             std::vector<std::pair<std::string, const Json*>>& tables) {
  for (const auto& [key, value] : obj.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      flatten(value, name, rows, tables);
    } else if (is_table(value)) {
      tables.emplace_back(name, &value);
    } else {
      rows.emplace_back(name, scalar(value));
    }
  }
}

void print_table(std::ostream& os, const std::string& name, const Json& rows) {
  std::vector<std::string> columns;
  for (const auto& row : rows) {
    for (const auto& [key, value] : row.items()) {
      if (std::find(columns.begin(), columns.end(), key) == columns.end()) columns.push_back(key);
    }
  }
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width(columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) width[c] = columns[c].size();
  for (const auto& row : rows) {
    auto& line = cells.emplace_back();
    for (std::size_t c = 0; c < columns.size(); ++c) {
      line.push_back(row.contains(columns[c]) ? scalar(row[columns[c]]) : "-");
      width[c] = std::max(width[c], line.back().size());
    }
  }
  auto emit = [&](const std::vector<std::string>& line) {
    std::string text = "  ";
    for (std::size_t c = 0; c < line.size(); ++c) {
      text += (c ? "  " : "") + line[c];
      if (c + 1 < line.size()) text += std::string(width[c] - line[c].size(), ' ');
    }
    os << text << '\n';
  };
  os << '\n' << name << ":\n";
  emit(columns);
  for (const auto& line : cells) emit(line);
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "text") return Format::text;
  if (name == "json") return Format::json;
  throw UsageError("unknown output format '" + std::string(name) + "' (text or json)");
}

std::string render_text(const Json& report) {
  std::vector<std::pair<std::string, std::string>> rows;
  std::vector<std::pair<std::string, const Json*>> tables;
  flatten(report, "", rows, tables);
  std::size_t key_width = 0;
  for (const auto& [k, v] : rows) key_width = std::max(key_width, k.size());
  std::ostringstream os;
  for (const auto& [k, v] : rows) {
    os << k << std::string(key_width - k.size() + 2, ' ') << v << '\n';
  }
  for (const auto& [name, table] : tables) print_table(os, name, *table);
  return os.str();
}

std::string render(const Json& report, Format format) {
  return format == Format::json ? report.dump(2) + "\n" : render_text(report);
}

}  // namespace multiequi::cli
