// Copyright 2026 The Authors.
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

#include "cfx/io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace cfx {
namespace {

struct Line {
  int number = 0;  // 1-based.
  std::vector<std::string> fields;
};

std::vector<std::string> SplitFields(const std::string& text) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    const size_t comma = text.find(',', start);
    std::string field = text.substr(start, comma - start);
    const auto first = field.find_first_not_of(" \t");
    const auto last = field.find_last_not_of(" \t");
    fields.push_back(first == std::string::npos
                         ? std::string()
                         : field.substr(first, last - first + 1));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

// Non-empty, non-comment lines with trailing CR removed.
std::vector<Line> ReadLines(std::istream& in) {
  std::vector<Line> lines;
  std::string text;
  int number = 0;
  while (std::getline(in, text)) {
    ++number;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.find_first_not_of(" \t") == std::string::npos) continue;
    if (text.front() == '#') continue;
    lines.push_back({number, SplitFields(text)});
  }
  return lines;
}

[[noreturn]] void Fail(const std::string& source, int line,
                       const std::string& what) {
  std::ostringstream msg;
  msg << source << ":" << line << ": " << what;
  throw ParseError(msg.str());
}

double ParseDouble(const std::string& source, int line,
                   const std::string& text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    Fail(source, line, "not a finite decimal number: '" + text + "'");
  }
  return value;
}

void ExpectFields(const std::string& source, const Line& line, size_t count) {
  if (line.fields.size() != count) {
    std::ostringstream msg;
    msg << "expected " << count << " fields, got " << line.fields.size();
    Fail(source, line.number, msg.str());
  }
}

PointsData ParsePointsNamed(std::istream& points,
                            const std::string& points_name) {
  PointsData data;
  const std::vector<Line> point_lines = ReadLines(points);
  if (point_lines.empty()) Fail(points_name, 1, "missing header 'px,py'");
  const Line& header = point_lines.front();
  if (header.fields != std::vector<std::string>{"px", "py"}) {
    Fail(points_name, header.number, "expected header 'px,py'");
  }
  for (size_t r = 1; r < point_lines.size(); ++r) {
    const Line& line = point_lines[r];
    ExpectFields(points_name, line, 2);
    data.px.push_back(ParseDouble(points_name, line.number, line.fields[0]));
    data.py.push_back(ParseDouble(points_name, line.number, line.fields[1]));
  }
  if (data.px.empty()) Fail(points_name, header.number, "no feature values");
  return data;
}

InstanceData ParseInstanceNamed(std::istream& points, std::istream& costs,
                                double gamma, const std::string& points_name,
                                const std::string& cost_name) {
  InstanceData data;
  data.gamma = gamma;
  PointsData parsed = ParsePointsNamed(points, points_name);
  data.px = std::move(parsed.px);
  data.py = std::move(parsed.py);
  const size_t m = data.px.size();

  const std::vector<Line> cost_lines = ReadLines(costs);
  if (cost_lines.size() != m) {
    std::ostringstream msg;
    msg << "expected " << m << " rows, got " << cost_lines.size();
    const int where = cost_lines.empty() ? 1 : cost_lines.back().number;
    Fail(cost_name, where, msg.str());
  }
  std::vector<std::vector<Cost>> rows(m);
  for (size_t r = 0; r < m; ++r) {
    const Line& line = cost_lines[r];
    ExpectFields(cost_name, line, m);
    for (const std::string& field : line.fields) {
      if (field == "inf") {
        rows[r].push_back(Cost::Infinite());
      } else {
        rows[r].push_back(Cost(ParseDouble(cost_name, line.number, field)));
      }
    }
  }
  data.cost = CostMatrix(rows);
  return data;
}

std::ifstream OpenInput(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return in;
}

std::ofstream OpenOutput(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

std::string FormatDouble(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                 std::chars_format::general, 17);
  return std::string(buffer, ptr);
}

std::string FormatCost(const Cost& cost) {
  return cost.is_infinite() ? "inf" : FormatDouble(cost.value());
}

PointsData ParsePoints(std::istream& points) {
  return ParsePointsNamed(points, "points");
}

PointsData LoadPoints(const std::filesystem::path& path) {
  std::ifstream in = OpenInput(path);
  return ParsePointsNamed(in, path.string());
}

InstanceData ParseInstance(std::istream& points, std::istream& costs,
                           double gamma) {
  return ParseInstanceNamed(points, costs, gamma, "points", "cost");
}

Instance LoadInstance(const std::filesystem::path& points_path,
                      const std::filesystem::path& cost_path, double gamma) {
  std::ifstream points = OpenInput(points_path);
  std::ifstream costs = OpenInput(cost_path);
  return Instance::Create(ParseInstanceNamed(
      points, costs, gamma, points_path.string(), cost_path.string()));
}

void WritePoints(const Instance& instance, std::ostream& out) {
  out << "px,py\n";
  for (int i = 0; i < instance.m(); ++i) {
    out << FormatDouble(instance.px(i)) << ',' << FormatDouble(instance.py(i))
        << '\n';
  }
}

void WriteCosts(const CostMatrix& cost, std::ostream& out) {
  for (int i = 0; i < cost.size(); ++i) {
    for (int j = 0; j < cost.size(); ++j) {
      if (j > 0) out << ',';
      out << FormatCost(cost(i, j));
    }
    out << '\n';
  }
}

void SaveInstance(const Instance& instance,
                  const std::filesystem::path& points_path,
                  const std::filesystem::path& cost_path) {
  std::ofstream points = OpenOutput(points_path);
  WritePoints(instance, points);
  std::ofstream costs = OpenOutput(cost_path);
  WriteCosts(instance.cost(), costs);
}

FeatureTable ParseFeatureTable(std::istream& in, double alpha) {
  const std::string source = "feature table";
  const std::vector<Line> lines = ReadLines(in);
  if (lines.size() < 2) Fail(source, 1, "missing header or kinds line");
  FeatureTable table;
  table.alpha = alpha;
  table.column_names = lines[0].fields;
  ExpectFields(source, lines[1], table.column_names.size());
  for (const std::string& kind : lines[1].fields) {
    if (kind == "actionable") {
      table.column_kinds.push_back(ColumnKind::kActionable);
    } else if (kind == "monotone") {
      table.column_kinds.push_back(ColumnKind::kMonotone);
    } else if (kind == "immutable") {
      table.column_kinds.push_back(ColumnKind::kImmutable);
    } else {
      Fail(source, lines[1].number, "unknown column kind '" + kind + "'");
    }
  }
  for (size_t r = 2; r < lines.size(); ++r) {
    ExpectFields(source, lines[r], table.column_names.size());
    for (size_t c = 0; c < table.column_kinds.size(); ++c) {
      if (table.column_kinds[c] != ColumnKind::kImmutable) {
        ParseDouble(source, lines[r].number, lines[r].fields[c]);
      }
    }
    table.rows.push_back(lines[r].fields);
  }
  return table;
}

FeatureTable LoadFeatureTable(const std::filesystem::path& path, double alpha) {
  std::ifstream in = OpenInput(path);
  return ParseFeatureTable(in, alpha);
}

std::vector<std::vector<int>> ParseGroups(std::istream& in, int m) {
  const std::string source = "groups";
  const std::vector<Line> lines = ReadLines(in);
  if (lines.empty() || lines[0].fields != std::vector<std::string>{"group"}) {
    Fail(source, lines.empty() ? 1 : lines[0].number,
         "expected header 'group'");
  }
  if (static_cast<int>(lines.size()) - 1 != m) {
    std::ostringstream msg;
    msg << "expected " << m << " rows, got " << lines.size() - 1;
    Fail(source, lines.back().number, msg.str());
  }
  std::map<long, std::vector<int>> by_id;
  for (int i = 0; i < m; ++i) {
    const Line& line = lines[i + 1];
    ExpectFields(source, line, 1);
    long id = 0;
    const std::string& text = line.fields[0];
    auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), id);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      Fail(source, line.number, "not an integer group id: '" + text + "'");
    }
    by_id[id].push_back(i);
  }
  std::vector<std::vector<int>> groups;
  for (auto& [id, members] : by_id) groups.push_back(std::move(members));
  return groups;
}

std::vector<std::vector<int>> LoadGroups(const std::filesystem::path& path,
                                         int m) {
  std::ifstream in = OpenInput(path);
  return ParseGroups(in, m);
}

}  // namespace cfx
