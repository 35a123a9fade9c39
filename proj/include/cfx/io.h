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

// Flat-file formats.
//
//   points file   header "px,py", then one "px,py" row per feature value
//   cost file     m rows of m comma-separated costs, "inf" for unreachable
//   feature table header of column names, then a kinds line with one of
//                 actionable | monotone | immutable per column, then m rows
//   group file    header "group", then one integer group id per feature value
//
// Lines starting with '#' are comments. Numbers are parsed with
// std::from_chars (no locale) and written with 17 significant digits.

#ifndef CFX_IO_H_
#define CFX_IO_H_

#include <filesystem>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cfx/core.h"
#include "cfx/datagen.h"

namespace cfx {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// 17 significant digits; "inf" for infinity.
std::string FormatDouble(double value);
std::string FormatCost(const Cost& cost);

struct PointsData {
  std::vector<double> px;
  std::vector<double> py;
};

// Throws ParseError naming the source and line on malformed input.
PointsData ParsePoints(std::istream& points);
PointsData LoadPoints(const std::filesystem::path& path);

InstanceData ParseInstance(std::istream& points, std::istream& costs,
                           double gamma);
// ParseInstance + Instance::Create.
Instance LoadInstance(const std::filesystem::path& points_path,
                      const std::filesystem::path& cost_path, double gamma);

void WritePoints(const Instance& instance, std::ostream& out);
void WriteCosts(const CostMatrix& cost, std::ostream& out);
void SaveInstance(const Instance& instance,
                  const std::filesystem::path& points_path,
                  const std::filesystem::path& cost_path);

FeatureTable ParseFeatureTable(std::istream& in, double alpha);
FeatureTable LoadFeatureTable(const std::filesystem::path& path, double alpha);

// Distinct group ids, in ascending order, become groups 0..l-1.
std::vector<std::vector<int>> ParseGroups(std::istream& in, int m);
std::vector<std::vector<int>> LoadGroups(const std::filesystem::path& path,
                                         int m);

}  // namespace cfx

#endif  // CFX_IO_H_
