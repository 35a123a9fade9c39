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

#ifndef CFX_DATAGEN_H_
#define CFX_DATAGEN_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cfx/core.h"

namespace cfx {

struct SynthConfig {
  int m = 200;
  double gamma = 0.3;
  // Population weights ~ N(mean, stddev) truncated below at zero.
  double weight_mean = 0.5;
  double weight_stddev = 0.1;
  // Probability that an off-diagonal pair gets a U[0,1] cost.
  double finite_fraction = 0.5;
  // Cost of every other off-diagonal pair.
  double far_cost = 2.0;
  // Sample unordered pairs and mirror them instead of ordered pairs.
  bool symmetric = false;
  uint64_t seed = 0;
};

// Throws std::invalid_argument if m < 2 or finite_fraction is outside [0,1].
void CheckSynthConfig(const SynthConfig& config);

// Random instance: px from normalized truncated-normal weights, py ~ U[0,1]
// (then sorted), costs ~ U[0,1] for a finite_fraction of pairs and far_cost
// otherwise. Fully determined by the seed.
Instance GenerateSynthetic(const SynthConfig& config);

enum class ColumnKind {
  kActionable,
  // Actionable, but its percentile may never decrease.
  kMonotone,
  // Non-actionable; moving between different values is impossible.
  kImmutable,
};

enum class CdfWeighting {
  // Each row weighs its population mass.
  kMass,
  // Each row weighs 1/m.
  kCount,
};

struct FeatureTable {
  std::vector<std::string> column_names;
  std::vector<ColumnKind> column_kinds;
  // rows[r][c]; actionable columns hold decimal numbers.
  std::vector<std::vector<std::string>> rows;
  double alpha = 1.0;
};

// Throws std::invalid_argument on ragged rows, alpha < 1, or non-numeric
// actionable entries.
void CheckFeatureTable(const FeatureTable& table);

// Right-continuous weighted empirical CDF evaluated at every row's value:
// out[r] = total weight of rows with value <= values[r], normalized to 1.
std::vector<double> EmpiricalCdf(std::span<const double> values,
                                 std::span<const double> weights);

struct CostBuildResult {
  CostMatrix cost;
  std::vector<std::string> warnings;
};

// cost(i, j) = alpha * max over actionable columns of |Q(x_j) - Q(x_i)| when
// every immutable column agrees, infinite otherwise; also infinite when a
// monotone column's percentile would decrease. With no actionable columns the
// maximum is taken as 0 and a warning is recorded.
CostBuildResult BuildCostMatrix(const FeatureTable& table,
                                std::span<const double> px,
                                CdfWeighting weighting = CdfWeighting::kMass);

}  // namespace cfx

#endif  // CFX_DATAGEN_H_
