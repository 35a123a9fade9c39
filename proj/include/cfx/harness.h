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

// Experiment suites. Each runner returns its CSV table as a string; the
// first line is a provenance comment holding the tool version, the full
// configuration and the base seed.
//
// Seeds are derived per (purpose, sweep value, repetition). Adding sweep
// points or repetitions leaves existing rows unchanged.

#ifndef CFX_HARNESS_H_
#define CFX_HARNESS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "cfx/core.h"
#include "cfx/datagen.h"
#include "json.hpp"

namespace cfx {

inline constexpr const char* kToolVersion = CFX_VERSION;

enum class SourceKind { kSynthetic, kFiles, kTable, kFixture };

struct ExperimentConfig {
  std::string experiment = "compare";

  SourceKind source = SourceKind::kSynthetic;
  // Synthetic source; gamma and seed are taken from the fields below.
  SynthConfig synth;
  // File sources. Table sources read px/py from points_path.
  std::string points_path;
  std::string cost_path;
  std::string table_path;
  std::string fixture;
  CdfWeighting weighting = CdfWeighting::kMass;

  double gamma = 0.3;
  double alpha = 2.0;
  int k = 20;

  // One of "none", "k", "m" (synthetic only, k = k_fraction * m) or "alpha"
  // (table sources only).
  std::string sweep = "none";
  std::vector<int> k_values;
  std::vector<int> m_values;
  double k_fraction = 0.1;
  std::vector<double> alpha_values;

  std::vector<double> pl_values = {0.0, 0.1, 0.2, 0.5, 1.0};
  int repetitions = 20;
  uint64_t seed = 0;
  int bins = 10;

  // Matroid experiment. groups_path assigns a group per feature value;
  // otherwise value i goes to group i % group_count. Empty capacities split
  // k evenly.
  std::string groups_path;
  int group_count = 2;
  std::vector<int> capacities;

  // Record wall-clock runtimes. Off by default.
  bool timing = false;
  std::string output_dir = "results";
};

// Throws std::invalid_argument naming the offending field.
void CheckConfig(const ExperimentConfig& config);

// Unknown keys are rejected.
ExperimentConfig ConfigFromJson(const nlohmann::json& json);
nlohmann::json ConfigToJson(const ExperimentConfig& config);

// Preset matching the synthetic comparison: m = 200, k = 20, gamma = 0.3,
// 20 repetitions.
ExperimentConfig SyntheticPreset(const std::string& experiment);

struct SweepPoint {
  double value = 0.0;
  int m = 0;
  int k = 0;
  double alpha = 0.0;
};
std::vector<SweepPoint> SweepPoints(const ExperimentConfig& config);

// Instance for one sweep point and repetition.
Instance BuildInstance(const ExperimentConfig& config, const SweepPoint& point,
                       int repetition);

inline const std::vector<std::string>& CompareRegimes() {
  static const std::vector<std::string> regimes = {"black_box", "min_cost",
                                                   "diverse", "alg1", "alg2"};
  return regimes;
}

struct CompareRow {
  SweepPoint point;
  int repetition = 0;
  std::string regime;
  double utility = 0.0;
  double runtime_ms = -1.0;  // Negative when timing is off.
};

std::vector<CompareRow> CompareRows(const ExperimentConfig& config);
std::string CompareCsv(const ExperimentConfig& config,
                       const std::vector<CompareRow>& rows);
std::string RunCompare(const ExperimentConfig& config);

struct LeakageRow {
  int k = 0;
  double leak_probability = 0.0;
  int repetition = 0;
  int explanations = 0;
  double utility = 0.0;
};
std::vector<LeakageRow> LeakageRows(const ExperimentConfig& config);
std::string RunLeakage(const ExperimentConfig& config);

// Transport matrices of alg1 and alg2, averaged over repetitions.
std::string RunTransport(const ExperimentConfig& config);

struct MatroidRow {
  int repetition = 0;
  int group = 0;
  double rejected_mass = 0.0;
  int capacity = 0;
  int cardinality_count = 0;
  int matroid_count = 0;
  double cardinality_improvement = 0.0;
  double matroid_improvement = 0.0;
};
std::vector<MatroidRow> MatroidRows(const ExperimentConfig& config);
std::string RunMatroid(const ExperimentConfig& config);

// Dispatches on config.experiment.
std::string RunExperiment(const ExperimentConfig& config);

}  // namespace cfx

#endif  // CFX_HARNESS_H_
