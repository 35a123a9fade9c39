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

#include "cfx/harness.h"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cfx/algorithms.h"
#include "cfx/baselines.h"
#include "cfx/behavior.h"
#include "cfx/fixtures.h"
#include "cfx/io.h"

namespace cfx {
namespace {

using nlohmann::json;

const char* SourceName(SourceKind source) {
  switch (source) {
    case SourceKind::kSynthetic:
      return "synthetic";
    case SourceKind::kFiles:
      return "files";
    case SourceKind::kTable:
      return "table";
    case SourceKind::kFixture:
      return "fixture";
  }
  return "synthetic";
}

SourceKind ParseSource(const std::string& name) {
  if (name == "synthetic") return SourceKind::kSynthetic;
  if (name == "files") return SourceKind::kFiles;
  if (name == "table") return SourceKind::kTable;
  if (name == "fixture") return SourceKind::kFixture;
  throw std::invalid_argument("config: unknown source '" + name + "'");
}

CdfWeighting ParseWeighting(const std::string& name) {
  if (name == "mass") return CdfWeighting::kMass;
  if (name == "count") return CdfWeighting::kCount;
  throw std::invalid_argument("config: unknown weighting '" + name + "'");
}

template <typename T>
void Read(const json& in, const char* key, T& out) {
  if (!in.contains(key)) return;
  try {
    out = in.at(key).get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument(std::string("config: bad value for '") + key +
                                "'");
  }
}

// Shortest round-trip form, for labels.
std::string ShortDouble(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

// Omits output_dir.
std::string Provenance(const ExperimentConfig& config) {
  json settings = ConfigToJson(config);
  settings.erase("output_dir");
  std::ostringstream out;
  out << "# cfx " << kToolVersion << " config=" << settings.dump()
      << " seed=" << config.seed << "\n";
  return out.str();
}

// Instance together with permutation[new] = old for mapping per-row inputs.
CanonicalInstance BuildCanonical(const ExperimentConfig& config,
                                 const SweepPoint& point, int repetition) {
  switch (config.source) {
    case SourceKind::kSynthetic: {
      SynthConfig synth = config.synth;
      synth.m = point.m;
      synth.gamma = config.gamma;
      synth.seed = DeriveSeed(config.seed, "instance", point.m, repetition);
      Instance instance = GenerateSynthetic(synth);
      std::vector<int> identity(instance.m());
      for (int i = 0; i < instance.m(); ++i) identity[i] = i;
      return {std::move(instance), std::move(identity)};
    }
    case SourceKind::kFiles: {
      std::ifstream points(config.points_path);
      if (!points) throw ParseError("cannot open " + config.points_path);
      std::ifstream costs(config.cost_path);
      if (!costs) throw ParseError("cannot open " + config.cost_path);
      InstanceData data = ParseInstance(points, costs, config.gamma);
      return SortCanonical(std::move(data.px), std::move(data.py),
                           std::move(data.cost), data.gamma);
    }
    case SourceKind::kTable: {
      PointsData points = LoadPoints(config.points_path);
      const FeatureTable table =
          LoadFeatureTable(config.table_path, point.alpha);
      if (table.rows.size() != points.px.size()) {
        std::ostringstream msg;
        msg << config.table_path << ": expected " << points.px.size()
            << " rows, got " << table.rows.size();
        throw ParseError(msg.str());
      }
      CostBuildResult built =
          BuildCostMatrix(table, points.px, config.weighting);
      return SortCanonical(std::move(points.px), std::move(points.py),
                           std::move(built.cost), config.gamma);
    }
    case SourceKind::kFixture: {
      Instance instance = FixtureByName(config.fixture);
      std::vector<int> identity(instance.m());
      for (int i = 0; i < instance.m(); ++i) identity[i] = i;
      return {std::move(instance), std::move(identity)};
    }
  }
  throw std::logic_error("unreachable source");
}

double MillisecondsSince(std::chrono::steady_clock::time_point start) {
  const auto elapsed = std::chrono::steady_clock::now() - start;
  return std::chrono::duration<double, std::milli>(elapsed).count();
}

JointSolution RunRandomized(const ExperimentConfig& config,
                            const Instance& instance, const SweepPoint& point,
                            int repetition) {
  RngStream rng(DeriveSeed(config.seed, "randomized", point.value, repetition));
  return RandomizedJoint(instance, point.k, rng);
}

struct GroupLayout {
  std::vector<std::vector<int>> groups;
  std::vector<int> capacities;
};

GroupLayout MatroidGroups(const ExperimentConfig& config,
                          const CanonicalInstance& canonical, int k) {
  const int m = canonical.instance.m();
  GroupLayout layout;
  if (config.source == SourceKind::kFixture && config.fixture == "two-group" &&
      config.groups_path.empty()) {
    GroupFixture fixture = MakeTwoGroupFixture();
    layout.groups = fixture.groups;
    layout.capacities =
        config.capacities.empty() ? fixture.capacities : config.capacities;
  } else {
    std::vector<int> group_of(m);
    int count = config.group_count;
    if (!config.groups_path.empty()) {
      const std::vector<std::vector<int>> original =
          LoadGroups(config.groups_path, m);
      std::vector<int> original_group(m);
      for (size_t g = 0; g < original.size(); ++g) {
        for (int i : original[g]) original_group[i] = static_cast<int>(g);
      }
      for (int i = 0; i < m; ++i) {
        group_of[i] = original_group[canonical.permutation[i]];
      }
      count = static_cast<int>(original.size());
    } else {
      for (int i = 0; i < m; ++i) group_of[i] = i % count;
    }
    layout.groups.assign(count, {});
    for (int i = 0; i < m; ++i) layout.groups[group_of[i]].push_back(i);
    if (config.capacities.empty()) {
      layout.capacities.assign(count, k / count);
      for (int g = 0; g < k % count; ++g) ++layout.capacities[g];
    } else {
      layout.capacities = config.capacities;
    }
  }
  if (layout.capacities.size() != layout.groups.size()) {
    std::ostringstream msg;
    msg << "config: capacities has " << layout.capacities.size()
        << " entries for " << layout.groups.size() << " groups";
    throw std::invalid_argument(msg.str());
  }
  return layout;
}

}  // namespace

void CheckConfig(const ExperimentConfig& config) {
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("config: " + what);
  };
  static const std::set<std::string> experiments = {"compare", "leakage",
                                                    "transport", "matroid"};
  if (!experiments.contains(config.experiment)) {
    fail("unknown experiment '" + config.experiment + "'");
  }
  if (!(config.gamma > 0.0 && config.gamma < 1.0)) {
    fail("gamma must lie in (0, 1)");
  }
  if (!(config.alpha >= 1.0)) fail("alpha must be >= 1");
  if (config.k < 0) fail("k must be >= 0");
  if (config.repetitions < 1) fail("repetitions must be >= 1");
  if (config.bins < 1) fail("bins must be >= 1");
  if (config.group_count < 1) fail("group_count must be >= 1");
  for (int c : config.capacities) {
    if (c < 0) fail("capacities must be >= 0");
  }

  switch (config.source) {
    case SourceKind::kSynthetic: {
      SynthConfig synth = config.synth;
      synth.gamma = config.gamma;
      CheckSynthConfig(synth);
      break;
    }
    case SourceKind::kFiles:
      if (config.points_path.empty() || config.cost_path.empty()) {
        fail("files source needs points_path and cost_path");
      }
      break;
    case SourceKind::kTable:
      if (config.points_path.empty() || config.table_path.empty()) {
        fail("table source needs points_path and table_path");
      }
      break;
    case SourceKind::kFixture: {
      bool known = false;
      for (const std::string& name : FixtureNames()) {
        known = known || name == config.fixture;
      }
      if (!known) fail("unknown fixture '" + config.fixture + "'");
      break;
    }
  }

  if (config.sweep == "k") {
    if (config.k_values.empty()) fail("sweep 'k' needs k_values");
    for (int k : config.k_values) {
      if (k < 0) fail("k_values must be >= 0");
    }
  } else if (config.sweep == "m") {
    if (config.source != SourceKind::kSynthetic) {
      fail("sweep 'm' needs the synthetic source");
    }
    if (config.m_values.empty()) fail("sweep 'm' needs m_values");
    for (int m : config.m_values) {
      if (m < 2) fail("m_values must be >= 2");
    }
    if (!(config.k_fraction >= 0.0 && config.k_fraction <= 1.0)) {
      fail("k_fraction must lie in [0, 1]");
    }
  } else if (config.sweep == "alpha") {
    if (config.source != SourceKind::kTable) {
      fail("sweep 'alpha' needs the table source");
    }
    if (config.alpha_values.empty()) fail("sweep 'alpha' needs alpha_values");
    for (double a : config.alpha_values) {
      if (!(a >= 1.0)) fail("alpha_values must be >= 1");
    }
  } else if (config.sweep != "none") {
    fail("unknown sweep '" + config.sweep + "'");
  }

  if (config.experiment == "leakage") {
    if (config.pl_values.empty()) fail("leakage needs pl_values");
    for (double p : config.pl_values) {
      if (!(p >= 0.0 && p <= 1.0)) fail("pl_values must lie in [0, 1]");
    }
  }
}

ExperimentConfig ConfigFromJson(const json& in) {
  if (!in.is_object()) throw std::invalid_argument("config: not an object");
  static const std::set<std::string> known = {
      "experiment",    "source",          "m",           "weight_mean",
      "weight_stddev", "finite_fraction", "far_cost",    "symmetric",
      "points_path",   "cost_path",       "table_path",  "fixture",
      "weighting",     "gamma",           "alpha",       "k",
      "sweep",         "k_values",        "m_values",    "k_fraction",
      "alpha_values",  "pl_values",       "repetitions", "seed",
      "bins",          "groups_path",     "group_count", "capacities",
      "timing",        "output_dir"};
  for (const auto& [key, value] : in.items()) {
    if (!known.contains(key)) {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  ExperimentConfig config;
  Read(in, "experiment", config.experiment);
  std::string source = SourceName(config.source);
  Read(in, "source", source);
  config.source = ParseSource(source);
  Read(in, "m", config.synth.m);
  Read(in, "weight_mean", config.synth.weight_mean);
  Read(in, "weight_stddev", config.synth.weight_stddev);
  Read(in, "finite_fraction", config.synth.finite_fraction);
  Read(in, "far_cost", config.synth.far_cost);
  Read(in, "symmetric", config.synth.symmetric);
  Read(in, "points_path", config.points_path);
  Read(in, "cost_path", config.cost_path);
  Read(in, "table_path", config.table_path);
  Read(in, "fixture", config.fixture);
  std::string weighting = "mass";
  Read(in, "weighting", weighting);
  config.weighting = ParseWeighting(weighting);
  Read(in, "gamma", config.gamma);
  Read(in, "alpha", config.alpha);
  Read(in, "k", config.k);
  Read(in, "sweep", config.sweep);
  Read(in, "k_values", config.k_values);
  Read(in, "m_values", config.m_values);
  Read(in, "k_fraction", config.k_fraction);
  Read(in, "alpha_values", config.alpha_values);
  Read(in, "pl_values", config.pl_values);
  Read(in, "repetitions", config.repetitions);
  Read(in, "seed", config.seed);
  Read(in, "bins", config.bins);
  Read(in, "groups_path", config.groups_path);
  Read(in, "group_count", config.group_count);
  Read(in, "capacities", config.capacities);
  Read(in, "timing", config.timing);
  Read(in, "output_dir", config.output_dir);
  return config;
}

json ConfigToJson(const ExperimentConfig& config) {
  json out;
  out["experiment"] = config.experiment;
  out["source"] = SourceName(config.source);
  out["m"] = config.synth.m;
  out["weight_mean"] = config.synth.weight_mean;
  out["weight_stddev"] = config.synth.weight_stddev;
  out["finite_fraction"] = config.synth.finite_fraction;
  out["far_cost"] = config.synth.far_cost;
  out["symmetric"] = config.synth.symmetric;
  out["points_path"] = config.points_path;
  out["cost_path"] = config.cost_path;
  out["table_path"] = config.table_path;
  out["fixture"] = config.fixture;
  out["weighting"] = config.weighting == CdfWeighting::kMass ? "mass" : "count";
  out["gamma"] = config.gamma;
  out["alpha"] = config.alpha;
  out["k"] = config.k;
  out["sweep"] = config.sweep;
  out["k_values"] = config.k_values;
  out["m_values"] = config.m_values;
  out["k_fraction"] = config.k_fraction;
  out["alpha_values"] = config.alpha_values;
  out["pl_values"] = config.pl_values;
  out["repetitions"] = config.repetitions;
  out["seed"] = config.seed;
  out["bins"] = config.bins;
  out["groups_path"] = config.groups_path;
  out["group_count"] = config.group_count;
  out["capacities"] = config.capacities;
  out["timing"] = config.timing;
  out["output_dir"] = config.output_dir;
  return out;
}

ExperimentConfig SyntheticPreset(const std::string& experiment) {
  ExperimentConfig config;
  config.experiment = experiment;
  config.source = SourceKind::kSynthetic;
  config.synth.m = 200;
  config.gamma = 0.3;
  config.k = 20;
  config.repetitions = 20;
  return config;
}

std::vector<SweepPoint> SweepPoints(const ExperimentConfig& config) {
  const int base_m =
      config.source == SourceKind::kSynthetic ? config.synth.m : 0;
  std::vector<SweepPoint> points;
  if (config.sweep == "k") {
    for (int k : config.k_values) {
      points.push_back({static_cast<double>(k), base_m, k, config.alpha});
    }
  } else if (config.sweep == "m") {
    for (int m : config.m_values) {
      const int k = static_cast<int>(std::floor(config.k_fraction * m + 0.5));
      points.push_back({static_cast<double>(m), m, k, config.alpha});
    }
  } else if (config.sweep == "alpha") {
    for (double alpha : config.alpha_values) {
      points.push_back({alpha, base_m, config.k, alpha});
    }
  } else {
    points.push_back(
        {static_cast<double>(config.k), base_m, config.k, config.alpha});
  }
  return points;
}

Instance BuildInstance(const ExperimentConfig& config, const SweepPoint& point,
                       int repetition) {
  return BuildCanonical(config, point, repetition).instance;
}

std::vector<CompareRow> CompareRows(const ExperimentConfig& config) {
  CheckConfig(config);
  std::vector<CompareRow> rows;
  for (const SweepPoint& point : SweepPoints(config)) {
    for (int r = 0; r < config.repetitions; ++r) {
      const Instance instance = BuildInstance(config, point, r);
      SweepPoint actual = point;
      actual.m = instance.m();
      const Policy threshold = ThresholdPolicy(instance);
      auto add = [&](const std::string& regime, auto&& evaluate) {
        const auto start = std::chrono::steady_clock::now();
        const double utility = evaluate();
        const double ms = config.timing ? MillisecondsSince(start) : -1.0;
        rows.push_back({actual, r, regime, utility, ms});
      };
      add("black_box", [&] { return BlackBoxUtility(instance); });
      add("min_cost", [&] {
        return Utility(instance, threshold,
                       MinCostExplanations(instance, threshold, point.k));
      });
      add("diverse", [&] {
        return Utility(instance, threshold,
                       DiverseExplanations(instance, threshold, point.k));
      });
      add("alg1", [&] {
        return Utility(instance, threshold,
                       GreedyFixedPolicy(instance, threshold, point.k));
      });
      add("alg2", [&] {
        const JointSolution joint = RunRandomized(config, instance, point, r);
        return Utility(instance, joint.policy, joint.explanations);
      });
    }
  }
  return rows;
}

std::string CompareCsv(const ExperimentConfig& config,
                       const std::vector<CompareRow>& rows) {
  std::ostringstream out;
  out << Provenance(config);
  out << "sweep,sweep_value,m,k,repetition,regime,utility,runtime_ms\n";
  for (const CompareRow& row : rows) {
    out << config.sweep << ',' << FormatDouble(row.point.value) << ','
        << row.point.m << ',' << row.point.k << ',' << row.repetition << ','
        << row.regime << ',' << FormatDouble(row.utility) << ',';
    if (row.runtime_ms >= 0.0) out << FormatDouble(row.runtime_ms);
    out << '\n';
  }
  return out.str();
}

std::string RunCompare(const ExperimentConfig& config) {
  return CompareCsv(config, CompareRows(config));
}

std::vector<LeakageRow> LeakageRows(const ExperimentConfig& config) {
  CheckConfig(config);
  std::vector<LeakageRow> rows;
  for (const SweepPoint& point : SweepPoints(config)) {
    for (int r = 0; r < config.repetitions; ++r) {
      const Instance instance = BuildInstance(config, point, r);
      const JointSolution joint = RunRandomized(config, instance, point, r);
      for (double p : config.pl_values) {
        rows.push_back(
            {point.k, p, r, joint.explanations.size(),
             LeakageUtility(instance, joint.policy, joint.explanations, p)});
      }
    }
  }
  return rows;
}

std::string RunLeakage(const ExperimentConfig& config) {
  const std::vector<LeakageRow> rows = LeakageRows(config);
  std::ostringstream out;
  out << Provenance(config);
  out << "k,p_l,repetition,explanations,utility\n";
  for (const LeakageRow& row : rows) {
    out << row.k << ',' << FormatDouble(row.leak_probability) << ','
        << row.repetition << ',' << row.explanations << ','
        << FormatDouble(row.utility) << '\n';
  }
  return out.str();
}

std::string RunTransport(const ExperimentConfig& config) {
  CheckConfig(config);
  const int bins = config.bins;
  std::ostringstream out;
  out << Provenance(config);
  out << "# edges=";
  for (int b = 0; b <= bins; ++b) {
    if (b > 0) out << ',';
    out << ShortDouble(static_cast<double>(b) / bins);
  }
  out << '\n';
  out << "regime,sweep_value,from_bin,from_lo,from_hi";
  for (int b = 0; b < bins; ++b) out << ",to_" << b;
  out << '\n';

  for (const SweepPoint& point : SweepPoints(config)) {
    std::vector<double> alg1(static_cast<size_t>(bins) * bins, 0.0);
    std::vector<double> alg2(alg1.size(), 0.0);
    for (int r = 0; r < config.repetitions; ++r) {
      const Instance instance = BuildInstance(config, point, r);
      const Policy threshold = ThresholdPolicy(instance);
      const TransportMatrix first = ComputeTransportMatrix(
          instance, threshold, GreedyFixedPolicy(instance, threshold, point.k),
          bins);
      const JointSolution joint = RunRandomized(config, instance, point, r);
      const TransportMatrix second = ComputeTransportMatrix(
          instance, joint.policy, joint.explanations, bins);
      for (size_t c = 0; c < alg1.size(); ++c) {
        alg1[c] += first.mass[c];
        alg2[c] += second.mass[c];
      }
    }
    auto emit = [&](const char* regime, const std::vector<double>& sum) {
      for (int from = 0; from < bins; ++from) {
        out << regime << ',' << FormatDouble(point.value) << ',' << from << ','
            << ShortDouble(static_cast<double>(from) / bins) << ','
            << ShortDouble(static_cast<double>(from + 1) / bins);
        for (int to = 0; to < bins; ++to) {
          out << ','
              << FormatDouble(sum[static_cast<size_t>(from) * bins + to] /
                              config.repetitions);
        }
        out << '\n';
      }
    };
    emit("alg1", alg1);
    emit("alg2", alg2);
  }
  return out.str();
}

std::vector<MatroidRow> MatroidRows(const ExperimentConfig& config) {
  CheckConfig(config);
  std::vector<MatroidRow> rows;
  for (const SweepPoint& point : SweepPoints(config)) {
    for (int r = 0; r < config.repetitions; ++r) {
      const CanonicalInstance canonical = BuildCanonical(config, point, r);
      const Instance& instance = canonical.instance;
      const GroupLayout layout = MatroidGroups(config, canonical, point.k);
      const PartitionMatroid matroid(instance.m(), layout.groups,
                                     layout.capacities);
      int total = 0;
      for (int c : layout.capacities) total += c;
      const Policy threshold = ThresholdPolicy(instance);
      const ExplanationSet cardinality =
          GreedyFixedPolicy(instance, threshold, total);
      const ExplanationSet diverse =
          GreedyMatroid(instance, threshold, matroid).explanations;
      const std::vector<double> card_improvement =
          GroupImprovement(instance, threshold, cardinality, layout.groups);
      const std::vector<double> matroid_improvement =
          GroupImprovement(instance, threshold, diverse, layout.groups);
      for (int g = 0; g < matroid.group_count(); ++g) {
        MatroidRow row;
        row.repetition = r;
        row.group = g;
        row.capacity = layout.capacities[g];
        for (int i : layout.groups[g]) {
          if (!threshold.accepts(i)) row.rejected_mass += instance.px(i);
        }
        for (int a : cardinality) {
          row.cardinality_count += matroid.group_of(a) == g;
        }
        for (int a : diverse) row.matroid_count += matroid.group_of(a) == g;
        row.cardinality_improvement = card_improvement[g];
        row.matroid_improvement = matroid_improvement[g];
        rows.push_back(row);
      }
    }
  }
  return rows;
}

std::string RunMatroid(const ExperimentConfig& config) {
  const std::vector<MatroidRow> rows = MatroidRows(config);
  std::ostringstream out;
  out << Provenance(config);
  out << "repetition,group,rejected_mass,capacity,cardinality_count,"
         "matroid_count,cardinality_improvement,matroid_improvement\n";
  for (const MatroidRow& row : rows) {
    out << row.repetition << ',' << row.group << ','
        << FormatDouble(row.rejected_mass) << ',' << row.capacity << ','
        << row.cardinality_count << ',' << row.matroid_count << ','
        << FormatDouble(row.cardinality_improvement) << ','
        << FormatDouble(row.matroid_improvement) << '\n';
  }
  return out.str();
}

std::string RunExperiment(const ExperimentConfig& config) {
  if (config.experiment == "compare") return RunCompare(config);
  if (config.experiment == "leakage") return RunLeakage(config);
  if (config.experiment == "transport") return RunTransport(config);
  if (config.experiment == "matroid") return RunMatroid(config);
  throw std::invalid_argument("config: unknown experiment '" +
                              config.experiment + "'");
}

}  // namespace cfx
