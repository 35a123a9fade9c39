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

// Command-line front end.
//
//   cfx generate  [--m N] [--gamma G] [--seed S] ...    synthetic instance
//   cfx compare   [--config FILE] [overrides...]        utility per regime
//   cfx leakage   [--config FILE] [--pl P ...]          leakage sweep
//   cfx transport [--config FILE] [--bins B]            mass transport
//   cfx matroid   [--config FILE] [--capacities ...]    group diversity
//   cfx check     [--seed S] [--only ID ...]            self-check suite
//
// Results go to <output dir>/<command>.csv. The output directory is taken
// from --output-dir, then $CFX_OUTPUT_DIR, then the config file.
//
// Exit codes: 0 ok, 1 check failure, 2 usage or input error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cfx/acceptance.h"
#include "cfx/datagen.h"
#include "cfx/harness.h"
#include "cfx/io.h"
#include "json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr const char* kOutputDirEnv = "CFX_OUTPUT_DIR";

struct Overrides {
  std::string config_path;
  std::optional<double> gamma;
  std::optional<double> alpha;
  std::optional<int> k;
  std::vector<double> pl;
  std::optional<uint64_t> seed;
  std::optional<int> repetitions;
  std::optional<int> m;
  std::optional<std::string> source;
  std::optional<std::string> fixture;
  std::optional<std::string> points;
  std::optional<std::string> costs;
  std::optional<std::string> table;
  std::optional<std::string> weighting;
  std::optional<std::string> sweep;
  std::vector<int> k_values;
  std::vector<int> m_values;
  std::vector<double> alpha_values;
  std::optional<double> k_fraction;
  std::optional<int> bins;
  std::optional<std::string> groups;
  std::optional<int> group_count;
  std::vector<int> capacities;
  bool timing = false;
  std::optional<std::string> output_dir;
  std::optional<std::string> out;
};

void AddExperimentOptions(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "JSON config file")
      ->check(CLI::ExistingFile);
  cmd->add_option("--gamma", o.gamma, "Decision-maker cost in (0, 1)");
  cmd->add_option("--alpha", o.alpha, "Cost scale for table sources");
  cmd->add_option("--k", o.k, "Number of explanations");
  cmd->add_option("--pl", o.pl, "Leakage probabilities")->delimiter(',');
  cmd->add_option("--seed", o.seed, "Base seed");
  cmd->add_option("--repetitions", o.repetitions, "Repetitions per point");
  cmd->add_option("--m", o.m, "Feature values of synthetic instances");
  cmd->add_option("--source", o.source, "synthetic | files | table | fixture");
  cmd->add_option("--fixture", o.fixture, "Fixture name");
  cmd->add_option("--points", o.points, "Points CSV (px,py)");
  cmd->add_option("--costs", o.costs, "Cost matrix CSV");
  cmd->add_option("--table", o.table, "Feature table CSV");
  cmd->add_option("--weighting", o.weighting,
                  "Percentile weighting: mass | count");
  cmd->add_option("--sweep", o.sweep, "none | k | m | alpha");
  cmd->add_option("--k-values", o.k_values, "Sweep values of k")
      ->delimiter(',');
  cmd->add_option("--m-values", o.m_values, "Sweep values of m")
      ->delimiter(',');
  cmd->add_option("--alpha-values", o.alpha_values, "Sweep values of alpha")
      ->delimiter(',');
  cmd->add_option("--k-fraction", o.k_fraction, "k / m in m sweeps");
  cmd->add_option("--bins", o.bins, "Outcome bins for transport");
  cmd->add_option("--groups", o.groups, "Group CSV for matroid runs");
  cmd->add_option("--group-count", o.group_count, "Groups by index modulo");
  cmd->add_option("--capacities", o.capacities, "Per-group capacities")
      ->delimiter(',');
  cmd->add_flag("--timing", o.timing, "Record runtime_ms");
  cmd->add_option("--output-dir", o.output_dir, "Output directory");
  cmd->add_option("--out", o.out, "Output file, '-' for stdout");
}

template <typename T>
void Apply(const std::optional<T>& value, T& field) {
  if (value) field = *value;
}

template <typename T>
void Apply(const std::vector<T>& value, std::vector<T>& field) {
  if (!value.empty()) field = value;
}

cfx::ExperimentConfig ResolveConfig(const std::string& experiment,
                                    const Overrides& o) {
  nlohmann::json json = nlohmann::json::object();
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    try {
      json = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(o.config_path + ": " + e.what());
    }
  }
  if (o.source) json["source"] = *o.source;
  if (o.weighting) json["weighting"] = *o.weighting;
  cfx::ExperimentConfig config = cfx::ConfigFromJson(json);
  config.experiment = experiment;
  Apply(o.gamma, config.gamma);
  Apply(o.alpha, config.alpha);
  Apply(o.k, config.k);
  Apply(o.pl, config.pl_values);
  Apply(o.seed, config.seed);
  Apply(o.repetitions, config.repetitions);
  Apply(o.m, config.synth.m);
  Apply(o.fixture, config.fixture);
  Apply(o.points, config.points_path);
  Apply(o.costs, config.cost_path);
  Apply(o.table, config.table_path);
  Apply(o.sweep, config.sweep);
  Apply(o.k_values, config.k_values);
  Apply(o.m_values, config.m_values);
  Apply(o.alpha_values, config.alpha_values);
  Apply(o.k_fraction, config.k_fraction);
  Apply(o.bins, config.bins);
  Apply(o.groups, config.groups_path);
  Apply(o.group_count, config.group_count);
  Apply(o.capacities, config.capacities);
  if (o.timing) config.timing = true;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) {
    config.output_dir = env;
  }
  Apply(o.output_dir, config.output_dir);
  cfx::CheckConfig(config);
  return config;
}

void WriteOutput(const std::string& text, const std::string& output_dir,
                 const std::optional<std::string>& out,
                 const std::string& default_name) {
  if (out && *out == "-") {
    std::cout << text;
    return;
  }
  const std::filesystem::path path =
      out ? std::filesystem::path(*out)
          : std::filesystem::path(output_dir) / default_name;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + path.string());
  file << text;
  std::cerr << "wrote " << path.string() << "\n";
}

struct GenerateOptions {
  cfx::SynthConfig synth;
  bool symmetric = false;
  std::optional<std::string> output_dir;
  std::string prefix = "instance";
};

int RunGenerate(GenerateOptions& g) {
  g.synth.symmetric = g.symmetric;
  cfx::CheckSynthConfig(g.synth);
  const cfx::Instance instance = cfx::GenerateSynthetic(g.synth);
  std::string dir = "results";
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) dir = env;
  if (g.output_dir) dir = *g.output_dir;

  nlohmann::json echo = {{"m", g.synth.m},
                         {"gamma", g.synth.gamma},
                         {"weight_mean", g.synth.weight_mean},
                         {"weight_stddev", g.synth.weight_stddev},
                         {"finite_fraction", g.synth.finite_fraction},
                         {"far_cost", g.synth.far_cost},
                         {"symmetric", g.synth.symmetric}};
  std::ostringstream header;
  header << "# cfx " << cfx::kToolVersion << " config=" << echo.dump()
         << " seed=" << g.synth.seed << "\n";
  std::ostringstream points;
  points << header.str();
  cfx::WritePoints(instance, points);
  std::ostringstream costs;
  costs << header.str();
  cfx::WriteCosts(instance.cost(), costs);
  WriteOutput(points.str(), dir, std::nullopt, g.prefix + "_points.csv");
  WriteOutput(costs.str(), dir, std::nullopt, g.prefix + "_costs.csv");
  return kExitOk;
}

int RunCheck(uint64_t seed, const std::vector<int>& only) {
  std::vector<int> ids = only;
  if (ids.empty()) {
    for (int id = 1; id <= cfx::AcceptanceCriterionCount(); ++id) {
      ids.push_back(id);
    }
  }
  int failed = 0;
  for (int id : ids) {
    const cfx::CriterionResult result = cfx::RunCriterion(id, seed);
    std::cout << cfx::FormatCriterion(result) << std::endl;
    if (!result.passed) ++failed;
  }
  std::cout << (failed == 0 ? "ALL PASS" : "FAILED") << " ("
            << ids.size() - failed << "/" << ids.size() << ")" << std::endl;
  return failed == 0 ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app("Counterfactual explanations under strategic best response");
  app.set_version_flag("--version", std::string("cfx ") + cfx::kToolVersion);
  app.require_subcommand(1);

  GenerateOptions gen;
  CLI::App* generate =
      app.add_subcommand("generate", "Write a synthetic instance");
  generate->add_option("--m", gen.synth.m, "Feature values");
  generate->add_option("--gamma", gen.synth.gamma, "Decision-maker cost");
  generate->add_option("--seed", gen.synth.seed, "Seed");
  generate->add_option("--finite-fraction", gen.synth.finite_fraction,
                       "Share of pairs with a U[0,1] cost");
  generate->add_option("--far-cost", gen.synth.far_cost, "Cost of other pairs");
  generate->add_flag("--symmetric", gen.symmetric, "Mirror sampled costs");
  generate->add_option("--output-dir", gen.output_dir, "Output directory");
  generate->add_option("--prefix", gen.prefix, "File name prefix");

  const std::vector<std::string> experiments = {"compare", "leakage",
                                                "transport", "matroid"};
  std::vector<Overrides> overrides(experiments.size());
  std::vector<CLI::App*> commands;
  const std::vector<std::string> descriptions = {
      "Utility of every regime", "Utility under leakage",
      "Mass transport between outcome bins", "Per-group diversity"};
  for (size_t e = 0; e < experiments.size(); ++e) {
    CLI::App* cmd = app.add_subcommand(experiments[e], descriptions[e]);
    AddExperimentOptions(cmd, overrides[e]);
    commands.push_back(cmd);
  }

  uint64_t check_seed = 0;
  std::vector<int> only;
  CLI::App* check = app.add_subcommand("check", "Run the self-check suite");
  check->add_option("--seed", check_seed, "Base seed");
  check->add_option("--only", only, "Criterion ids")
      ->delimiter(',')
      ->check(CLI::Range(1, cfx::AcceptanceCriterionCount()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (generate->parsed()) return RunGenerate(gen);
    if (check->parsed()) return RunCheck(check_seed, only);
    for (size_t e = 0; e < experiments.size(); ++e) {
      if (!commands[e]->parsed()) continue;
      const cfx::ExperimentConfig config =
          ResolveConfig(experiments[e], overrides[e]);
      WriteOutput(cfx::RunExperiment(config), config.output_dir,
                  overrides[e].out, experiments[e] + ".csv");
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "cfx: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
