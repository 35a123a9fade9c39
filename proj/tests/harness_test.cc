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

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "cfx/io.h"
#include "gtest/gtest.h"

namespace cfx {
namespace {

constexpr double kTol = 1e-12;

ExperimentConfig SmallConfig(const std::string& experiment) {
  ExperimentConfig config;
  config.experiment = experiment;
  config.synth.m = 30;
  config.k = 3;
  config.repetitions = 3;
  config.seed = 11;
  return config;
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

class TempDir {
 public:
  explicit TempDir(const std::string& name)
      : path_(std::filesystem::temp_directory_path() / name) {
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::filesystem::path Write(const std::string& name,
                              const std::string& text) const {
    std::ofstream(path_ / name) << text;
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

TEST(ConfigTest, JsonRoundTrip) {
  ExperimentConfig config = SmallConfig("leakage");
  config.sweep = "k";
  config.k_values = {0, 2, 5};
  config.pl_values = {0.0, 0.25};
  config.synth.symmetric = true;
  config.weighting = CdfWeighting::kCount;
  config.capacities = {1, 2};
  const nlohmann::json json = ConfigToJson(config);
  EXPECT_EQ(ConfigToJson(ConfigFromJson(json)), json);
  const ExperimentConfig back = ConfigFromJson(json);
  EXPECT_EQ(back.k_values, config.k_values);
  EXPECT_TRUE(back.synth.symmetric);
  EXPECT_EQ(back.weighting, CdfWeighting::kCount);
}

TEST(ConfigTest, PartialJsonKeepsDefaults) {
  const ExperimentConfig config =
      ConfigFromJson(nlohmann::json::parse(R"({"gamma": 0.4, "k": 5})"));
  EXPECT_EQ(config.gamma, 0.4);
  EXPECT_EQ(config.k, 5);
  EXPECT_EQ(config.alpha, 2.0);
  EXPECT_EQ(config.repetitions, 20);
}

TEST(ConfigTest, RejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(ConfigFromJson(nlohmann::json::parse(R"({"gama": 0.4})")),
               std::invalid_argument);
  EXPECT_THROW(ConfigFromJson(nlohmann::json::parse(R"({"k": "five"})")),
               std::invalid_argument);
  EXPECT_THROW(ConfigFromJson(nlohmann::json::parse(R"({"source": "web"})")),
               std::invalid_argument);
  EXPECT_THROW(ConfigFromJson(nlohmann::json::parse("[1]")),
               std::invalid_argument);
}

TEST(ConfigTest, CheckConfigErrors) {
  const auto expect_bad = [](auto mutate) {
    ExperimentConfig config = SmallConfig("compare");
    mutate(config);
    EXPECT_THROW(CheckConfig(config), std::invalid_argument);
  };
  EXPECT_NO_THROW(CheckConfig(SmallConfig("compare")));
  expect_bad([](ExperimentConfig& c) { c.gamma = 0.0; });
  expect_bad([](ExperimentConfig& c) { c.gamma = 1.0; });
  expect_bad([](ExperimentConfig& c) { c.alpha = 0.5; });
  expect_bad([](ExperimentConfig& c) { c.k = -1; });
  expect_bad([](ExperimentConfig& c) { c.repetitions = 0; });
  expect_bad([](ExperimentConfig& c) { c.experiment = "plot"; });
  expect_bad([](ExperimentConfig& c) { c.sweep = "k"; });
  expect_bad([](ExperimentConfig& c) {
    c.sweep = "alpha";
    c.alpha_values = {2};
  });
  expect_bad([](ExperimentConfig& c) { c.sweep = "gamma"; });
  expect_bad([](ExperimentConfig& c) { c.source = SourceKind::kFiles; });
  expect_bad([](ExperimentConfig& c) {
    c.source = SourceKind::kFixture;
    c.fixture = "missing";
  });
  expect_bad([](ExperimentConfig& c) {
    c.experiment = "leakage";
    c.pl_values = {1.5};
  });
}

TEST(SweepTest, Points) {
  ExperimentConfig config = SmallConfig("compare");
  config.sweep = "m";
  config.m_values = {20, 45};
  config.k_fraction = 0.1;
  const std::vector<SweepPoint> points = SweepPoints(config);
  ASSERT_EQ(points.size(), 2u);
  EXPECT_EQ(points[0].k, 2);
  EXPECT_EQ(points[1].k, 5);
  EXPECT_EQ(points[1].m, 45);
  EXPECT_EQ(BuildInstance(config, points[1], 0).m(), 45);
}

TEST(CompareTest, ProvenanceAndByteIdenticalReruns) {
  const ExperimentConfig config = SmallConfig("compare");
  const std::string first = RunCompare(config);
  EXPECT_EQ(first, RunCompare(config));
  const std::vector<std::string> lines = Lines(first);
  ASSERT_EQ(lines.size(), 2u + 5u * 3u);
  EXPECT_EQ(lines[0].rfind("# cfx ", 0), 0u);
  EXPECT_NE(lines[0].find("seed=11"), std::string::npos);
  EXPECT_EQ(lines[1],
            "sweep,sweep_value,m,k,repetition,regime,utility,runtime_ms");
  EXPECT_EQ(lines[2].back(), ',');
}

TEST(CompareTest, SeedChangesOutput) {
  ExperimentConfig config = SmallConfig("compare");
  const std::vector<CompareRow> a = CompareRows(config);
  config.seed = 12;
  const std::vector<CompareRow> b = CompareRows(config);
  EXPECT_NE(a[0].utility, b[0].utility);
}

TEST(CompareTest, ZeroBudgetMatchesBlackBox) {
  ExperimentConfig config = SmallConfig("compare");
  config.k = 0;
  const std::vector<CompareRow> rows = CompareRows(config);
  std::map<int, double> black_box;
  for (const CompareRow& row : rows) {
    if (row.regime == "black_box") black_box[row.repetition] = row.utility;
  }
  for (const CompareRow& row : rows) {
    EXPECT_NEAR(row.utility, black_box.at(row.repetition), kTol) << row.regime;
  }
}

TEST(CompareTest, ExplanationsNeverHurtOnAverage) {
  ExperimentConfig config = SmallConfig("compare");
  config.synth.m = 60;
  config.k = 6;
  std::map<std::string, double> mean;
  for (const CompareRow& row : CompareRows(config)) {
    mean[row.regime] += row.utility / config.repetitions;
  }
  for (const char* regime : {"min_cost", "diverse", "alg1", "alg2"}) {
    EXPECT_GE(mean[regime], mean["black_box"] - kTol) << regime;
  }
  EXPECT_GE(mean["alg1"], mean["min_cost"] - kTol);
}

TEST(CompareTest, TimingFillsRuntime) {
  ExperimentConfig config = SmallConfig("compare");
  config.timing = true;
  for (const CompareRow& row : CompareRows(config)) {
    EXPECT_GE(row.runtime_ms, 0.0);
  }
  const std::vector<std::string> lines = Lines(RunCompare(config));
  EXPECT_NE(lines[2].back(), ',');
}

TEST(CompareTest, FixtureSource) {
  ExperimentConfig config = SmallConfig("compare");
  config.source = SourceKind::kFixture;
  config.fixture = "nonmonotone";
  config.k = 1;
  config.repetitions = 1;
  std::map<std::string, double> value;
  for (const CompareRow& row : CompareRows(config)) {
    value[row.regime] = row.utility;
  }
  EXPECT_NEAR(value["black_box"], 0.44, kTol);
  // The threshold policy accepts everyone.
  EXPECT_NEAR(value["alg1"], 0.44, kTol);
  EXPECT_NEAR(value["alg2"], 0.9, kTol);
}

TEST(LeakageTest, ZeroLeakMatchesCompare) {
  ExperimentConfig config = SmallConfig("leakage");
  config.sweep = "k";
  config.k_values = {0, 2, 4};
  ExperimentConfig compare = config;
  compare.experiment = "compare";
  std::map<std::pair<int, int>, double> alg2;
  for (const CompareRow& row : CompareRows(compare)) {
    if (row.regime == "alg2") alg2[{row.point.k, row.repetition}] = row.utility;
  }
  int checked = 0;
  for (const LeakageRow& row : LeakageRows(config)) {
    if (row.leak_probability != 0.0) continue;
    EXPECT_EQ(row.utility, alg2.at({row.k, row.repetition}));
    ++checked;
  }
  EXPECT_EQ(checked, 9);
}

TEST(LeakageTest, RowsPerRepetition) {
  ExperimentConfig config = SmallConfig("leakage");
  const std::vector<LeakageRow> rows = LeakageRows(config);
  ASSERT_EQ(rows.size(), config.pl_values.size() * config.repetitions);
  for (size_t start = 0; start < rows.size();
       start += config.pl_values.size()) {
    const LeakageRow& base = rows[start];
    EXPECT_LE(base.explanations, config.k);
    for (size_t p = 1; p < config.pl_values.size(); ++p) {
      const LeakageRow& row = rows[start + p];
      EXPECT_EQ(row.explanations, base.explanations);
      // A single explanation leaves nothing to leak.
      if (base.explanations <= 1) {
        EXPECT_NEAR(row.utility, base.utility, kTol);
      }
    }
  }
  const std::vector<std::string> lines = Lines(RunLeakage(config));
  EXPECT_EQ(lines[1], "k,p_l,repetition,explanations,utility");
}

TEST(TransportTest, HeaderAndMovedMassBounds) {
  ExperimentConfig config = SmallConfig("transport");
  config.bins = 4;
  const std::vector<std::string> lines = Lines(RunTransport(config));
  EXPECT_EQ(lines[1], "# edges=0,0.25,0.5,0.75,1");
  EXPECT_EQ(lines[2],
            "regime,sweep_value,from_bin,from_lo,from_hi,to_0,to_1,"
            "to_2,to_3");
  ASSERT_EQ(lines.size(), 3u + 2u * 4u);
  for (const char* regime : {"alg1", "alg2"}) {
    double total = 0.0;
    for (size_t l = 3; l < lines.size(); ++l) {
      if (lines[l].rfind(regime, 0) != 0) continue;
      std::istringstream row(lines[l]);
      std::string field;
      for (int f = 0; std::getline(row, field, ','); ++f) {
        if (f < 5) continue;
        EXPECT_GE(std::stod(field), 0.0);
        total += std::stod(field);
      }
    }
    EXPECT_GT(total, 0.0) << regime;
    EXPECT_LE(total, 1.0 + kTol) << regime;
  }
}

TEST(MatroidTest, SingleGroupMatchesCardinality) {
  ExperimentConfig config = SmallConfig("matroid");
  config.group_count = 1;
  for (const MatroidRow& row : MatroidRows(config)) {
    EXPECT_EQ(row.matroid_count, row.cardinality_count);
    EXPECT_NEAR(row.matroid_improvement, row.cardinality_improvement, kTol);
  }
}

TEST(MatroidTest, CountsRespectCapacities) {
  ExperimentConfig config = SmallConfig("matroid");
  config.group_count = 3;
  config.k = 7;
  const std::vector<MatroidRow> rows = MatroidRows(config);
  ASSERT_EQ(rows.size(), 9u);
  EXPECT_EQ(rows[0].capacity, 3);
  EXPECT_EQ(rows[1].capacity, 2);
  for (const MatroidRow& row : rows) {
    EXPECT_LE(row.matroid_count, row.capacity);
  }
  config.capacities = {1, 2};
  EXPECT_THROW(MatroidRows(config), std::invalid_argument);
}

TEST(MatroidTest, TwoGroupFixtureSplitsExplanations) {
  ExperimentConfig config = SmallConfig("matroid");
  config.source = SourceKind::kFixture;
  config.fixture = "two-group";
  config.repetitions = 1;
  const std::vector<MatroidRow> rows = MatroidRows(config);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1].cardinality_count, 0);
  EXPECT_EQ(rows[1].cardinality_improvement, 0.0);
  EXPECT_EQ(rows[1].matroid_count, 2);
  EXPECT_GT(rows[1].matroid_improvement, 0.0);
}

TEST(FileSourceTest, FilesAreCanonicallySorted) {
  TempDir dir("cfx_harness_files");
  ExperimentConfig config = SmallConfig("compare");
  config.source = SourceKind::kFiles;
  config.repetitions = 1;
  config.k = 1;
  config.points_path = dir.Write("p.csv", "px,py\n0.8,0.2\n0.1,1.0\n0.1,0.5\n");
  config.cost_path = dir.Write("c.csv", "0,0.6,0.1\n1,0,1\n1,1,0\n");
  const Instance inst = BuildInstance(config, SweepPoints(config)[0], 0);
  EXPECT_EQ(inst.py(0), 1.0);
  EXPECT_EQ(inst.px(2), 0.8);
  EXPECT_EQ(inst.cost(2, 0).value(), 0.6);
  EXPECT_EQ(RunCompare(config), RunCompare(config));
  config.cost_path = "/nonexistent/cfx/none.csv";
  EXPECT_THROW(RunCompare(config), ParseError);
}

TEST(TableSourceTest, AlphaSweepScalesCosts) {
  TempDir dir("cfx_harness_table");
  ExperimentConfig config = SmallConfig("compare");
  config.source = SourceKind::kTable;
  config.repetitions = 1;
  config.k = 1;
  config.sweep = "alpha";
  config.alpha_values = {1.0, 3.0};
  config.points_path =
      dir.Write("p.csv", "px,py\n0.25,0.9\n0.25,0.6\n0.5,0.1\n");
  config.table_path = dir.Write(
      "t.csv", "income,region\nactionable,immutable\n3,a\n2,a\n1,a\n");
  const std::vector<SweepPoint> points = SweepPoints(config);
  const Instance low = BuildInstance(config, points[0], 0);
  const Instance high = BuildInstance(config, points[1], 0);
  EXPECT_NEAR(low.cost(2, 0).value(), 0.5, kTol);
  EXPECT_NEAR(high.cost(2, 0).value(), 1.5, kTol);
  const std::vector<CompareRow> rows = CompareRows(config);
  ASSERT_EQ(rows.size(), 10u);
  EXPECT_EQ(rows[0].point.value, 1.0);
  EXPECT_EQ(rows[5].point.value, 3.0);
  config.table_path =
      dir.Write("t.csv", "income,region\nactionable,immutable\n3,a\n2,a\n");
  EXPECT_THROW(CompareRows(config), ParseError);
}

TEST(DispatchTest, RunExperiment) {
  const ExperimentConfig config = SmallConfig("matroid");
  EXPECT_EQ(RunExperiment(config), RunMatroid(config));
}

}  // namespace
}  // namespace cfx
