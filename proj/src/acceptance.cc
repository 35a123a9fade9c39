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

#include "cfx/acceptance.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>

#include "cfx/algorithms.h"
#include "cfx/baselines.h"
#include "cfx/behavior.h"
#include "cfx/fixtures.h"
#include "cfx/harness.h"
#include "cfx/io.h"

namespace cfx {
namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

// Cap on redraws for samplers that need a candidate outside B.
constexpr int kMaxAttempts = 50 * kPropertyDraws;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

RngStream DrawStream(uint64_t seed, int criterion, int draw) {
  return RngStream(DeriveSeed(seed, "acceptance", criterion, draw));
}

int DrawSize(RngStream& rng, int max_m) {
  return 2 + static_cast<int>(rng.UniformIndex(max_m - 1));
}

int DrawK(RngStream& rng) {
  return 1 + static_cast<int>(rng.UniformIndex(kMaxK));
}

bool Near(double a, double b) { return std::abs(a - b) <= kExactTolerance; }

std::string Values(std::span<const double> values) {
  std::ostringstream out;
  out << '[';
  for (size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out << ',';
    out << values[i];
  }
  out << ']';
  return out.str();
}

Outcome NonMonotoneFixtureCheck() {
  const Instance instance = NonMonotoneFixture();
  const ExplanationSet one({0});
  const ExplanationSet two({0, 1});
  const double h1 = JointObjective(instance, one);
  const double h2 = JointObjective(instance, two);
  const Policy p1 = OptimalPolicyFor(instance, one);
  const Policy p2 = OptimalPolicyFor(instance, two);
  Outcome out;
  out.passed = Near(h1, 0.9) && Near(h2, 0.5) &&
               std::ranges::equal(p1.values(), std::vector<double>{1, 0, 0}) &&
               std::ranges::equal(p2.values(), std::vector<double>{1, 1, 0});
  std::ostringstream detail;
  detail << std::setprecision(17) << "h({0})=" << h1 << " h({0,1})=" << h2
         << " pi*=" << Values(p1.values()) << "," << Values(p2.values());
  out.detail = detail.str();
  return out;
}

Outcome SetCoverFixtureCheck() {
  const SetCoverFixture fixture = MakeSetCoverFixture(0.3);
  const ExplanationSet greedy =
      GreedyFixedPolicy(fixture.instance, fixture.policy, 1);
  const ExplanationSet diverse =
      DiverseExplanations(fixture.instance, fixture.policy, 1);
  const double ug = Utility(fixture.instance, fixture.policy, greedy);
  const double ud = Utility(fixture.instance, fixture.policy, diverse);
  const ExplanationSet s1({fixture.s1});
  Outcome out;
  out.passed = greedy == s1 && diverse == s1 && Near(ug, 0.7) && Near(ud, 0.7);
  std::ostringstream detail;
  detail << std::setprecision(17) << "greedy=" << greedy.size()
         << " item(s) u=" << ug << " diverse u=" << ud
         << " both_s1=" << (greedy == s1 && diverse == s1);
  out.detail = detail.str();
  return out;
}

Outcome PolicyOracleCheck(uint64_t seed) {
  const auto start = Clock::now();
  int violations = 0;
  double worst = 0.0;
  for (int draw = 0; draw < kPolicyOracleInstances; ++draw) {
    RngStream rng = DrawStream(seed, 3, draw);
    const Instance instance =
        RandomSmallInstance(rng, DrawSize(rng, kPolicyOracleMaxM));
    const ExplanationSet a(
        RandomSubset(rng, GroundSetViable(instance).Sorted(), 0.5));
    const double expol = Utility(instance, OptimalPolicyFor(instance, a), a);
    const double best = ExhaustiveBestPolicy(instance, a).utility;
    if (expol < best - kExactTolerance) ++violations;
    worst = std::max(worst, best - expol);
  }
  const double seconds = SecondsSince(start);
  Outcome out;
  out.passed = violations == 0 && seconds < kPolicyOracleSeconds;
  std::ostringstream detail;
  detail << kPolicyOracleInstances << " instances, violations=" << violations
         << " max_shortfall=" << worst << " runtime=" << std::fixed
         << std::setprecision(2) << seconds << "s";
  out.detail = detail.str();
  return out;
}

struct NestedDraw {
  ExplanationSet a;
  ExplanationSet b;
  int x = -1;
};

// A subset of B subset of ground, x in ground minus B; x = -1 if B is the
// whole ground set.
NestedDraw DrawNested(RngStream& rng, const std::vector<int>& ground) {
  NestedDraw draw;
  std::vector<int> b = RandomSubset(rng, ground, 0.5);
  std::vector<int> rest;
  for (int g : ground) {
    if (!std::ranges::binary_search(b, g)) rest.push_back(g);
  }
  if (!rest.empty()) draw.x = rest[rng.UniformIndex(rest.size())];
  draw.a = ExplanationSet(RandomSubset(rng, b, 0.5));
  draw.b = ExplanationSet(std::move(b));
  return draw;
}

Outcome FixedPolicyPropertyCheck(uint64_t seed) {
  int negative = 0;
  int non_monotone = 0;
  int non_submodular = 0;
  int tested = 0;
  int draw = 0;
  for (; tested < kPropertyDraws && draw < kMaxAttempts; ++draw) {
    RngStream rng = DrawStream(seed, 4, draw);
    const Instance instance = RandomSmallInstance(rng, DrawSize(rng, 10));
    const Policy policy =
        RandomMonotonePolicy(rng, instance, rng.Bernoulli(0.5));
    const NestedDraw d =
        DrawNested(rng, GroundSetAccepted(instance, policy).Sorted());
    const double fa = Utility(instance, policy, d.a);
    const double fb = Utility(instance, policy, d.b);
    if (d.x < 0) continue;
    ++tested;
    if (fa < -kExactTolerance || fb < -kExactTolerance) ++negative;
    if (fa > fb + kExactTolerance) ++non_monotone;
    const double gain_a = Utility(instance, policy, d.a.With(d.x)) - fa;
    const double gain_b = Utility(instance, policy, d.b.With(d.x)) - fb;
    if (gain_a < gain_b - kExactTolerance) ++non_submodular;
  }
  Outcome out;
  out.passed = tested == kPropertyDraws && negative == 0 && non_monotone == 0 &&
               non_submodular == 0;
  std::ostringstream detail;
  detail << tested << " draws (" << draw << " attempts), negative=" << negative
         << " non_monotone=" << non_monotone
         << " non_submodular=" << non_submodular;
  out.detail = detail.str();
  return out;
}

Outcome JointSubmodularityCheck(uint64_t seed) {
  int violations = 0;
  int tested = 0;
  int decreases = 0;
  for (int draw = 0; tested < kPropertyDraws && draw < kMaxAttempts; ++draw) {
    RngStream rng = DrawStream(seed, 5, draw);
    const Instance instance = RandomSmallInstance(rng, DrawSize(rng, 10));
    const NestedDraw d = DrawNested(rng, GroundSetViable(instance).Sorted());
    if (d.x < 0) continue;
    ++tested;
    const double ha = JointObjective(instance, d.a);
    const double hb = JointObjective(instance, d.b);
    const double gain_a = JointObjective(instance, d.a.With(d.x)) - ha;
    const double gain_b = JointObjective(instance, d.b.With(d.x)) - hb;
    if (gain_a < gain_b - kExactTolerance) ++violations;
    if (gain_b < -kExactTolerance) ++decreases;
  }
  Outcome out;
  out.passed = tested == kPropertyDraws && violations == 0;
  std::ostringstream detail;
  detail << tested << " nested draws, violations=" << violations
         << " negative_marginals=" << decreases;
  out.detail = detail.str();
  return out;
}

Outcome GreedyGuaranteeCheck(uint64_t seed) {
  const double bound = 1.0 - 1.0 / std::exp(1.0);
  int violations = 0;
  double ratio_sum = 0.0;
  double min_ratio = 1.0;
  for (int draw = 0; draw < kGreedyInstances; ++draw) {
    RngStream rng = DrawStream(seed, 6, draw);
    const Instance instance =
        RandomSmallInstance(rng, DrawSize(rng, kGreedyMaxM));
    const Policy policy =
        RandomMonotonePolicy(rng, instance, rng.Bernoulli(0.5));
    const int k = DrawK(rng);
    const double greedy =
        Utility(instance, policy, GreedyFixedPolicy(instance, policy, k));
    const double best =
        Utility(instance, policy, BruteForceFixed(instance, policy, k));
    if (greedy < bound * best - kExactTolerance) ++violations;
    const double ratio = best > 0.0 ? greedy / best : 1.0;
    ratio_sum += ratio;
    min_ratio = std::min(min_ratio, ratio);
  }
  Outcome out;
  out.passed = violations == 0;
  std::ostringstream detail;
  detail << std::setprecision(6) << kGreedyInstances
         << " instances, violations=" << violations
         << " mean_ratio=" << ratio_sum / kGreedyInstances
         << " min_ratio=" << min_ratio;
  out.detail = detail.str();
  return out;
}

Outcome RandomizedGuaranteeCheck(uint64_t seed) {
  const auto start = Clock::now();
  const double bound = 1.0 / std::exp(1.0);
  int violations = 0;
  double min_ratio = 1e300;
  for (int draw = 0; draw < kRandomizedInstances; ++draw) {
    RngStream rng = DrawStream(seed, 7, draw);
    const Instance instance =
        RandomSmallInstance(rng, DrawSize(rng, kRandomizedMaxM));
    const int k = DrawK(rng);
    const double best = BruteForceJoint(instance, k).utility;
    double sum = 0.0;
    for (int run = 0; run < kRandomizedRuns; ++run) {
      RngStream run_rng(DeriveSeed(seed, "acceptance-run", draw, run));
      sum += JointObjective(instance,
                            RandomizedJoint(instance, k, run_rng).explanations);
    }
    const double mean = sum / kRandomizedRuns;
    if (mean < bound * best - kExactTolerance) ++violations;
    if (best > 0.0) min_ratio = std::min(min_ratio, mean / best);
  }
  const double seconds = SecondsSince(start);
  Outcome out;
  out.passed = violations == 0 && seconds < kRandomizedSeconds;
  std::ostringstream detail;
  detail << std::setprecision(6) << kRandomizedInstances << " instances x "
         << kRandomizedRuns << " runs, violations=" << violations
         << " min_mean_ratio=" << min_ratio << " runtime=" << std::fixed
         << std::setprecision(2) << seconds << "s";
  out.detail = detail.str();
  return out;
}

Outcome MarginalConsistencyCheck(uint64_t seed) {
  int fixed_bad = 0;
  int joint_bad = 0;
  int fixed_tested = 0;
  int joint_tested = 0;
  double worst = 0.0;
  for (int draw = 0;
       (fixed_tested < kPropertyDraws || joint_tested < kPropertyDraws) &&
       draw < kMaxAttempts;
       ++draw) {
    RngStream rng = DrawStream(seed, 8, draw);
    const Instance instance = RandomSmallInstance(rng, DrawSize(rng, 10));
    const Policy policy =
        RandomMonotonePolicy(rng, instance, rng.Bernoulli(0.5));

    const NestedDraw fixed =
        DrawNested(rng, GroundSetAccepted(instance, policy).Sorted());
    if (fixed.x >= 0 && fixed_tested < kPropertyDraws) {
      ++fixed_tested;
      const double fast = MarginalGainFixed(instance, policy, fixed.b, fixed.x);
      const double slow = Utility(instance, policy, fixed.b.With(fixed.x)) -
                          Utility(instance, policy, fixed.b);
      worst = std::max(worst, std::abs(fast - slow));
      if (!Near(fast, slow)) ++fixed_bad;
    }

    const NestedDraw joint =
        DrawNested(rng, GroundSetViable(instance).Sorted());
    if (joint.x >= 0 && joint_tested < kPropertyDraws) {
      ++joint_tested;
      const double fast = JointObjectiveState(instance, joint.b).Gain(joint.x);
      const double slow = JointObjective(instance, joint.b.With(joint.x)) -
                          JointObjective(instance, joint.b);
      worst = std::max(worst, std::abs(fast - slow));
      if (!Near(fast, slow)) ++joint_bad;
    }
  }
  Outcome out;
  out.passed = fixed_tested == kPropertyDraws &&
               joint_tested == kPropertyDraws && fixed_bad == 0 &&
               joint_bad == 0;
  std::ostringstream detail;
  detail << fixed_tested << " fixed + " << joint_tested
         << " joint draws, fixed_mismatch=" << fixed_bad
         << " joint_mismatch=" << joint_bad << " max_abs_diff=" << worst;
  out.detail = detail.str();
  return out;
}

Outcome LeakageCheck(uint64_t seed) {
  int outside = 0;
  int p0_mismatch = 0;
  double worst_z = 0.0;
  for (int draw = 0; draw < kLeakageInstances; ++draw) {
    RngStream rng = DrawStream(seed, 9, draw);
    const Instance instance = RandomSmallInstance(rng, DrawSize(rng, 10));
    const Policy policy =
        RandomMonotonePolicy(rng, instance, rng.Bernoulli(0.5));
    const ExplanationSet a(
        RandomSubset(rng, GroundSetAccepted(instance, policy).Sorted(), 0.6));
    const double p = rng.Uniform(0.05, 1.0);
    const double analytic = LeakageUtility(instance, policy, a, p);
    RngStream mc_rng(DeriveSeed(seed, "acceptance-mc", draw, 0));
    const MonteCarloEstimate mc =
        LeakageMonteCarlo(instance, policy, a, p, kLeakageSamples, mc_rng);
    const double diff = std::abs(analytic - mc.mean);
    if (diff > kLeakageStandardErrors * mc.standard_error + kExactTolerance) {
      ++outside;
    }
    if (mc.standard_error > 0.0) {
      worst_z = std::max(worst_z, diff / mc.standard_error);
    }
    if (LeakageUtility(instance, policy, a, 0.0) !=
        Utility(instance, policy, a)) {
      ++p0_mismatch;
    }
  }
  Outcome out;
  out.passed = outside == 0 && p0_mismatch == 0;
  std::ostringstream detail;
  detail << std::setprecision(4) << kLeakageInstances << " instances x "
         << kLeakageSamples << " samples, outside_3se=" << outside
         << " max_z=" << worst_z << " p0_mismatch=" << p0_mismatch;
  out.detail = detail.str();
  return out;
}

Outcome SyntheticTrendCheck(uint64_t seed) {
  const auto start = Clock::now();
  ExperimentConfig config = SyntheticPreset("compare");
  config.seed = seed;
  std::map<std::string, double> mean;
  for (const CompareRow& row : CompareRows(config)) {
    mean[row.regime] += row.utility / config.repetitions;
  }
  const double seconds = SecondsSince(start);
  const double best_baseline =
      std::max({mean["diverse"], mean["min_cost"], mean["black_box"]});
  Outcome out;
  out.passed = mean["alg2"] >= mean["alg1"] && mean["alg1"] >= best_baseline &&
               mean["alg1"] > mean["black_box"] && seconds < kTrendSeconds;
  std::ostringstream detail;
  detail << std::setprecision(5);
  for (const std::string& regime : CompareRegimes()) {
    detail << regime << "=" << mean[regime] << " ";
  }
  detail << "runtime=" << std::fixed << std::setprecision(2) << seconds << "s";
  out.detail = detail.str();
  return out;
}

Outcome MatroidBalanceCheck() {
  const GroupFixture fixture = MakeTwoGroupFixture();
  const Instance& instance = fixture.instance;
  const PartitionMatroid matroid(instance.m(), fixture.groups,
                                 fixture.capacities);
  const int k = matroid.rank();
  const ExplanationSet cardinality =
      GreedyFixedPolicy(instance, fixture.policy, k);
  const ExplanationSet diverse =
      GreedyMatroid(instance, fixture.policy, matroid).explanations;
  std::vector<int> card_count(matroid.group_count(), 0);
  std::vector<int> matroid_count(matroid.group_count(), 0);
  for (int a : cardinality) ++card_count[matroid.group_of(a)];
  for (int a : diverse) ++matroid_count[matroid.group_of(a)];
  const std::vector<double> card_gain =
      GroupImprovement(instance, fixture.policy, cardinality, fixture.groups);
  const std::vector<double> matroid_gain =
      GroupImprovement(instance, fixture.policy, diverse, fixture.groups);

  double rejected = 0.0;
  double rejected_dominant = 0.0;
  for (int i = 0; i < instance.m(); ++i) {
    if (fixture.policy.accepts(i)) continue;
    rejected += instance.px(i);
    if (matroid.group_of(i) == 0) rejected_dominant += instance.px(i);
  }
  Outcome out;
  out.passed = rejected_dominant > 0.9 * rejected &&
               card_count[0] == cardinality.size() && cardinality.size() == k &&
               matroid_count == fixture.capacities &&
               matroid_gain[1] > card_gain[1];
  std::ostringstream detail;
  detail << std::setprecision(4)
         << "dominant_share=" << rejected_dominant / rejected
         << " cardinality_counts=" << card_count[0] << "/" << card_count[1]
         << " matroid_counts=" << matroid_count[0] << "/" << matroid_count[1]
         << " minority_improvement=" << card_gain[1] << "->" << matroid_gain[1];
  out.detail = detail.str();
  return out;
}

std::string GenerateText(uint64_t seed) {
  SynthConfig synth;
  synth.m = 40;
  synth.seed = seed;
  const Instance instance = GenerateSynthetic(synth);
  std::ostringstream out;
  WritePoints(instance, out);
  WriteCosts(instance.cost(), out);
  return out.str();
}

Outcome DeterminismCheck(uint64_t seed) {
  ExperimentConfig base;
  base.synth.m = 40;
  base.k = 4;
  base.repetitions = 2;
  base.seed = seed;
  base.sweep = "k";
  base.k_values = {0, 2, 4};

  std::vector<std::pair<std::string, std::function<std::string()>>> commands;
  commands.emplace_back("generate", [&] { return GenerateText(seed); });
  for (const char* experiment : {"compare", "leakage", "transport"}) {
    ExperimentConfig config = base;
    config.experiment = experiment;
    commands.emplace_back(experiment,
                          [config] { return RunExperiment(config); });
  }
  ExperimentConfig matroid = base;
  matroid.experiment = "matroid";
  matroid.sweep = "none";
  matroid.group_count = 3;
  commands.emplace_back("matroid",
                        [matroid] { return RunExperiment(matroid); });

  std::vector<std::string> differing;
  for (const auto& [name, run] : commands) {
    if (run() != run()) differing.push_back(name);
  }
  Outcome out;
  out.passed = differing.empty();
  std::ostringstream detail;
  detail << commands.size() << " commands run twice, differing=";
  if (differing.empty()) detail << "none";
  for (size_t i = 0; i < differing.size(); ++i) {
    detail << (i > 0 ? "," : "") << differing[i];
  }
  out.detail = detail.str();
  return out;
}

struct CriterionDef {
  const char* name;
  std::function<Outcome(uint64_t)> run;
};

const std::vector<CriterionDef>& Criteria() {
  static const std::vector<CriterionDef> criteria = {
      {"nonmonotone-fixture",
       [](uint64_t) { return NonMonotoneFixtureCheck(); }},
      {"setcover-fixture", [](uint64_t) { return SetCoverFixtureCheck(); }},
      {"policy-oracle", PolicyOracleCheck},
      {"fixed-policy-properties", FixedPolicyPropertyCheck},
      {"joint-submodularity", JointSubmodularityCheck},
      {"greedy-guarantee", GreedyGuaranteeCheck},
      {"randomized-guarantee", RandomizedGuaranteeCheck},
      {"marginal-consistency", MarginalConsistencyCheck},
      {"leakage-monte-carlo", LeakageCheck},
      {"synthetic-trend", SyntheticTrendCheck},
      {"matroid-balance", [](uint64_t) { return MatroidBalanceCheck(); }},
      {"determinism", DeterminismCheck},
  };
  return criteria;
}

}  // namespace

std::string FormatCriterion(const CriterionResult& result) {
  std::ostringstream out;
  out << (result.passed ? "PASS" : "FAIL") << ' ' << std::setw(2) << result.id
      << ' ' << result.name << ": " << result.detail << " (" << std::fixed
      << std::setprecision(2) << result.seconds << " s)";
  return out.str();
}

int AcceptanceCriterionCount() { return static_cast<int>(Criteria().size()); }

CriterionResult RunCriterion(int id, uint64_t seed) {
  if (id < 1 || id > AcceptanceCriterionCount()) {
    throw std::out_of_range("no acceptance criterion " + std::to_string(id));
  }
  const CriterionDef& criterion_def = Criteria()[id - 1];
  CriterionResult result;
  result.id = id;
  result.name = criterion_def.name;
  const auto start = Clock::now();
  try {
    Outcome outcome = criterion_def.run(seed);
    result.passed = outcome.passed;
    result.detail = std::move(outcome.detail);
  } catch (const std::exception& e) {
    result.passed = false;
    result.detail = std::string("exception: ") + e.what();
  }
  result.seconds = SecondsSince(start);
  return result;
}

std::vector<CriterionResult> RunAcceptanceSuite(
    uint64_t seed, const std::function<void(const CriterionResult&)>& report) {
  std::vector<CriterionResult> results;
  for (int id = 1; id <= AcceptanceCriterionCount(); ++id) {
    results.push_back(RunCriterion(id, seed));
    if (report) report(results.back());
  }
  return results;
}

}  // namespace cfx
