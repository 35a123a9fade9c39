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

#include "cfx/behavior.h"

#include <cmath>
#include <limits>
#include <numeric>

#include "cfx/baselines.h"
#include "cfx/fixtures.h"
#include "gtest/gtest.h"

namespace cfx {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTol = 1e-12;

// Two accepted values and one rejected value that reaches both; the cheaper
// target has the lower outcome. The last value is isolated.
Instance LeakyInstance() {
  InstanceData data;
  data.px = {0.1, 0.1, 0.7, 0.1};
  data.py = {1.0, 0.8, 0.2, 0.1};
  data.cost = CostMatrix::FromDoubles({{0, 2, 2, kInf},
                                       {2, 0, 2, kInf},
                                       {0.6, 0.1, 0, kInf},
                                       {kInf, kInf, kInf, 0}});
  data.gamma = 0.3;
  return Instance::Create(std::move(data));
}

TEST(RegionTest, FixtureRegion) {
  const Instance inst = NonMonotoneFixture();
  const Policy pi({1, 0, 0});
  EXPECT_EQ(RegionOfAdaptation(inst, pi, 2), (std::vector<int>{0, 2}));
  EXPECT_EQ(RegionOfAdaptation(inst, pi, 1), (std::vector<int>{0, 1}));
  EXPECT_EQ(RegionOfAdaptation(inst, pi, 0), (std::vector<int>{0}));
}

TEST(RegionTest, EqualBenefitsGiveSingletons) {
  const Instance inst = NonMonotoneFixture();
  for (double level : {0.0, 0.5, 1.0}) {
    const Policy pi({level, level, level});
    for (int i = 0; i < 3; ++i) {
      EXPECT_EQ(RegionOfAdaptation(inst, pi, i), (std::vector<int>{i}));
    }
  }
}

TEST(RegionTest, ZeroCostBoundaryIncluded) {
  const SetCoverFixture fixture = MakeSetCoverFixture();
  // c(u2, S2) = 0 and pi equal on both sides of a zero-cost pair.
  EXPECT_TRUE(InRegion(fixture.instance, fixture.policy, 3, 1));
  EXPECT_TRUE(InRegion(fixture.instance, Policy({0, 0, 0, 0}), 3, 1));
  // Infinite costs are never affordable.
  EXPECT_FALSE(InRegion(LeakyInstance(), Policy({1, 1, 0, 0}), 3, 0));
}

TEST(AssignTest, FixtureAssignment) {
  const Instance inst = NonMonotoneFixture();
  const Assignment a =
      AssignExplanations(inst, Policy({1, 0, 0}), ExplanationSet({0}));
  EXPECT_EQ(a.explanation_of[0], std::nullopt);
  EXPECT_EQ(a.explanation_of[1], 0);
  EXPECT_EQ(a.explanation_of[2], 0);
}

TEST(AssignTest, EmptySetGivesNone) {
  const Assignment a = AssignExplanations(NonMonotoneFixture(),
                                          Policy({1, 0, 0}), ExplanationSet());
  for (const auto& e : a.explanation_of) EXPECT_EQ(e, std::nullopt);
}

TEST(AssignTest, UnreachableExplanationAssignedButNotFollowed) {
  const Instance inst = LeakyInstance();
  const Policy pi({1, 1, 0, 0});
  const ExplanationSet a({0});
  EXPECT_EQ(AssignExplanations(inst, pi, a).explanation_of[3], 0);
  EXPECT_EQ(BestRespond(inst, pi, a).moved[3], std::nullopt);
}

TEST(AssignTest, PrefersHighestOutcomeInRegionThenLowestCost) {
  const Instance inst = LeakyInstance();
  const Policy pi({1, 1, 0, 0});
  EXPECT_EQ(
      AssignExplanations(inst, pi, ExplanationSet({1, 0})).explanation_of[2],
      0);
  // Full ties fall back to the lower index.
  const SetCoverFixture fixture = MakeSetCoverFixture();
  EXPECT_EQ(AssignExplanations(fixture.instance, fixture.policy,
                               ExplanationSet({0, 1}))
                .explanation_of[3],
            0);
}

TEST(AssignTest, OutsideRegionFallsBackToCheapest) {
  InstanceData data;
  data.px = {0.2, 0.2, 0.6};
  data.py = {0.9, 0.8, 0.1};
  data.cost = CostMatrix::FromDoubles({{0, 1, 1}, {1, 0, 1}, {1.5, 1.2, 0}});
  data.gamma = 0.3;
  const Instance inst = Instance::Create(std::move(data));
  const Assignment a =
      AssignExplanations(inst, Policy({1, 1, 0}), ExplanationSet({0, 1}));
  EXPECT_EQ(a.explanation_of[2], 1);
}

TEST(BestRespondTest, FixtureUtilities) {
  const Instance inst = NonMonotoneFixture();
  const BestResponseResult one =
      BestRespond(inst, Policy({1, 0, 0}), ExplanationSet({0}));
  EXPECT_NEAR(one.utility, 0.9, kTol);
  EXPECT_EQ(one.moved[1], 0);
  EXPECT_EQ(one.moved[2], 0);
  EXPECT_NEAR(one.induced_px[0], 1.0, kTol);

  const BestResponseResult two =
      BestRespond(inst, Policy({1, 1, 0}), ExplanationSet({0, 1}));
  EXPECT_NEAR(two.utility, 0.5, kTol);
  EXPECT_EQ(two.moved[1], std::nullopt);
  EXPECT_EQ(two.moved[2], 0);
  EXPECT_NEAR(two.induced_px[0], 0.2, kTol);
  EXPECT_NEAR(two.induced_px[1], 0.8, kTol);
}

TEST(BestRespondTest, EmptySetKeepsDistribution) {
  RngStream rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const Instance inst = RandomSmallInstance(rng, 6);
    const Policy pi = RandomMonotonePolicy(rng, inst, false);
    const BestResponseResult r = BestRespond(inst, pi, ExplanationSet());
    double expected = 0.0;
    for (int i = 0; i < inst.m(); ++i) {
      EXPECT_EQ(r.induced_px[i], inst.px(i));
      EXPECT_EQ(r.moved[i], std::nullopt);
      expected += inst.px(i) * pi[i] * (inst.py(i) - inst.gamma());
    }
    EXPECT_NEAR(r.utility, expected, kTol);
  }
}

TEST(BestRespondTest, AcceptedNeverMove) {
  // x_1 is accepted and could reach x_0 for free.
  InstanceData data;
  data.px = {0.5, 0.5};
  data.py = {0.9, 0.6};
  data.cost = CostMatrix::FromDoubles({{0, 0}, {0, 0}});
  data.gamma = 0.3;
  const Instance inst = Instance::Create(std::move(data));
  const BestResponseResult r =
      BestRespond(inst, Policy({1, 1}), ExplanationSet({0}));
  EXPECT_EQ(r.moved[1], std::nullopt);
}

TEST(BestRespondTest, ConservationAndLegality) {
  RngStream rng(22);
  for (int trial = 0; trial < 300; ++trial) {
    const Instance inst = RandomSmallInstance(rng, 8);
    const Policy pi = RandomMonotonePolicy(rng, inst, rng.Bernoulli(0.5));
    const ExplanationSet a(
        RandomSubset(rng, GroundSetAccepted(inst, pi).Sorted(), 0.5));
    const BestResponseResult r = BestRespond(inst, pi, a);
    const double total =
        std::accumulate(r.induced_px.begin(), r.induced_px.end(), 0.0);
    EXPECT_NEAR(total, 1.0, 1e-9);
    for (int i = 0; i < inst.m(); ++i) {
      if (!r.moved[i]) continue;
      const int j = *r.moved[i];
      EXPECT_NE(j, i);
      EXPECT_TRUE(a.contains(j));
      EXPECT_TRUE(InRegion(inst, pi, i, j));
    }
    EXPECT_EQ(Utility(inst, pi, a), r.utility);
  }
}

TEST(MarginalTest, FixtureMarginalFromEmpty) {
  const Instance inst = NonMonotoneFixture();
  const Policy pi({1, 0, 0});
  EXPECT_NEAR(Utility(inst, pi, ExplanationSet()), 0.09, kTol);
  EXPECT_NEAR(MarginalGainFixed(inst, pi, ExplanationSet(), 0), 0.81, kTol);
}

TEST(MarginalTest, SingleElementFormula) {
  RngStream rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance inst = RandomSmallInstance(rng, 8);
    const Policy pi = RandomMonotonePolicy(rng, inst, rng.Bernoulli(0.5));
    const ExplanationSet ground = GroundSetAccepted(inst, pi);
    for (int x : ground) {
      double expected = 0.0;
      for (int i = 0; i < inst.m(); ++i) {
        if (pi.accepts(i) || !InRegion(inst, pi, i, x)) continue;
        expected += inst.px(i) * ((inst.py(x) - inst.gamma()) -
                                  pi[i] * (inst.py(i) - inst.gamma()));
      }
      EXPECT_NEAR(MarginalGainFixed(inst, pi, ExplanationSet(), x), expected,
                  kTol);
    }
  }
}

TEST(MarginalTest, MatchesRecomputation) {
  RngStream rng(24);
  for (int trial = 0; trial < 300; ++trial) {
    const Instance inst = RandomSmallInstance(rng, 9);
    const Policy pi = RandomMonotonePolicy(rng, inst, rng.Bernoulli(0.5));
    const std::vector<int> ground = GroundSetAccepted(inst, pi).Sorted();
    const ExplanationSet a(RandomSubset(rng, ground, 0.4));
    FixedPolicyObjective objective(inst, pi, a);
    EXPECT_NEAR(objective.value(), Utility(inst, pi, a), kTol);
    for (int x : ground) {
      if (a.contains(x)) continue;
      const double slow = Utility(inst, pi, a.With(x)) - Utility(inst, pi, a);
      EXPECT_NEAR(objective.Gain(x), slow, kTol);
      EXPECT_NEAR(MarginalGainFixed(inst, pi, a, x), slow, kTol);
    }
  }
}

TEST(TransportTest, NoMoversGivesZero) {
  const TransportMatrix t = ComputeTransportMatrix(
      NonMonotoneFixture(), Policy({1, 0, 0}), ExplanationSet(), 10);
  EXPECT_EQ(t.total(), 0.0);
  EXPECT_EQ(t.edges.size(), 11u);
  EXPECT_EQ(t.edges.front(), 0.0);
  EXPECT_EQ(t.edges.back(), 1.0);
}

TEST(TransportTest, FixtureMassLandsInTopBin) {
  const TransportMatrix t = ComputeTransportMatrix(
      NonMonotoneFixture(), Policy({1, 0, 0}), ExplanationSet({0}), 10);
  EXPECT_NEAR(t.at(5, 9), 0.8, kTol);
  EXPECT_NEAR(t.at(4, 9), 0.1, kTol);
  double column = 0.0;
  for (int b = 0; b < 10; ++b) column += t.at(b, 9);
  EXPECT_NEAR(column, 0.9, kTol);
  EXPECT_NEAR(t.total(), 0.9, kTol);
}

TEST(TransportTest, TotalEqualsMovedMass) {
  RngStream rng(25);
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = RandomSmallInstance(rng, 8);
    const Policy pi = ThresholdPolicy(inst);
    const ExplanationSet a(
        RandomSubset(rng, GroundSetAccepted(inst, pi).Sorted(), 0.5));
    const BestResponseResult r = BestRespond(inst, pi, a);
    double moved = 0.0;
    for (int i = 0; i < inst.m(); ++i) {
      if (r.moved[i]) moved += inst.px(i);
    }
    EXPECT_NEAR(ComputeTransportMatrix(inst, pi, a, 5).total(), moved, kTol);
  }
}

TEST(TransportTest, BinsAndValidation) {
  EXPECT_EQ(OutcomeBin(0.0, 10), 0);
  EXPECT_EQ(OutcomeBin(0.1, 10), 1);
  EXPECT_EQ(OutcomeBin(0.95, 10), 9);
  EXPECT_EQ(OutcomeBin(1.0, 10), 9);
  EXPECT_THROW(ComputeTransportMatrix(NonMonotoneFixture(), Policy({1, 0, 0}),
                                      ExplanationSet(), 0),
               std::invalid_argument);
}

TEST(LeakageTest, ZeroProbabilityIsExact) {
  RngStream rng(26);
  for (int trial = 0; trial < 200; ++trial) {
    const Instance inst = RandomSmallInstance(rng, 8);
    const Policy pi = RandomMonotonePolicy(rng, inst, rng.Bernoulli(0.5));
    const ExplanationSet a(
        RandomSubset(rng, GroundSetAccepted(inst, pi).Sorted(), 0.6));
    EXPECT_EQ(LeakageUtility(inst, pi, a, 0.0), Utility(inst, pi, a));
  }
}

TEST(LeakageTest, SingleExplanationIgnoresLeakage) {
  RngStream rng(27);
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = RandomSmallInstance(rng, 7);
    const Policy pi = ThresholdPolicy(inst);
    const ExplanationSet ground = GroundSetAccepted(inst, pi);
    if (ground.empty()) continue;
    const ExplanationSet a({ground.indices().front()});
    for (double p : {0.3, 1.0}) {
      EXPECT_NEAR(LeakageUtility(inst, pi, a, p), Utility(inst, pi, a), kTol);
    }
  }
}

TEST(LeakageTest, AnalyticValueOnConstructedInstance) {
  const Instance inst = LeakyInstance();
  const Policy pi({1, 1, 0, 0});
  const ExplanationSet a({0, 1});
  // x_2 follows x_0 unless the leaked draw is x_1 (probability p / 2).
  double previous = 1e9;
  for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const double expected = 0.12 + 0.7 * ((1 - p / 2) * 0.7 + (p / 2) * 0.5);
    const double value = LeakageUtility(inst, pi, a, p);
    EXPECT_NEAR(value, expected, kTol) << p;
    EXPECT_LE(value, previous);
    previous = value;
  }
}

TEST(LeakageTest, RejectsBadProbability) {
  const Instance inst = LeakyInstance();
  EXPECT_THROW(
      LeakageUtility(inst, Policy({1, 1, 0, 0}), ExplanationSet({0}), 1.5),
      std::invalid_argument);
  EXPECT_THROW(
      LeakageUtility(inst, Policy({1, 1, 0, 0}), ExplanationSet({0}), -0.1),
      std::invalid_argument);
}

TEST(LeakageTest, MonteCarloAgrees) {
  const Instance inst = LeakyInstance();
  const Policy pi({1, 1, 0, 0});
  const ExplanationSet a({0, 1});
  RngStream rng(28);
  const MonteCarloEstimate mc =
      LeakageMonteCarlo(inst, pi, a, 0.6, 100000, rng);
  EXPECT_EQ(mc.samples, 100000);
  EXPECT_GT(mc.standard_error, 0.0);
  EXPECT_NEAR(mc.mean, LeakageUtility(inst, pi, a, 0.6), 4 * mc.standard_error);

  RngStream again(28);
  const MonteCarloEstimate repeat =
      LeakageMonteCarlo(inst, pi, a, 0.6, 100000, again);
  EXPECT_EQ(repeat.mean, mc.mean);
}

TEST(GroupImprovementTest, FixtureValue) {
  const Instance inst = NonMonotoneFixture();
  const std::vector<double> g = GroupImprovement(
      inst, Policy({1, 0, 0}), ExplanationSet({0}), {{0}, {1, 2}});
  EXPECT_EQ(g[0], 0.0);  // No rejected mass.
  EXPECT_NEAR(g[1], (0.8 * 0.5 + 0.1 * 0.6) / 0.9, kTol);
}

TEST(GroupImprovementTest, NoMoversAllZero) {
  const std::vector<double> g = GroupImprovement(
      NonMonotoneFixture(), Policy({1, 0, 0}), ExplanationSet(), {{0, 1}, {2}});
  EXPECT_EQ(g, (std::vector<double>{0.0, 0.0}));
}

TEST(GroupImprovementTest, SingleGroupIsPopulationAverage) {
  RngStream rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const Instance inst = RandomSmallInstance(rng, 7);
    const Policy pi = ThresholdPolicy(inst);
    const ExplanationSet a(
        RandomSubset(rng, GroundSetAccepted(inst, pi).Sorted(), 0.5));
    const BestResponseResult r = BestRespond(inst, pi, a);
    double num = 0.0;
    double den = 0.0;
    std::vector<int> all(inst.m());
    std::iota(all.begin(), all.end(), 0);
    for (int i = 0; i < inst.m(); ++i) {
      if (pi.accepts(i)) continue;
      den += inst.px(i);
      if (r.moved[i]) num += inst.px(i) * (inst.py(*r.moved[i]) - inst.py(i));
    }
    const double expected = den > 0 ? num / den : 0.0;
    EXPECT_NEAR(GroupImprovement(inst, pi, a, {all})[0], expected, kTol);
  }
}

}  // namespace
}  // namespace cfx
