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

// Small hand-built instances with known answers, and random generators for
// property checks.

#ifndef CFX_FIXTURES_H_
#define CFX_FIXTURES_H_

#include <string>
#include <vector>

#include "cfx/core.h"
#include "cfx/random.h"

namespace cfx {

// Three values, gamma = 0.1, px = (0.1, 0.8, 0.1), py = (1.0, 0.5, 0.4):
// h({0}) = 0.9 but h({0, 1}) = 0.5.
Instance NonMonotoneFixture();

// Set-cover reduction for U = {u1, u2}, S1 = {u1, u2}, S2 = {u2}. Canonical
// order is S1, S2, u1, u2; sets carry no mass and outcome 1, elements carry
// mass 1/2 and outcome gamma.
struct SetCoverFixture {
  Instance instance;
  Policy policy;  // Accepts exactly the set values.
  int s1 = 0;
  int s2 = 1;
};
SetCoverFixture MakeSetCoverFixture(double gamma = 0.3);

// Two groups; group 0 holds about 95% of the rejected mass. Each rejected
// value can reach exactly one accepted value of its own group. The cardinality
// greedy with k = 4 spends everything on group 0; capacities (2, 2) put two
// explanations into group 1.
struct GroupFixture {
  Instance instance;
  Policy policy;  // Threshold policy.
  std::vector<std::vector<int>> groups;
  std::vector<int> capacities;
};
GroupFixture MakeTwoGroupFixture();

// Names accepted by the harness: "nonmonotone", "setcover", "two-group".
Instance FixtureByName(const std::string& name);
std::vector<std::string> FixtureNames();

struct SmallInstanceOptions {
  // Probability that a px entry is exactly zero.
  double zero_mass = 0.1;
  // Probability that py repeats the previous draw.
  double tied_outcome = 0.15;
  // Cost mixture: zero, infinite, otherwise U[0, 1] or U[0, 2] evenly.
  double zero_cost = 0.1;
  double infinite_cost = 0.15;
};

// Random valid instance with gamma ~ U[0.05, 0.95].
Instance RandomSmallInstance(RngStream& rng, int m,
                             const SmallInstanceOptions& options = {});

// Rational, outcome-monotonic policy; deterministic ones are thresholds.
Policy RandomMonotonePolicy(RngStream& rng, const Instance& instance,
                            bool deterministic);

// Rational deterministic policy with no monotonicity requirement.
Policy RandomRationalDeterministicPolicy(RngStream& rng,
                                         const Instance& instance);

// Each ground element kept independently with probability p.
std::vector<int> RandomSubset(RngStream& rng, const std::vector<int>& ground,
                              double p);

}  // namespace cfx

#endif  // CFX_FIXTURES_H_
