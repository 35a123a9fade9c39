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

// Comparison regimes that ignore strategic behavior when choosing the policy:
// no explanations, minimum-cost explanations and diverse explanations.

#ifndef CFX_BASELINES_H_
#define CFX_BASELINES_H_

#include <compare>

#include "cfx/core.h"

namespace cfx {

// Accept x iff P(y=1|x) >= gamma.
Policy ThresholdPolicy(const Instance& instance);

// Utility of the threshold policy on the original distribution.
double BlackBoxUtility(const Instance& instance);

// Weighted distance of the rejected population to its closest explanation.
// Rejected mass with no finite-cost explanation in A is counted separately
// and dominates the comparison; mass that no accepted value can serve at
// finite cost is excluded.
struct MinCostValue {
  double unserved_mass = 0.0;
  double total_cost = 0.0;

  friend std::partial_ordering operator<=>(const MinCostValue& a,
                                           const MinCostValue& b) {
    if (auto c = a.unserved_mass <=> b.unserved_mass; c != 0) return c;
    return a.total_cost <=> b.total_cost;
  }
  friend bool operator==(const MinCostValue&, const MinCostValue&) = default;
};

MinCostValue MinCostObjective(const Instance& instance, const Policy& policy,
                              const ExplanationSet& explanations);

struct MinCostOptions {
  // After the k greedy additions, apply improving single swaps until none is
  // left. Off by default.
  bool swap_refinement = false;
};

// Greedy k-median: k rounds, each adding the member of P_pi \ A that lowers
// MinCostObjective the most (ties: lower index).
ExplanationSet MinCostExplanations(const Instance& instance,
                                   const Policy& policy, int k,
                                   MinCostOptions options = {});

// Rejected mass whose region of adaptation meets A.
double Coverage(const Instance& instance, const Policy& policy,
                const ExplanationSet& explanations);

// Greedy weighted max coverage over P_pi; stops once no candidate covers new
// mass.
ExplanationSet DiverseExplanations(const Instance& instance,
                                   const Policy& policy, int k);

}  // namespace cfx

#endif  // CFX_BASELINES_H_
