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

// Best-response simulation of the population against a policy and a set of
// counterfactual explanations.
//
// An individual at x_i who is not accepted with certainty receives one
// explanation E(x_i) from A and moves there iff the benefit gain covers the
// cost, i.e. iff E(x_i) lies in her region of adaptation
//   R(x_i) = {j : pi(x_j) - c(x_i, x_j) >= pi(x_i)}.
// The decision maker's utility is the expectation of pi(x) (P(y=1|x) - gamma)
// over the induced feature distribution.

#ifndef CFX_BEHAVIOR_H_
#define CFX_BEHAVIOR_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "cfx/core.h"
#include "cfx/random.h"

namespace cfx {

// j in R(x_i). Infinite costs are never affordable.
bool InRegion(const Instance& instance, const Policy& policy, int i, int j);
// R(x_i) in ascending index order; always contains i.
std::vector<int> RegionOfAdaptation(const Instance& instance,
                                    const Policy& policy, int i);

// True if explanation `a` is preferred over `b` for an individual at `from`:
// higher outcome, then lower cost, then lower index.
bool PreferExplanation(const Instance& instance, int from, int a, int b);

struct Assignment {
  // Feature-value index of E(x_i), or nullopt for accepted individuals and
  // when A is empty.
  std::vector<std::optional<int>> explanation_of;
};

Assignment AssignExplanations(const Instance& instance, const Policy& policy,
                              const ExplanationSet& explanations);

struct BestResponseResult {
  // Target feature value of each individual that moves, nullopt if she stays.
  std::vector<std::optional<int>> moved;
  // P(x_j | pi, A).
  std::vector<double> induced_px;
  double utility = 0.0;
};

BestResponseResult BestRespond(const Instance& instance, const Policy& policy,
                               const ExplanationSet& explanations);

double Utility(const Instance& instance, const Policy& policy,
               const ExplanationSet& explanations);

// Incremental evaluator of f(A) = u(pi, A) for a fixed policy.
//
// Holds the current explanation and contribution of every individual.
// Gain(x) = f(A + x) - f(A) costs O(m). The state is single-writer.
class FixedPolicyObjective {
 public:
  // Starts from A = {}.
  FixedPolicyObjective(const Instance& instance, const Policy& policy);
  // Starts from the given set, added in its stored order.
  FixedPolicyObjective(const Instance& instance, const Policy& policy,
                       const ExplanationSet& explanations);

  // f(A + x) - f(A). Precondition: x not in A.
  double Gain(int x) const;
  void Add(int x);

  bool contains(int x) const { return in_set_[x]; }
  // Running value of f(A); matches Utility() up to rounding.
  double value() const { return value_; }
  ExplanationSet selected() const { return ExplanationSet(selected_); }

 private:
  double Contribution(int i, std::optional<int> target) const;

  const Instance& instance_;
  const Policy& policy_;
  std::vector<int> selected_;
  std::vector<char> in_set_;
  // Best member of A within R(x_i) for each non-accepted individual.
  std::vector<std::optional<int>> target_;
  double value_ = 0.0;
};

// f(A + x) - f(A) via a FixedPolicyObjective built from A.
double MarginalGainFixed(const Instance& instance, const Policy& policy,
                         const ExplanationSet& explanations, int x);

// Mass moved between outcome ranges. Bins split [0, 1] into `bins` equal
// intervals [b/bins, (b+1)/bins), the last one closed.
struct TransportMatrix {
  int bins = 0;
  // bins + 1 increasing edges from 0 to 1.
  std::vector<double> edges;
  // Row = bin of the initial outcome, column = bin of the final outcome.
  std::vector<double> mass;

  double at(int from_bin, int to_bin) const {
    return mass[static_cast<size_t>(from_bin) * bins + to_bin];
  }
  double total() const;
};

int OutcomeBin(double outcome, int bins);

// Throws std::invalid_argument if bins < 1.
TransportMatrix ComputeTransportMatrix(const Instance& instance,
                                       const Policy& policy,
                                       const ExplanationSet& explanations,
                                       int bins);

// Exact expected utility when each non-accepted individual additionally
// learns, with probability leak_probability, one explanation drawn uniformly
// from A. She follows whichever reachable option has the larger net benefit
// pi - c (ties: lower cost, then her own explanation), or stays.
// Throws std::invalid_argument if leak_probability is outside [0, 1].
double LeakageUtility(const Instance& instance, const Policy& policy,
                      const ExplanationSet& explanations,
                      double leak_probability);

struct MonteCarloEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  int64_t samples = 0;
};

// Seeded simulation of the leakage model, sampling individuals from px.
MonteCarloEstimate LeakageMonteCarlo(const Instance& instance,
                                     const Policy& policy,
                                     const ExplanationSet& explanations,
                                     double leak_probability, int64_t samples,
                                     RngStream& rng);

// Average outcome improvement of the non-accepted individuals of each group,
// weighted by px. A group without rejected mass scores 0.
std::vector<double> GroupImprovement(
    const Instance& instance, const Policy& policy,
    const ExplanationSet& explanations,
    const std::vector<std::vector<int>>& groups);

}  // namespace cfx

#endif  // CFX_BEHAVIOR_H_
