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

// Optimizers over explanation sets and policies, plus exhaustive oracles.
//
// For a fixed policy, f(A) = u(pi, A) is monotone submodular on P_pi and is
// maximized with the standard greedy algorithm. Jointly over (pi, A), the
// utility-maximizing policy for a given A has a closed form, which turns the
// problem into maximizing the non-monotone submodular h(A) = u(pi*_A, A) on
// Y = {x : P(y=1|x) >= gamma}; that is handled by the random greedy
// algorithm, which samples uniformly among the top-k marginals.

#ifndef CFX_ALGORITHMS_H_
#define CFX_ALGORITHMS_H_

#include <optional>
#include <vector>

#include "cfx/core.h"
#include "cfx/random.h"

namespace cfx {

// Largest ground set the exhaustive oracles accept.
inline constexpr int kMaxBruteForceGroundSet = 20;

struct JointSolution {
  Policy policy;
  ExplanationSet explanations;
  double utility = 0.0;
};

// Greedy maximization of f over P_pi with |A| <= k. Stops early once every
// remaining marginal gain is <= 0. If `trace` is given, it receives f after
// each accepted candidate.
//
// Throws std::invalid_argument if k < 0, or if the policy is not rational, or
// is stochastic and not outcome-monotonic.
ExplanationSet GreedyFixedPolicy(const Instance& instance, const Policy& policy,
                                 int k, std::vector<double>* trace = nullptr);

struct MatroidGreedyResult {
  ExplanationSet explanations;
  // Set when some capacity exceeded its group size and was capped.
  bool capacity_capped = false;
};

// Greedy over P_pi keeping |A & X_g| <= d_g for every group.
MatroidGreedyResult GreedyMatroid(const Instance& instance,
                                  const Policy& policy,
                                  const PartitionMatroid& matroid);

// pi*_A: accept x iff x is in A, or x is viable and no member of A with a
// strictly higher outcome is within cost 1 of x.
// Throws std::invalid_argument unless A is a subset of Y.
Policy OptimalPolicyFor(const Instance& instance,
                        const ExplanationSet& explanations);

// h(A) = u(pi*_A, A).
double JointObjective(const Instance& instance,
                      const ExplanationSet& explanations);

// Incremental evaluator of h. Gain(x) is O(m).
//
// Under pi*_A, an individual at i outside A collects
//   max(max(py_i - gamma, 0), best_i - gamma),
// where best_i is the highest outcome among members of A within cost 1 of
// x_i; members of A collect py - gamma and stay.
class JointObjectiveState {
 public:
  explicit JointObjectiveState(const Instance& instance);
  JointObjectiveState(const Instance& instance,
                      const ExplanationSet& explanations);

  // h(A + x) - h(A). Precondition: x in Y and not in A.
  double Gain(int x) const;
  void Add(int x);

  bool contains(int x) const { return in_set_[x]; }
  double value() const { return value_; }
  ExplanationSet selected() const { return ExplanationSet(selected_); }

 private:
  double Contribution(int i) const;

  const Instance& instance_;
  std::vector<int> selected_;
  std::vector<char> in_set_;
  // Highest outcome among selected members reachable at cost <= 1.
  std::vector<std::optional<double>> best_;
  double value_ = 0.0;
};

// Random greedy over Y padded with 2k zero-gain dummy values. Each of the k
// rounds ranks the remaining candidates by marginal gain of h (ties: lower
// index, dummies after every real value), then adds one of the top k
// uniformly at random. Dummies are dropped from the returned set. k = 0
// returns A = {} under pi*_{}.
JointSolution RandomizedJoint(const Instance& instance, int k, RngStream& rng);

// Exhaustive maximizer of f over A in P_pi, |A| <= k. Ties go to the
// lexicographically smallest sorted set. Throws std::invalid_argument if
// |P_pi| > kMaxBruteForceGroundSet.
ExplanationSet BruteForceFixed(const Instance& instance, const Policy& policy,
                               int k);

// Exhaustive maximizer of f over matroid-feasible subsets of P_pi.
ExplanationSet BruteForceMatroid(const Instance& instance, const Policy& policy,
                                 const PartitionMatroid& matroid);

// Exhaustive maximizer of h over A in Y, |A| <= k.
JointSolution BruteForceJoint(const Instance& instance, int k);

// Best deterministic policy with A in P_pi by enumerating all 2^(m - |A|)
// completions. Ties go to the first completion in binary counting order.
// Throws std::invalid_argument if m - |A| > kMaxBruteForceGroundSet.
JointSolution ExhaustiveBestPolicy(const Instance& instance,
                                   const ExplanationSet& explanations);

}  // namespace cfx

#endif  // CFX_ALGORITHMS_H_
