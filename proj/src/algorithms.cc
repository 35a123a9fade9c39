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

#include "cfx/algorithms.h"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "cfx/behavior.h"

namespace cfx {
namespace {

const Cost kUnitCost(1.0);

void CheckGreedyPolicy(const Instance& instance, const Policy& policy) {
  if (policy.size() != instance.m()) {
    throw std::invalid_argument("policy size does not match instance");
  }
  if (!IsRational(instance, policy)) {
    throw std::invalid_argument(
        "greedy: policy accepts a feature value with outcome below gamma");
  }
  if (!policy.IsDeterministic() && !IsOutcomeMonotonic(instance, policy)) {
    throw std::invalid_argument(
        "greedy: stochastic policy is not outcome-monotonic");
  }
}

void CheckViable(const Instance& instance, const ExplanationSet& explanations) {
  explanations.CheckWithin(instance.m());
  for (int x : explanations) {
    if (instance.py(x) < instance.gamma()) {
      std::ostringstream msg;
      msg << "explanation " << x << " has outcome below gamma";
      throw std::invalid_argument(msg.str());
    }
  }
}

ExplanationSet FromMask(const std::vector<int>& ground, uint32_t mask) {
  std::vector<int> members;
  for (size_t b = 0; b < ground.size(); ++b) {
    if (mask & (1u << b)) members.push_back(ground[b]);
  }
  return ExplanationSet(std::move(members));
}

// Visits every subset of `ground` accepted by `admit`, keeping the maximizer
// of `score`; ties go to the lexicographically smallest sorted subset.
ExplanationSet ExhaustiveArgmax(
    const std::vector<int>& ground, const std::function<bool(uint32_t)>& admit,
    const std::function<double(const ExplanationSet&)>& score) {
  if (static_cast<int>(ground.size()) > kMaxBruteForceGroundSet) {
    std::ostringstream msg;
    msg << "brute force: ground set of " << ground.size()
        << " exceeds the limit of " << kMaxBruteForceGroundSet;
    throw std::invalid_argument(msg.str());
  }
  ExplanationSet best;
  double best_value = score(best);
  const uint32_t end = 1u << ground.size();
  for (uint32_t mask = 1; mask < end; ++mask) {
    if (!admit(mask)) continue;
    ExplanationSet candidate = FromMask(ground, mask);
    const double value = score(candidate);
    if (value > best_value ||
        (value == best_value && candidate.Sorted() < best.Sorted())) {
      best = std::move(candidate);
      best_value = value;
    }
  }
  return best;
}

}  // namespace

ExplanationSet GreedyFixedPolicy(const Instance& instance, const Policy& policy,
                                 int k, std::vector<double>* trace) {
  if (k < 0) throw std::invalid_argument("greedy: k < 0");
  CheckGreedyPolicy(instance, policy);
  const std::vector<int> ground = GroundSetAccepted(instance, policy).Sorted();
  FixedPolicyObjective objective(instance, policy);
  for (int round = 0; round < k; ++round) {
    std::optional<int> pick;
    double pick_gain = 0.0;
    for (int x : ground) {
      if (objective.contains(x)) continue;
      const double gain = objective.Gain(x);
      if (gain > pick_gain) {
        pick = x;
        pick_gain = gain;
      }
    }
    if (!pick) break;
    objective.Add(*pick);
    if (trace) trace->push_back(objective.value());
  }
  return objective.selected();
}

MatroidGreedyResult GreedyMatroid(const Instance& instance,
                                  const Policy& policy,
                                  const PartitionMatroid& matroid) {
  CheckGreedyPolicy(instance, policy);
  if (matroid.m() != instance.m()) {
    throw std::invalid_argument("matroid size does not match instance");
  }
  MatroidGreedyResult out;
  std::vector<int> room(matroid.group_count());
  for (int g = 0; g < matroid.group_count(); ++g) {
    const int size = static_cast<int>(matroid.group(g).size());
    room[g] = std::min(matroid.capacity(g), size);
    out.capacity_capped |= matroid.capacity(g) > size;
  }
  const std::vector<int> ground = GroundSetAccepted(instance, policy).Sorted();
  FixedPolicyObjective objective(instance, policy);
  while (true) {
    std::optional<int> pick;
    double pick_gain = 0.0;
    for (int x : ground) {
      if (objective.contains(x) || room[matroid.group_of(x)] == 0) continue;
      const double gain = objective.Gain(x);
      if (gain > pick_gain) {
        pick = x;
        pick_gain = gain;
      }
    }
    if (!pick) break;
    objective.Add(*pick);
    --room[matroid.group_of(*pick)];
  }
  out.explanations = objective.selected();
  return out;
}

Policy OptimalPolicyFor(const Instance& instance,
                        const ExplanationSet& explanations) {
  CheckViable(instance, explanations);
  const int m = instance.m();
  std::vector<double> pi(m, 0.0);
  for (int x = 0; x < m; ++x) {
    if (explanations.contains(x)) {
      pi[x] = 1.0;
      continue;
    }
    if (instance.py(x) < instance.gamma()) continue;
    bool pulled = false;
    for (int a : explanations) {
      if (instance.py(a) > instance.py(x) && instance.cost(x, a) <= kUnitCost) {
        pulled = true;
        break;
      }
    }
    pi[x] = pulled ? 0.0 : 1.0;
  }
  return Policy(std::move(pi));
}

double JointObjective(const Instance& instance,
                      const ExplanationSet& explanations) {
  return Utility(instance, OptimalPolicyFor(instance, explanations),
                 explanations);
}

JointObjectiveState::JointObjectiveState(const Instance& instance)
    : instance_(instance),
      in_set_(instance.m(), 0),
      best_(instance.m(), std::nullopt) {
  for (int i = 0; i < instance.m(); ++i) {
    value_ += instance.px(i) * Contribution(i);
  }
}

JointObjectiveState::JointObjectiveState(const Instance& instance,
                                         const ExplanationSet& explanations)
    : JointObjectiveState(instance) {
  CheckViable(instance, explanations);
  for (int x : explanations) Add(x);
}

double JointObjectiveState::Contribution(int i) const {
  const double own = instance_.py(i) - instance_.gamma();
  if (in_set_[i]) return own;
  const double stay = std::max(own, 0.0);
  if (!best_[i]) return stay;
  return std::max(stay, *best_[i] - instance_.gamma());
}

double JointObjectiveState::Gain(int x) const {
  const double gamma = instance_.gamma();
  const double target = instance_.py(x) - gamma;
  double gain = 0.0;
  for (int i = 0; i < instance_.m(); ++i) {
    if (in_set_[i]) continue;
    if (i == x) {
      gain += instance_.px(i) * (target - Contribution(i));
      continue;
    }
    if (!(instance_.cost(i, x) <= kUnitCost)) continue;
    if (best_[i] && !(instance_.py(x) > *best_[i])) continue;
    const double stay = std::max(instance_.py(i) - gamma, 0.0);
    gain += instance_.px(i) * (std::max(stay, target) - Contribution(i));
  }
  return gain;
}

void JointObjectiveState::Add(int x) {
  if (in_set_[x]) throw std::invalid_argument("explanation already selected");
  if (instance_.py(x) < instance_.gamma()) {
    throw std::invalid_argument("joint objective: explanation below gamma");
  }
  value_ += Gain(x);
  for (int i = 0; i < instance_.m(); ++i) {
    if (i == x || !(instance_.cost(i, x) <= kUnitCost)) continue;
    if (!best_[i] || instance_.py(x) > *best_[i]) best_[i] = instance_.py(x);
  }
  in_set_[x] = 1;
  selected_.push_back(x);
}

JointSolution RandomizedJoint(const Instance& instance, int k, RngStream& rng) {
  if (k < 0) throw std::invalid_argument("randomized joint: k < 0");
  const int m = instance.m();
  const std::vector<int> viable = GroundSetViable(instance).Sorted();
  JointObjectiveState state(instance);
  int dummies_left = 2 * k;

  struct Candidate {
    double gain;
    int key;  // Feature-value index, or m + d for the d-th dummy.
  };
  std::vector<Candidate> pool;
  for (int round = 0; round < k; ++round) {
    pool.clear();
    for (int x : viable) {
      if (!state.contains(x)) pool.push_back({state.Gain(x), x});
    }
    for (int d = 0; d < dummies_left; ++d) pool.push_back({0.0, m + d});
    if (pool.empty()) break;
    std::sort(pool.begin(), pool.end(),
              [](const Candidate& a, const Candidate& b) {
                if (a.gain != b.gain) return a.gain > b.gain;
                return a.key < b.key;
              });
    const size_t top = std::min<size_t>(k, pool.size());
    const Candidate& pick = pool[rng.UniformIndex(top)];
    if (pick.key < m) {
      state.Add(pick.key);
    } else {
      --dummies_left;
    }
  }

  JointSolution out;
  out.explanations = state.selected();
  out.policy = OptimalPolicyFor(instance, out.explanations);
  out.utility = Utility(instance, out.policy, out.explanations);
  return out;
}

ExplanationSet BruteForceFixed(const Instance& instance, const Policy& policy,
                               int k) {
  if (k < 0) throw std::invalid_argument("brute force: k < 0");
  const std::vector<int> ground = GroundSetAccepted(instance, policy).Sorted();
  return ExhaustiveArgmax(
      ground, [k](uint32_t mask) { return std::popcount(mask) <= k; },
      [&](const ExplanationSet& a) { return Utility(instance, policy, a); });
}

ExplanationSet BruteForceMatroid(const Instance& instance, const Policy& policy,
                                 const PartitionMatroid& matroid) {
  const std::vector<int> ground = GroundSetAccepted(instance, policy).Sorted();
  return ExhaustiveArgmax(
      ground,
      [&](uint32_t mask) { return matroid.IsFeasible(FromMask(ground, mask)); },
      [&](const ExplanationSet& a) { return Utility(instance, policy, a); });
}

JointSolution BruteForceJoint(const Instance& instance, int k) {
  if (k < 0) throw std::invalid_argument("brute force: k < 0");
  const std::vector<int> ground = GroundSetViable(instance).Sorted();
  JointSolution out;
  out.explanations = ExhaustiveArgmax(
      ground, [k](uint32_t mask) { return std::popcount(mask) <= k; },
      [&](const ExplanationSet& a) { return JointObjective(instance, a); });
  out.policy = OptimalPolicyFor(instance, out.explanations);
  out.utility = Utility(instance, out.policy, out.explanations);
  return out;
}

JointSolution ExhaustiveBestPolicy(const Instance& instance,
                                   const ExplanationSet& explanations) {
  explanations.CheckWithin(instance.m());
  std::vector<int> free;
  for (int i = 0; i < instance.m(); ++i) {
    if (!explanations.contains(i)) free.push_back(i);
  }
  if (static_cast<int>(free.size()) > kMaxBruteForceGroundSet) {
    throw std::invalid_argument("exhaustive policy search: too many values");
  }
  std::vector<double> pi(instance.m(), 1.0);
  JointSolution best;
  bool have_best = false;
  const uint32_t end = 1u << free.size();
  for (uint32_t mask = 0; mask < end; ++mask) {
    for (size_t b = 0; b < free.size(); ++b) {
      pi[free[b]] = (mask & (1u << b)) ? 1.0 : 0.0;
    }
    Policy policy(pi);
    const double value = Utility(instance, policy, explanations);
    if (!have_best || value > best.utility) {
      best = {std::move(policy), explanations, value};
      have_best = true;
    }
  }
  return best;
}

}  // namespace cfx
