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

#include "cfx/baselines.h"

#include <optional>
#include <stdexcept>
#include <vector>

#include "cfx/behavior.h"

namespace cfx {
namespace {

// Rejected individuals that at least one accepted value can serve at finite
// cost.
std::vector<int> ServableRejected(const Instance& instance,
                                  const Policy& policy,
                                  const std::vector<int>& ground) {
  std::vector<int> out;
  for (int i = 0; i < instance.m(); ++i) {
    if (policy.accepts(i)) continue;
    for (int j : ground) {
      if (instance.cost(i, j).is_finite()) {
        out.push_back(i);
        break;
      }
    }
  }
  return out;
}

MinCostValue Evaluate(const Instance& instance,
                      const std::vector<int>& servable,
                      const std::vector<int>& members) {
  MinCostValue value;
  for (int i : servable) {
    std::optional<Cost> closest;
    for (int j : members) {
      const Cost& c = instance.cost(i, j);
      if (!closest || c < *closest) closest = c;
    }
    if (!closest || closest->is_infinite()) {
      value.unserved_mass += instance.px(i);
    } else {
      value.total_cost += instance.px(i) * closest->value();
    }
  }
  return value;
}

}  // namespace

Policy ThresholdPolicy(const Instance& instance) {
  std::vector<double> pi(instance.m());
  for (int i = 0; i < instance.m(); ++i) {
    pi[i] = instance.py(i) >= instance.gamma() ? 1.0 : 0.0;
  }
  return Policy(std::move(pi));
}

double BlackBoxUtility(const Instance& instance) {
  return Utility(instance, ThresholdPolicy(instance), ExplanationSet());
}

MinCostValue MinCostObjective(const Instance& instance, const Policy& policy,
                              const ExplanationSet& explanations) {
  explanations.CheckWithin(instance.m());
  const std::vector<int> ground = GroundSetAccepted(instance, policy).Sorted();
  return Evaluate(instance, ServableRejected(instance, policy, ground),
                  explanations.Sorted());
}

ExplanationSet MinCostExplanations(const Instance& instance,
                                   const Policy& policy, int k,
                                   MinCostOptions options) {
  if (k < 0) throw std::invalid_argument("min cost: k < 0");
  if (policy.size() != instance.m()) {
    throw std::invalid_argument("policy size does not match instance");
  }
  const std::vector<int> ground = GroundSetAccepted(instance, policy).Sorted();
  const std::vector<int> servable = ServableRejected(instance, policy, ground);
  std::vector<int> members;
  std::vector<char> chosen(instance.m(), 0);
  for (int round = 0; round < k; ++round) {
    std::optional<int> pick;
    MinCostValue pick_value;
    for (int x : ground) {
      if (chosen[x]) continue;
      members.push_back(x);
      const MinCostValue value = Evaluate(instance, servable, members);
      members.pop_back();
      if (!pick || value < pick_value) {
        pick = x;
        pick_value = value;
      }
    }
    if (!pick) break;
    members.push_back(*pick);
    chosen[*pick] = 1;
  }

  if (options.swap_refinement) {
    MinCostValue current = Evaluate(instance, servable, members);
    bool improved = true;
    while (improved) {
      improved = false;
      for (size_t slot = 0; slot < members.size() && !improved; ++slot) {
        for (int x : ground) {
          if (chosen[x]) continue;
          const int old = members[slot];
          members[slot] = x;
          const MinCostValue value = Evaluate(instance, servable, members);
          if (value < current) {
            chosen[old] = 0;
            chosen[x] = 1;
            current = value;
            improved = true;
            break;
          }
          members[slot] = old;
        }
      }
    }
  }
  return ExplanationSet(std::move(members));
}

double Coverage(const Instance& instance, const Policy& policy,
                const ExplanationSet& explanations) {
  explanations.CheckWithin(instance.m());
  double covered = 0.0;
  for (int i = 0; i < instance.m(); ++i) {
    if (policy.accepts(i)) continue;
    for (int j : explanations) {
      if (InRegion(instance, policy, i, j)) {
        covered += instance.px(i);
        break;
      }
    }
  }
  return covered;
}

ExplanationSet DiverseExplanations(const Instance& instance,
                                   const Policy& policy, int k) {
  if (k < 0) throw std::invalid_argument("diverse: k < 0");
  if (policy.size() != instance.m()) {
    throw std::invalid_argument("policy size does not match instance");
  }
  const int m = instance.m();
  const std::vector<int> ground = GroundSetAccepted(instance, policy).Sorted();
  std::vector<char> covered(m, 0);
  std::vector<char> chosen(m, 0);
  std::vector<int> members;
  for (int round = 0; round < k; ++round) {
    std::optional<int> pick;
    double pick_mass = 0.0;
    for (int x : ground) {
      if (chosen[x]) continue;
      double mass = 0.0;
      for (int i = 0; i < m; ++i) {
        if (!covered[i] && !policy.accepts(i) &&
            InRegion(instance, policy, i, x)) {
          mass += instance.px(i);
        }
      }
      if (mass > pick_mass) {
        pick = x;
        pick_mass = mass;
      }
    }
    if (!pick) break;
    chosen[*pick] = 1;
    members.push_back(*pick);
    for (int i = 0; i < m; ++i) {
      if (!policy.accepts(i) && InRegion(instance, policy, i, *pick)) {
        covered[i] = 1;
      }
    }
  }
  return ExplanationSet(std::move(members));
}

}  // namespace cfx
