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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cfx {
namespace {

void CheckShapes(const Instance& instance, const Policy& policy,
                 const ExplanationSet& explanations) {
  if (policy.size() != instance.m()) {
    throw std::invalid_argument("policy size does not match instance");
  }
  explanations.CheckWithin(instance.m());
}

// Final position of an individual at i (i itself if she stays).
std::vector<int> Destinations(const BestResponseResult& response) {
  std::vector<int> dest(response.moved.size());
  for (size_t i = 0; i < dest.size(); ++i) {
    dest[i] = response.moved[i].value_or(static_cast<int>(i));
  }
  return dest;
}

double UtilityOfDistribution(const Instance& instance, const Policy& policy,
                             const std::vector<double>& induced) {
  double total = 0.0;
  for (int j = 0; j < instance.m(); ++j) {
    total += induced[j] * policy[j] * (instance.py(j) - instance.gamma());
  }
  return total;
}

// Where an individual at i ends up when she knows `own` (her assigned
// explanation) and `extra` (a leaked one).
int LeakedDestination(const Instance& instance, const Policy& policy, int i,
                      int own, int extra) {
  const bool own_ok = own != i && InRegion(instance, policy, i, own);
  const bool extra_ok = extra != i && InRegion(instance, policy, i, extra);
  if (!own_ok && !extra_ok) return i;
  if (!extra_ok || extra == own) return own;
  if (!own_ok) return extra;
  const double own_net = policy[own] - instance.cost(i, own).value();
  const double extra_net = policy[extra] - instance.cost(i, extra).value();
  if (extra_net > own_net) return extra;
  if (extra_net < own_net) return own;
  return instance.cost(i, extra) < instance.cost(i, own) ? extra : own;
}

}  // namespace

bool InRegion(const Instance& instance, const Policy& policy, int i, int j) {
  const Cost& c = instance.cost(i, j);
  return c.is_finite() && policy[j] - c.value() >= policy[i];
}

std::vector<int> RegionOfAdaptation(const Instance& instance,
                                    const Policy& policy, int i) {
  std::vector<int> region;
  for (int j = 0; j < instance.m(); ++j) {
    if (InRegion(instance, policy, i, j)) region.push_back(j);
  }
  return region;
}

bool PreferExplanation(const Instance& instance, int from, int a, int b) {
  if (instance.py(a) != instance.py(b)) return instance.py(a) > instance.py(b);
  const Cost& ca = instance.cost(from, a);
  const Cost& cb = instance.cost(from, b);
  if (ca != cb) return ca < cb;
  return a < b;
}

Assignment AssignExplanations(const Instance& instance, const Policy& policy,
                              const ExplanationSet& explanations) {
  CheckShapes(instance, policy, explanations);
  const int m = instance.m();
  Assignment out;
  out.explanation_of.assign(m, std::nullopt);
  if (explanations.empty()) return out;
  const std::vector<int> members = explanations.Sorted();
  for (int i = 0; i < m; ++i) {
    if (policy.accepts(i)) continue;
    std::optional<int> best;
    for (int j : members) {
      if (!InRegion(instance, policy, i, j)) continue;
      if (!best || PreferExplanation(instance, i, j, *best)) best = j;
    }
    if (!best) {
      // Nothing reachable: the cheapest explanation, lowest index on ties.
      best = members.front();
      for (int j : members) {
        if (instance.cost(i, j) < instance.cost(i, *best)) best = j;
      }
    }
    out.explanation_of[i] = best;
  }
  return out;
}

BestResponseResult BestRespond(const Instance& instance, const Policy& policy,
                               const ExplanationSet& explanations) {
  const Assignment assignment =
      AssignExplanations(instance, policy, explanations);
  const int m = instance.m();
  BestResponseResult out;
  out.moved.assign(m, std::nullopt);
  out.induced_px.assign(m, 0.0);
  for (int i = 0; i < m; ++i) {
    const std::optional<int>& e = assignment.explanation_of[i];
    if (e && *e != i && InRegion(instance, policy, i, *e)) out.moved[i] = *e;
    out.induced_px[out.moved[i].value_or(i)] += instance.px(i);
  }
  out.utility = UtilityOfDistribution(instance, policy, out.induced_px);
  return out;
}

double Utility(const Instance& instance, const Policy& policy,
               const ExplanationSet& explanations) {
  return BestRespond(instance, policy, explanations).utility;
}

FixedPolicyObjective::FixedPolicyObjective(const Instance& instance,
                                           const Policy& policy)
    : instance_(instance),
      policy_(policy),
      in_set_(instance.m(), 0),
      target_(instance.m(), std::nullopt) {
  if (policy.size() != instance.m()) {
    throw std::invalid_argument("policy size does not match instance");
  }
  for (int i = 0; i < instance.m(); ++i) {
    value_ += instance.px(i) * Contribution(i, std::nullopt);
  }
}

FixedPolicyObjective::FixedPolicyObjective(const Instance& instance,
                                           const Policy& policy,
                                           const ExplanationSet& explanations)
    : FixedPolicyObjective(instance, policy) {
  explanations.CheckWithin(instance.m());
  for (int x : explanations) Add(x);
}

double FixedPolicyObjective::Contribution(int i,
                                          std::optional<int> target) const {
  const double gamma = instance_.gamma();
  if (policy_.accepts(i) || !target) {
    return policy_[i] * (instance_.py(i) - gamma);
  }
  return policy_[*target] * (instance_.py(*target) - gamma);
}

double FixedPolicyObjective::Gain(int x) const {
  double gain = 0.0;
  for (int i = 0; i < instance_.m(); ++i) {
    if (policy_.accepts(i) || !InRegion(instance_, policy_, i, x)) continue;
    const std::optional<int>& current = target_[i];
    if (current && !PreferExplanation(instance_, i, x, *current)) continue;
    gain += instance_.px(i) * (Contribution(i, x) - Contribution(i, current));
  }
  return gain;
}

void FixedPolicyObjective::Add(int x) {
  if (in_set_[x]) throw std::invalid_argument("explanation already selected");
  value_ += Gain(x);
  for (int i = 0; i < instance_.m(); ++i) {
    if (policy_.accepts(i) || !InRegion(instance_, policy_, i, x)) continue;
    if (!target_[i] || PreferExplanation(instance_, i, x, *target_[i])) {
      target_[i] = x;
    }
  }
  in_set_[x] = 1;
  selected_.push_back(x);
}

double MarginalGainFixed(const Instance& instance, const Policy& policy,
                         const ExplanationSet& explanations, int x) {
  FixedPolicyObjective objective(instance, policy, explanations);
  return objective.Gain(x);
}

double TransportMatrix::total() const {
  return std::accumulate(mass.begin(), mass.end(), 0.0);
}

int OutcomeBin(double outcome, int bins) {
  const int b = static_cast<int>(std::floor(outcome * bins));
  return std::clamp(b, 0, bins - 1);
}

TransportMatrix ComputeTransportMatrix(const Instance& instance,
                                       const Policy& policy,
                                       const ExplanationSet& explanations,
                                       int bins) {
  if (bins < 1) throw std::invalid_argument("transport matrix: bins < 1");
  const BestResponseResult response =
      BestRespond(instance, policy, explanations);
  TransportMatrix out;
  out.bins = bins;
  out.mass.assign(static_cast<size_t>(bins) * bins, 0.0);
  for (int b = 0; b <= bins; ++b) {
    out.edges.push_back(static_cast<double>(b) / bins);
  }
  for (int i = 0; i < instance.m(); ++i) {
    if (!response.moved[i]) continue;
    const int from = OutcomeBin(instance.py(i), bins);
    const int to = OutcomeBin(instance.py(*response.moved[i]), bins);
    out.mass[static_cast<size_t>(from) * bins + to] += instance.px(i);
  }
  return out;
}

double LeakageUtility(const Instance& instance, const Policy& policy,
                      const ExplanationSet& explanations,
                      double leak_probability) {
  if (!(leak_probability >= 0.0 && leak_probability <= 1.0)) {
    throw std::invalid_argument("leakage probability outside [0,1]");
  }
  const BestResponseResult response =
      BestRespond(instance, policy, explanations);
  if (explanations.empty()) return response.utility;
  const Assignment assignment =
      AssignExplanations(instance, policy, explanations);
  const std::vector<int> members = explanations.Sorted();
  const std::vector<int> dest = Destinations(response);
  const int m = instance.m();
  const double share = leak_probability / static_cast<double>(members.size());

  // Same accumulation order as BestRespond.
  std::vector<double> induced(m, 0.0);
  for (int i = 0; i < m; ++i) {
    const std::optional<int>& own = assignment.explanation_of[i];
    if (!own) {
      induced[i] += instance.px(i);
      continue;
    }
    induced[dest[i]] += (1.0 - leak_probability) * instance.px(i);
    for (int extra : members) {
      induced[LeakedDestination(instance, policy, i, *own, extra)] +=
          share * instance.px(i);
    }
  }
  return UtilityOfDistribution(instance, policy, induced);
}

MonteCarloEstimate LeakageMonteCarlo(const Instance& instance,
                                     const Policy& policy,
                                     const ExplanationSet& explanations,
                                     double leak_probability, int64_t samples,
                                     RngStream& rng) {
  if (!(leak_probability >= 0.0 && leak_probability <= 1.0)) {
    throw std::invalid_argument("leakage probability outside [0,1]");
  }
  if (samples < 2) throw std::invalid_argument("need at least two samples");
  const Assignment assignment =
      AssignExplanations(instance, policy, explanations);
  const std::vector<int> members = explanations.Sorted();
  const int m = instance.m();
  std::vector<double> cumulative(m);
  std::partial_sum(instance.px().begin(), instance.px().end(),
                   cumulative.begin());
  int last_positive = m - 1;
  while (last_positive > 0 && instance.px(last_positive) == 0.0) {
    --last_positive;
  }

  double mean = 0.0;
  double m2 = 0.0;
  for (int64_t s = 0; s < samples; ++s) {
    const double u = rng.Uniform01() * cumulative.back();
    int i = static_cast<int>(
        std::upper_bound(cumulative.begin(), cumulative.end(), u) -
        cumulative.begin());
    i = std::min(i, last_positive);
    int where = i;
    if (const std::optional<int>& own = assignment.explanation_of[i]) {
      int extra = *own;
      if (rng.Bernoulli(leak_probability)) {
        extra = members[rng.UniformIndex(members.size())];
      }
      where = LeakedDestination(instance, policy, i, *own, extra);
    }
    const double value =
        policy[where] * (instance.py(where) - instance.gamma());
    const double delta = value - mean;
    mean += delta / static_cast<double>(s + 1);
    m2 += delta * (value - mean);
  }
  MonteCarloEstimate out;
  out.mean = mean;
  out.samples = samples;
  out.standard_error =
      std::sqrt(m2 / static_cast<double>(samples - 1) / samples);
  return out;
}

std::vector<double> GroupImprovement(
    const Instance& instance, const Policy& policy,
    const ExplanationSet& explanations,
    const std::vector<std::vector<int>>& groups) {
  const BestResponseResult response =
      BestRespond(instance, policy, explanations);
  const std::vector<int> dest = Destinations(response);
  std::vector<double> out;
  out.reserve(groups.size());
  for (const std::vector<int>& group : groups) {
    double gained = 0.0;
    double rejected = 0.0;
    for (int i : group) {
      if (policy.accepts(i)) continue;
      gained += instance.px(i) * (instance.py(dest[i]) - instance.py(i));
      rejected += instance.px(i);
    }
    out.push_back(rejected > 0.0 ? gained / rejected : 0.0);
  }
  return out;
}

}  // namespace cfx
