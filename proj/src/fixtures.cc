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

#include "cfx/fixtures.h"

#include <algorithm>
#include <functional>
#include <limits>
#include <stdexcept>

#include "cfx/baselines.h"

namespace cfx {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Index ranges of equal outcome among viable values, best first.
std::vector<std::pair<int, int>> ViableLevels(const Instance& instance) {
  std::vector<std::pair<int, int>> levels;
  for (int i = 0; i < instance.m() && instance.py(i) >= instance.gamma();) {
    int end = i + 1;
    while (end < instance.m() && instance.py(end) == instance.py(i)) ++end;
    levels.emplace_back(i, end);
    i = end;
  }
  return levels;
}

}  // namespace

Instance NonMonotoneFixture() {
  InstanceData data;
  data.px = {0.1, 0.8, 0.1};
  data.py = {1.0, 0.5, 0.4};
  data.cost = CostMatrix::FromDoubles(
      {{0.0, 0.2, 0.3}, {0.3, 0.0, 0.7}, {0.4, 0.5, 0.0}});
  data.gamma = 0.1;
  return Instance::Create(std::move(data));
}

SetCoverFixture MakeSetCoverFixture(double gamma) {
  InstanceData data;
  data.px = {0.0, 0.0, 0.5, 0.5};
  data.py = {1.0, 1.0, gamma, gamma};
  // Rows/columns: S1, S2, u1, u2. u1 is in S1; u2 is in S1 and S2.
  data.cost = CostMatrix::FromDoubles({{0.0, 2.0, 2.0, 2.0},
                                       {2.0, 0.0, 2.0, 2.0},
                                       {0.0, 2.0, 0.0, 2.0},
                                       {0.0, 0.0, 2.0, 0.0}});
  data.gamma = gamma;
  return {Instance::Create(std::move(data)), Policy({1.0, 1.0, 0.0, 0.0}), 0,
          1};
}

GroupFixture MakeTwoGroupFixture() {
  // Unsorted layout: a0..a3 (group 0 accepted), b0..b1 (group 1 accepted),
  // r0..r3 (group 0 rejected), s0..s1 (group 1 rejected).
  const std::vector<double> px = {0.03, 0.03, 0.03, 0.03, 0.02, 0.02,
                                  0.2,  0.2,  0.2,  0.2,  0.02, 0.02};
  const std::vector<double> py = {0.95, 0.94, 0.93, 0.92, 0.90, 0.89,
                                  0.25, 0.24, 0.23, 0.22, 0.21, 0.20};
  const std::vector<int> group = {0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 1};
  const int m = static_cast<int>(px.size());
  std::vector<std::vector<double>> cost(m, std::vector<double>(m, 2.0));
  for (int i = 0; i < m; ++i) cost[i][i] = 0.0;
  for (int j = 0; j < 4; ++j) cost[6 + j][j] = 0.5;
  for (int j = 0; j < 2; ++j) cost[10 + j][4 + j] = 0.5;

  CanonicalInstance canonical =
      SortCanonical(px, py, CostMatrix::FromDoubles(cost), 0.3);
  std::vector<std::vector<int>> groups(2);
  for (int i = 0; i < m; ++i) {
    groups[group[canonical.permutation[i]]].push_back(i);
  }
  Policy policy = ThresholdPolicy(canonical.instance);
  return {std::move(canonical.instance),
          std::move(policy),
          std::move(groups),
          {2, 2}};
}

Instance FixtureByName(const std::string& name) {
  if (name == "nonmonotone") return NonMonotoneFixture();
  if (name == "setcover") return MakeSetCoverFixture().instance;
  if (name == "two-group") return MakeTwoGroupFixture().instance;
  throw std::invalid_argument("unknown fixture '" + name + "'");
}

std::vector<std::string> FixtureNames() {
  return {"nonmonotone", "setcover", "two-group"};
}

Instance RandomSmallInstance(RngStream& rng, int m,
                             const SmallInstanceOptions& options) {
  if (m < 1) throw std::invalid_argument("random instance: m < 1");
  std::vector<double> px(m);
  double total = 0.0;
  do {
    total = 0.0;
    for (double& p : px) {
      p = rng.Bernoulli(options.zero_mass) ? 0.0 : rng.Uniform01();
      total += p;
    }
  } while (total == 0.0);
  for (double& p : px) p /= total;

  std::vector<double> py(m);
  for (int i = 0; i < m; ++i) {
    py[i] = (i > 0 && rng.Bernoulli(options.tied_outcome)) ? py[i - 1]
                                                           : rng.Uniform01();
  }

  std::vector<std::vector<double>> cost(m, std::vector<double>(m, 0.0));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      const double u = rng.Uniform01();
      if (u < options.zero_cost) {
        cost[i][j] = 0.0;
      } else if (u < options.zero_cost + options.infinite_cost) {
        cost[i][j] = kInf;
      } else {
        cost[i][j] = rng.Uniform(0.0, rng.Bernoulli(0.5) ? 1.0 : 2.0);
      }
    }
  }
  const double gamma = rng.Uniform(0.05, 0.95);
  return SortCanonical(std::move(px), std::move(py),
                       CostMatrix::FromDoubles(cost), gamma)
      .instance;
}

Policy RandomMonotonePolicy(RngStream& rng, const Instance& instance,
                            bool deterministic) {
  const std::vector<std::pair<int, int>> levels = ViableLevels(instance);
  const int count = static_cast<int>(levels.size());
  std::vector<double> level_value(count, 0.0);
  const int certain = static_cast<int>(rng.UniformIndex(count + 1));
  if (!deterministic) {
    for (double& v : level_value) v = rng.Uniform01();
    std::sort(level_value.begin(), level_value.end(), std::greater<>());
  }
  for (int l = 0; l < certain; ++l) level_value[l] = 1.0;
  std::vector<double> pi(instance.m(), 0.0);
  for (int l = 0; l < count; ++l) {
    for (int i = levels[l].first; i < levels[l].second; ++i) {
      pi[i] = level_value[l];
    }
  }
  return Policy(std::move(pi));
}

Policy RandomRationalDeterministicPolicy(RngStream& rng,
                                         const Instance& instance) {
  std::vector<double> pi(instance.m(), 0.0);
  for (int i = 0; i < instance.m(); ++i) {
    if (instance.py(i) >= instance.gamma() && rng.Bernoulli(0.5)) pi[i] = 1.0;
  }
  return Policy(std::move(pi));
}

std::vector<int> RandomSubset(RngStream& rng, const std::vector<int>& ground,
                              double p) {
  std::vector<int> out;
  for (int x : ground) {
    if (rng.Bernoulli(p)) out.push_back(x);
  }
  return out;
}

}  // namespace cfx
