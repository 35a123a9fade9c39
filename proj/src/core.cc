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

#include "cfx/core.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <sstream>

namespace cfx {

Cost::Cost(double value) : value_(value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument(
        "Cost: non-finite value; use Cost::Infinite() for unreachable pairs");
  }
}

double Cost::value() const {
  assert(!infinite_);
  return value_;
}

CostMatrix::CostMatrix(int size)
    : size_(size), cells_(static_cast<size_t>(size) * size) {}

CostMatrix::CostMatrix(const std::vector<std::vector<Cost>>& rows)
    : CostMatrix(static_cast<int>(rows.size())) {
  for (int i = 0; i < size_; ++i) {
    if (static_cast<int>(rows[i].size()) != size_) {
      std::ostringstream msg;
      msg << "cost matrix row " << i << " has " << rows[i].size()
          << " entries, expected " << size_;
      throw InvalidInstanceError(msg.str());
    }
    std::copy(rows[i].begin(), rows[i].end(),
              cells_.begin() + static_cast<size_t>(i) * size_);
  }
}

CostMatrix CostMatrix::FromDoubles(
    const std::vector<std::vector<double>>& rows) {
  std::vector<std::vector<Cost>> costs(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    for (double v : rows[i]) {
      costs[i].push_back(std::isinf(v) && v > 0 ? Cost::Infinite() : Cost(v));
    }
  }
  return CostMatrix(costs);
}

CostMatrix CostMatrix::Permuted(std::span<const int> perm) const {
  assert(static_cast<int>(perm.size()) == size_);
  CostMatrix out(size_);
  for (int a = 0; a < size_; ++a) {
    for (int b = 0; b < size_; ++b) out(a, b) = (*this)(perm[a], perm[b]);
  }
  return out;
}

std::optional<std::string> Validate(const InstanceData& data) {
  std::ostringstream msg;
  const size_t m = data.px.size();
  if (m == 0) return "instance has no feature values";
  if (data.py.size() != m) {
    msg << "py has " << data.py.size() << " entries, px has " << m;
    return msg.str();
  }
  if (static_cast<size_t>(data.cost.size()) != m) {
    msg << "cost matrix is " << data.cost.size() << "x" << data.cost.size()
        << ", expected " << m << "x" << m;
    return msg.str();
  }
  double total = 0.0;
  for (size_t i = 0; i < m; ++i) {
    if (!std::isfinite(data.px[i]) || data.px[i] < 0.0) {
      msg << "px negative or non-finite at index " << i;
      return msg.str();
    }
    total += data.px[i];
  }
  if (std::abs(total - 1.0) > kMassTolerance) {
    msg << "px sums to " << total;
    return msg.str();
  }
  for (size_t i = 0; i < m; ++i) {
    if (!(data.py[i] >= 0.0 && data.py[i] <= 1.0)) {
      msg << "py outside [0,1] at index " << i;
      return msg.str();
    }
  }
  for (size_t i = 0; i + 1 < m; ++i) {
    if (data.py[i] < data.py[i + 1]) {
      msg << "py not nonincreasing at index " << i;
      return msg.str();
    }
  }
  const int n = static_cast<int>(m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Cost& c = data.cost(i, j);
      if (i == j && c != Cost(0.0)) {
        msg << "cost diagonal nonzero at index " << i;
        return msg.str();
      }
      if (c.is_finite() && c.value() < 0.0) {
        msg << "cost negative at (" << i << ", " << j << ")";
        return msg.str();
      }
    }
  }
  if (!(data.gamma > 0.0 && data.gamma < 1.0)) {
    msg << "gamma " << data.gamma << " outside (0,1)";
    return msg.str();
  }
  return std::nullopt;
}

Instance Instance::Create(InstanceData data) {
  double total = 0.0;
  bool finite = true;
  for (double p : data.px) {
    finite = finite && std::isfinite(p);
    total += p;
  }
  const double gap = std::abs(total - 1.0);
  if (finite && gap > kMassTolerance && gap <= kNormalizeTolerance) {
    for (double& p : data.px) p /= total;
  }
  if (auto error = Validate(data)) throw InvalidInstanceError(*error);
  return Instance(std::move(data));
}

CanonicalInstance SortCanonical(std::vector<double> px, std::vector<double> py,
                                const CostMatrix& cost, double gamma) {
  const size_t m = px.size();
  if (py.size() != m || static_cast<size_t>(cost.size()) != m) {
    std::ostringstream msg;
    msg << "dimension mismatch: px " << m << ", py " << py.size() << ", cost "
        << cost.size();
    throw InvalidInstanceError(msg.str());
  }
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(),
                   [&](int a, int b) { return py[a] > py[b]; });
  InstanceData data;
  data.px.resize(m);
  data.py.resize(m);
  for (size_t i = 0; i < m; ++i) {
    data.px[i] = px[perm[i]];
    data.py[i] = py[perm[i]];
  }
  data.cost = cost.Permuted(perm);
  data.gamma = gamma;
  return {Instance::Create(std::move(data)), std::move(perm)};
}

Policy::Policy(std::vector<double> pi) : pi_(std::move(pi)) {
  for (size_t i = 0; i < pi_.size(); ++i) {
    if (!(pi_[i] >= 0.0 && pi_[i] <= 1.0)) {
      std::ostringstream msg;
      msg << "policy entry outside [0,1] at index " << i;
      throw std::invalid_argument(msg.str());
    }
  }
}

bool Policy::IsDeterministic() const {
  return std::all_of(pi_.begin(), pi_.end(),
                     [](double p) { return p == 0.0 || p == 1.0; });
}

bool IsRational(const Instance& instance, const Policy& policy) {
  for (int i = 0; i < instance.m(); ++i) {
    if (instance.py(i) < instance.gamma() && policy[i] != 0.0) return false;
  }
  return true;
}

bool IsOutcomeMonotonic(const Instance& instance, const Policy& policy) {
  // Adjacent pairs and tie runs suffice on sorted py.
  const int m = instance.m();
  for (int i = 0; i + 1 < m; ++i) {
    if (policy[i] < policy[i + 1]) return false;
    if (instance.py(i) == instance.py(i + 1) && policy[i] != policy[i + 1]) {
      return false;
    }
  }
  return true;
}

ExplanationSet::ExplanationSet(std::vector<int> indices)
    : indices_(std::move(indices)) {
  std::vector<int> sorted = Sorted();
  if (!sorted.empty() && sorted.front() < 0) {
    throw std::invalid_argument("explanation set: negative index");
  }
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("explanation set: duplicate index");
  }
}

bool ExplanationSet::contains(int i) const {
  return std::find(indices_.begin(), indices_.end(), i) != indices_.end();
}

std::vector<int> ExplanationSet::Sorted() const {
  std::vector<int> out = indices_;
  std::sort(out.begin(), out.end());
  return out;
}

ExplanationSet ExplanationSet::With(int i) const {
  std::vector<int> out = indices_;
  out.push_back(i);
  return ExplanationSet(std::move(out));
}

void ExplanationSet::CheckWithin(int m) const {
  for (int i : indices_) {
    if (i >= m) {
      std::ostringstream msg;
      msg << "explanation index " << i << " out of range for m=" << m;
      throw std::invalid_argument(msg.str());
    }
  }
}

PartitionMatroid::PartitionMatroid(int m, std::vector<std::vector<int>> groups,
                                   std::vector<int> capacities)
    : groups_(std::move(groups)),
      capacities_(std::move(capacities)),
      group_of_(m, -1) {
  if (groups_.size() != capacities_.size()) {
    throw std::invalid_argument("matroid: capacities misaligned with groups");
  }
  for (size_t g = 0; g < groups_.size(); ++g) {
    if (capacities_[g] < 0) {
      throw std::invalid_argument("matroid: negative capacity");
    }
    for (int i : groups_[g]) {
      if (i < 0 || i >= m) {
        throw std::invalid_argument("matroid: index out of range");
      }
      if (group_of_[i] != -1) {
        std::ostringstream msg;
        msg << "matroid: index " << i << " appears in two groups";
        throw std::invalid_argument(msg.str());
      }
      group_of_[i] = static_cast<int>(g);
    }
  }
  for (int i = 0; i < m; ++i) {
    if (group_of_[i] == -1) {
      std::ostringstream msg;
      msg << "matroid: index " << i << " is in no group";
      throw std::invalid_argument(msg.str());
    }
  }
}

PartitionMatroid PartitionMatroid::Uniform(int m, int capacity) {
  std::vector<int> all(m);
  std::iota(all.begin(), all.end(), 0);
  return PartitionMatroid(m, {std::move(all)}, {capacity});
}

int PartitionMatroid::rank() const {
  return std::accumulate(capacities_.begin(), capacities_.end(), 0);
}

bool PartitionMatroid::IsFeasible(const ExplanationSet& set) const {
  std::vector<int> used(groups_.size(), 0);
  for (int i : set) {
    if (i < 0 || i >= m()) return false;
    if (++used[group_of_[i]] > capacities_[group_of_[i]]) return false;
  }
  return true;
}

ExplanationSet GroundSetAccepted(const Instance& instance,
                                 const Policy& policy) {
  std::vector<int> out;
  for (int i = 0; i < instance.m(); ++i) {
    if (policy.accepts(i)) out.push_back(i);
  }
  return ExplanationSet(std::move(out));
}

ExplanationSet GroundSetViable(const Instance& instance) {
  std::vector<int> out;
  for (int i = 0; i < instance.m(); ++i) {
    if (instance.py(i) >= instance.gamma()) out.push_back(i);
  }
  return ExplanationSet(std::move(out));
}

}  // namespace cfx
