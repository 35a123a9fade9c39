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

// Problem-instance representation shared by every other module.
//
// Feature values are indexed 0..m-1 in nonincreasing order of their outcome
// probability P(y=1|x). Instances, policies, explanation sets and matroids
// are immutable once constructed.

#ifndef CFX_CORE_H_
#define CFX_CORE_H_

#include <compare>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cfx {

// Tolerance on the total population mass of a validated instance.
inline constexpr double kMassTolerance = 1e-9;
// Raw masses within this distance of 1 are renormalized on construction.
inline constexpr double kNormalizeTolerance = 1e-6;

class InvalidInstanceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Adaptation cost between two feature values. Either a finite nonnegative
// number or the infinite sentinel. There is deliberately no arithmetic on
// Cost: an infinite cost never enters a sum.
class Cost {
 public:
  constexpr Cost() = default;
  // Throws std::invalid_argument for NaN or +-inf; use Infinite() instead.
  explicit Cost(double value);

  static constexpr Cost Infinite() {
    Cost c;
    c.infinite_ = true;
    return c;
  }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  // Precondition: is_finite().
  double value() const;

  friend bool operator==(const Cost& a, const Cost& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend std::partial_ordering operator<=>(const Cost& a, const Cost& b) {
    if (a.infinite_ || b.infinite_) {
      return static_cast<int>(a.infinite_) <=> static_cast<int>(b.infinite_);
    }
    return a.value_ <=> b.value_;
  }

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

// Square matrix of costs, row-major. cost(i, j) is the cost of moving from
// feature value i to feature value j.
class CostMatrix {
 public:
  CostMatrix() = default;
  // All-zero matrix.
  explicit CostMatrix(int size);
  explicit CostMatrix(const std::vector<std::vector<Cost>>& rows);
  // Convenience for tests: +inf entries become Cost::Infinite().
  static CostMatrix FromDoubles(const std::vector<std::vector<double>>& rows);

  int size() const { return size_; }
  const Cost& operator()(int from, int to) const {
    return cells_[static_cast<size_t>(from) * size_ + to];
  }
  Cost& operator()(int from, int to) {
    return cells_[static_cast<size_t>(from) * size_ + to];
  }

  // Returns a matrix with both axes reindexed: out(a, b) = in(perm[a],
  // perm[b]).
  CostMatrix Permuted(std::span<const int> perm) const;

  friend bool operator==(const CostMatrix&, const CostMatrix&) = default;

 private:
  int size_ = 0;
  std::vector<Cost> cells_;
};

// Unvalidated instance fields as read from disk or produced by a generator.
struct InstanceData {
  std::vector<double> px;
  std::vector<double> py;
  CostMatrix cost;
  double gamma = 0.0;
};

// Returns the first violated invariant with its index location, or nullopt.
// px must sum to 1 within kMassTolerance; no renormalization happens here.
std::optional<std::string> Validate(const InstanceData& data);

// A validated game between the decision maker and the population.
class Instance {
 public:
  // Renormalizes px when its sum misses 1 by more than kMassTolerance but
  // at most kNormalizeTolerance, then validates; sums already within
  // kMassTolerance are kept bit-exact. Throws InvalidInstanceError with the
  // Validate() report.
  static Instance Create(InstanceData data);

  int m() const { return static_cast<int>(data_.px.size()); }
  double px(int i) const { return data_.px[i]; }
  double py(int i) const { return data_.py[i]; }
  std::span<const double> px() const { return data_.px; }
  std::span<const double> py() const { return data_.py; }
  const Cost& cost(int from, int to) const { return data_.cost(from, to); }
  const CostMatrix& cost() const { return data_.cost; }
  double gamma() const { return data_.gamma; }
  const InstanceData& data() const { return data_; }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.data_.px == b.data_.px && a.data_.py == b.data_.py &&
           a.data_.cost == b.data_.cost && a.data_.gamma == b.data_.gamma;
  }

 private:
  explicit Instance(InstanceData data) : data_(std::move(data)) {}
  InstanceData data_;
};

struct CanonicalInstance {
  Instance instance;
  // permutation[new_index] = original index.
  std::vector<int> permutation;
};

// Reorders feature values so that py is nonincreasing. Ties keep their
// original relative order. Throws InvalidInstanceError on dimension mismatch
// or when the reordered instance fails validation.
CanonicalInstance SortCanonical(std::vector<double> px, std::vector<double> py,
                                const CostMatrix& cost, double gamma);

// Acceptance probabilities pi(x_i) in [0, 1].
class Policy {
 public:
  Policy() = default;
  // Throws std::invalid_argument if any entry is outside [0, 1].
  explicit Policy(std::vector<double> pi);

  int size() const { return static_cast<int>(pi_.size()); }
  double operator[](int i) const { return pi_[i]; }
  std::span<const double> values() const { return pi_; }
  bool accepts(int i) const { return pi_[i] == 1.0; }
  bool IsDeterministic() const;

  friend bool operator==(const Policy&, const Policy&) = default;

 private:
  std::vector<double> pi_;
};

// pi(x) = 0 wherever P(y=1|x) < gamma.
bool IsRational(const Instance& instance, const Policy& policy);
// py[i] >= py[j] implies pi[i] >= pi[j] for every pair.
bool IsOutcomeMonotonic(const Instance& instance, const Policy& policy);

// Indices of the feature values offered as counterfactual explanations, in
// insertion order.
class ExplanationSet {
 public:
  ExplanationSet() = default;
  // Throws std::invalid_argument on duplicates or negative indices.
  explicit ExplanationSet(std::vector<int> indices);

  const std::vector<int>& indices() const { return indices_; }
  int size() const { return static_cast<int>(indices_.size()); }
  bool empty() const { return indices_.empty(); }
  bool contains(int i) const;
  // Same members in ascending order.
  std::vector<int> Sorted() const;
  ExplanationSet With(int i) const;
  // Throws std::invalid_argument if some index is >= m.
  void CheckWithin(int m) const;

  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  // Set equality, order-insensitive.
  friend bool operator==(const ExplanationSet& a, const ExplanationSet& b) {
    return a.Sorted() == b.Sorted();
  }

 private:
  std::vector<int> indices_;
};

// Disjoint groups covering [m] with a per-group capacity.
class PartitionMatroid {
 public:
  // Throws std::invalid_argument if the groups overlap, miss an index, or the
  // capacities are misaligned or negative.
  PartitionMatroid(int m, std::vector<std::vector<int>> groups,
                   std::vector<int> capacities);
  // One group holding every index.
  static PartitionMatroid Uniform(int m, int capacity);

  int m() const { return static_cast<int>(group_of_.size()); }
  int group_count() const { return static_cast<int>(groups_.size()); }
  int group_of(int i) const { return group_of_[i]; }
  const std::vector<int>& group(int g) const { return groups_[g]; }
  const std::vector<std::vector<int>>& groups() const { return groups_; }
  int capacity(int g) const { return capacities_[g]; }
  const std::vector<int>& capacities() const { return capacities_; }
  // Sum of capacities.
  int rank() const;
  bool IsFeasible(const ExplanationSet& set) const;

 private:
  std::vector<std::vector<int>> groups_;
  std::vector<int> capacities_;
  std::vector<int> group_of_;
};

// {i : pi(x_i) = 1}.
ExplanationSet GroundSetAccepted(const Instance& instance,
                                 const Policy& policy);
// {i : py[i] >= gamma}.
ExplanationSet GroundSetViable(const Instance& instance);

}  // namespace cfx

#endif  // CFX_CORE_H_
