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

// Self-check suite: fixtures with known answers, brute-force oracles,
// sampled submodularity and monotonicity checks, statistical checks of the
// randomized and leakage code paths, and determinism of every command.

#ifndef CFX_ACCEPTANCE_H_
#define CFX_ACCEPTANCE_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace cfx {

// Tolerances and sample sizes of the suite.
inline constexpr double kExactTolerance = 1e-12;
inline constexpr int kPolicyOracleInstances = 200;
inline constexpr int kPolicyOracleMaxM = 10;
inline constexpr double kPolicyOracleSeconds = 60.0;
inline constexpr int kPropertyDraws = 1000;
inline constexpr int kGreedyInstances = 100;
inline constexpr int kGreedyMaxM = 12;
inline constexpr int kMaxK = 3;
inline constexpr int kRandomizedInstances = 20;
inline constexpr int kRandomizedMaxM = 10;
inline constexpr int kRandomizedRuns = 200;
inline constexpr double kRandomizedSeconds = 300.0;
inline constexpr int kLeakageInstances = 20;
inline constexpr int64_t kLeakageSamples = 100000;
inline constexpr double kLeakageStandardErrors = 3.0;
inline constexpr double kTrendSeconds = 120.0;

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

// "PASS  3 policy-oracle: ... (1.23 s)".
std::string FormatCriterion(const CriterionResult& result);

int AcceptanceCriterionCount();

// Runs one criterion, 1-based. Exceptions become failures.
CriterionResult RunCriterion(int id, uint64_t seed = 0);

// Runs every criterion in order; `report` sees each result as it finishes.
std::vector<CriterionResult> RunAcceptanceSuite(
    uint64_t seed = 0,
    const std::function<void(const CriterionResult&)>& report = {});

}  // namespace cfx

#endif  // CFX_ACCEPTANCE_H_
