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

#include "cfx/datagen.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cfx/random.h"

namespace cfx {
namespace {

double ParseNumber(const std::string& text, size_t row, size_t column) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    std::ostringstream msg;
    msg << "feature table: row " << row << " column " << column
        << ": not a finite number: '" << text << "'";
    throw std::invalid_argument(msg.str());
  }
  return value;
}

}  // namespace

void CheckSynthConfig(const SynthConfig& config) {
  if (config.m < 2) throw std::invalid_argument("synthetic: m < 2");
  if (!(config.finite_fraction >= 0.0 && config.finite_fraction <= 1.0)) {
    throw std::invalid_argument("synthetic: finite_fraction outside [0,1]");
  }
  if (!(config.weight_stddev >= 0.0) || !std::isfinite(config.weight_mean)) {
    throw std::invalid_argument("synthetic: bad weight distribution");
  }
  if (!(config.far_cost >= 0.0) || !std::isfinite(config.far_cost)) {
    throw std::invalid_argument("synthetic: far_cost must be finite, >= 0");
  }
}

Instance GenerateSynthetic(const SynthConfig& config) {
  CheckSynthConfig(config);
  RngStream rng(config.seed);
  const int m = config.m;

  std::vector<double> px(m);
  double total = 0.0;
  do {
    for (double& p : px) {
      do {
        p = rng.Normal(config.weight_mean, config.weight_stddev);
      } while (p < 0.0);
    }
    total = std::accumulate(px.begin(), px.end(), 0.0);
  } while (total == 0.0);
  for (double& p : px) p /= total;

  std::vector<double> py(m);
  for (double& p : py) p = rng.Uniform01();

  CostMatrix cost(m);
  auto draw = [&] {
    return rng.Bernoulli(config.finite_fraction) ? Cost(rng.Uniform01())
                                                 : Cost(config.far_cost);
  };
  for (int i = 0; i < m; ++i) {
    for (int j = config.symmetric ? i + 1 : 0; j < m; ++j) {
      if (i == j) continue;
      cost(i, j) = draw();
      if (config.symmetric) cost(j, i) = cost(i, j);
    }
  }
  return SortCanonical(std::move(px), std::move(py), cost, config.gamma)
      .instance;
}

void CheckFeatureTable(const FeatureTable& table) {
  const size_t columns = table.column_names.size();
  if (table.column_kinds.size() != columns) {
    throw std::invalid_argument("feature table: kinds misaligned with names");
  }
  if (!(table.alpha >= 1.0)) {
    throw std::invalid_argument("feature table: alpha < 1");
  }
  for (size_t r = 0; r < table.rows.size(); ++r) {
    if (table.rows[r].size() != columns) {
      std::ostringstream msg;
      msg << "feature table: row " << r << " has " << table.rows[r].size()
          << " fields, expected " << columns;
      throw std::invalid_argument(msg.str());
    }
    for (size_t c = 0; c < columns; ++c) {
      if (table.column_kinds[c] != ColumnKind::kImmutable) {
        ParseNumber(table.rows[r][c], r, c);
      }
    }
  }
}

std::vector<double> EmpiricalCdf(std::span<const double> values,
                                 std::span<const double> weights) {
  const size_t n = values.size();
  if (weights.size() != n) {
    throw std::invalid_argument("empirical cdf: weights misaligned");
  }
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return values[a] < values[b]; });
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<double> out(n);
  double running = 0.0;
  for (size_t pos = 0; pos < n;) {
    // Equal values share the mass at or below them.
    size_t run_end = pos;
    while (run_end < n && values[order[run_end]] == values[order[pos]]) {
      running += weights[order[run_end]];
      ++run_end;
    }
    const double q = run_end == n ? 1.0 : running / total;
    for (size_t r = pos; r < run_end; ++r) out[order[r]] = q;
    pos = run_end;
  }
  return out;
}

CostBuildResult BuildCostMatrix(const FeatureTable& table,
                                std::span<const double> px,
                                CdfWeighting weighting) {
  CheckFeatureTable(table);
  const int m = static_cast<int>(table.rows.size());
  if (static_cast<int>(px.size()) != m) {
    throw std::invalid_argument("feature table: row count differs from px");
  }
  std::vector<double> weights(px.begin(), px.end());
  if (weighting == CdfWeighting::kCount) weights.assign(m, 1.0);

  std::vector<std::vector<double>> percentiles;  // Per actionable column.
  std::vector<bool> monotone;
  std::vector<size_t> immutable;
  for (size_t c = 0; c < table.column_names.size(); ++c) {
    if (table.column_kinds[c] == ColumnKind::kImmutable) {
      immutable.push_back(c);
      continue;
    }
    std::vector<double> values(m);
    for (int r = 0; r < m; ++r) values[r] = ParseNumber(table.rows[r][c], r, c);
    percentiles.push_back(EmpiricalCdf(values, weights));
    monotone.push_back(table.column_kinds[c] == ColumnKind::kMonotone);
  }

  CostBuildResult out{CostMatrix(m), {}};
  if (percentiles.empty()) {
    out.warnings.push_back(
        "no actionable columns: costs between matching rows are 0");
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      bool reachable = std::all_of(
          immutable.begin(), immutable.end(),
          [&](size_t c) { return table.rows[i][c] == table.rows[j][c]; });
      double shift = 0.0;
      for (size_t l = 0; reachable && l < percentiles.size(); ++l) {
        const double from = percentiles[l][i];
        const double to = percentiles[l][j];
        if (monotone[l] && to < from) reachable = false;
        shift = std::max(shift, std::abs(to - from));
      }
      out.cost(i, j) = reachable ? Cost(table.alpha * shift) : Cost::Infinite();
    }
  }
  return out;
}

}  // namespace cfx
