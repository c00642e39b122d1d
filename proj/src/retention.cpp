// Copyright 2026 The stackdet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stackdet/retention.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "stackdet/error.hpp"
#include "stackdet/rng.hpp"

namespace stackdet {
namespace {

std::size_t ArgMax(std::span<const double> scores) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < scores.size(); ++j) {
    if (scores[j] > scores[best]) best = j;
  }
  return best;
}

// Never emit a mask that filters everything.
void ForceRetain(RetentionMask& mask, std::span<const double> scores) {
  if (!mask.bits.empty() && mask.zeros() == mask.bits.size()) {
    mask.bits[ArgMax(scores)] = 1;
  }
}

void CheckScores(std::span<const double> scores) {
  if (scores.empty()) throw InvalidConfig("retention: empty score vector");
  for (double s : scores) {
    if (std::isnan(s)) throw NumericalError("retention: NaN score");
  }
}

}  // namespace

std::size_t RetentionMask::zeros() const {
  return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), 0));
}

void FilterConfig::Validate() const {
  if (!(r_e >= 0.0 && r_e < 0.5)) {
    throw InvalidConfig("r_e must lie in [0, 0.5), got " +
                        std::to_string(r_e));
  }
  if (!(tau >= 0.0 && tau < 1.0)) {
    throw InvalidConfig("tau must lie in [0, 1), got " + std::to_string(tau));
  }
  if (k < 1) throw InvalidConfig("k must be >= 1");
}

std::size_t FilterBudget(double tau, std::size_t n) {
  const double raw = std::floor(tau * static_cast<double>(n) + 1e-9);
  return raw <= 0.0 ? 0 : std::min(n, static_cast<std::size_t>(raw));
}

RetentionMask ComputeMask(std::span<const double> scores,
                          const FilterConfig& cfg) {
  CheckScores(scores);
  const std::size_t n = scores.size();
  RetentionMask mask{std::vector<std::uint8_t>(n, 1)};
  const std::size_t budget = FilterBudget(cfg.tau, n);
  if (budget == 0) return mask;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::partial_sort(order.begin(), order.begin() + budget, order.end(),
                    [&](std::size_t a, std::size_t b) {
                      return scores[a] < scores[b] ||
                             (scores[a] == scores[b] && a < b);
                    });
  for (std::size_t r = 0; r < budget; ++r) {
    if (scores[order[r]] < cfg.r_e) mask.bits[order[r]] = 0;
  }
  ForceRetain(mask, scores);
  return mask;
}

RetentionMask NaiveMask(std::span<const double> scores) {
  CheckScores(scores);
  RetentionMask mask;
  mask.bits.reserve(scores.size());
  for (double s : scores) mask.bits.push_back(s >= 0.5 ? 1 : 0);
  ForceRetain(mask, scores);
  return mask;
}

RetentionMask RandomMask(std::size_t n, double drop_ratio,
                         std::uint64_t seed) {
  if (!(drop_ratio >= 0.0 && drop_ratio < 1.0)) {
    throw InvalidConfig("drop ratio must lie in [0, 1)");
  }
  RetentionMask mask{std::vector<std::uint8_t>(n, 1)};
  std::size_t drop = FilterBudget(drop_ratio, n);
  if (drop >= n && n > 0) drop = n - 1;
  Rng rng(seed);
  for (std::size_t j : rng.Sample(n, drop)) mask.bits[j] = 0;
  return mask;
}

}  // namespace stackdet
