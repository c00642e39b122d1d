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

#ifndef STACKDET_RETENTION_HPP_
#define STACKDET_RETENTION_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace stackdet {

/// One bit per subsequence: 1 keeps it as machine-indicative evidence,
/// 0 filters it as confidently human-like.
struct RetentionMask {
  std::vector<std::uint8_t> bits;

  std::size_t size() const { return bits.size(); }
  std::size_t zeros() const;
  bool all_ones() const { return zeros() == 0; }
  bool operator==(const RetentionMask&) const = default;
};

struct FilterConfig {
  double r_e = 0.01;   // strict human-likeness threshold, in [0, 0.5)
  double tau = 0.25;   // max filtered fraction, in [0, 1)
  std::size_t k = 3;   // sentences per subsequence

  /// Throws InvalidConfig on out-of-range fields.
  void Validate() const;
};

/// floor(tau * n), with a 1e-9 guard so that e.g. 0.29 * 100 gives 29.
std::size_t FilterBudget(double tau, std::size_t n);

/// Constrained rule: bit j is 0 iff score_j < r_e and j is among the
/// FilterBudget(tau, n) smallest scores (ties: lower index first).
/// Uses only the scores, so it cannot depend on a document's label.
RetentionMask ComputeMask(std::span<const double> scores,
                          const FilterConfig& cfg);

/// Indicator rule: bit j = [score_j >= 0.5]. An all-zero outcome keeps the
/// highest-scoring group instead.
RetentionMask NaiveMask(std::span<const double> scores);

/// Exactly FilterBudget(drop_ratio, n) uniformly placed zeros; seeded.
RetentionMask RandomMask(std::size_t n, double drop_ratio,
                         std::uint64_t seed);

}  // namespace stackdet

#endif  // STACKDET_RETENTION_HPP_
