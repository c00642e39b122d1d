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

#ifndef STACKDET_BENCH_HPP_
#define STACKDET_BENCH_HPP_

#include <span>

#include "stackdet/detector.hpp"
#include "stackdet/retention.hpp"
#include "stackdet/segmentation.hpp"

namespace stackdet {

struct BenchReport {
  std::size_t docs = 0;
  double base_seconds = 0.0;     // median per corpus pass
  double stacked_seconds = 0.0;  // median per corpus pass
  double ratio = 0.0;            // median of per-round paired ratios
  std::size_t base_calls = 0;    // per corpus pass
  std::size_t stacked_calls = 0;
  std::size_t base_bytes = 0;
  std::size_t stacked_bytes = 0;
};

/// Times plain scoring of every document against stacked inference on the
/// same documents, single-threaded. Each round runs `passes` corpus passes
/// of each arm back to back; medians over rounds are reported.
BenchReport BenchStacked(const Detector& base, std::span<const Document> docs,
                         const FilterConfig& cfg, int rounds = 11,
                         int passes = 3);

}  // namespace stackdet

#endif  // STACKDET_BENCH_HPP_
