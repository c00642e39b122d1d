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

#include "stackdet/bench.hpp"

#include <algorithm>
#include <chrono>
#include <vector>

#include "stackdet/error.hpp"
#include "stackdet/stacked.hpp"

namespace stackdet {
namespace {

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

}  // namespace

BenchReport BenchStacked(const Detector& base, std::span<const Document> docs,
                         const FilterConfig& cfg, int rounds, int passes) {
  cfg.Validate();
  if (docs.empty()) throw DataError("bench needs at least one document");
  if (rounds < 1 || passes < 1) {
    throw InvalidConfig("bench rounds and passes must be >= 1");
  }
  using Clock = std::chrono::steady_clock;
  BenchReport report;
  report.docs = docs.size();
  for (const auto& d : docs) report.base_bytes += d.text.size();
  report.base_calls = docs.size();

  std::vector<double> base_t, stacked_t, ratios;
  volatile double sink = 0.0;
  for (int round = 0; round < rounds; ++round) {
    auto t0 = Clock::now();
    for (int p = 0; p < passes; ++p) {
      for (const auto& d : docs) sink = sink + base.Score(d.text).logit;
    }
    base_t.push_back(std::chrono::duration<double>(Clock::now() - t0).count() /
                     passes);

    std::size_t calls = 0, bytes = 0;
    t0 = Clock::now();
    for (int p = 0; p < passes; ++p) {
      calls = bytes = 0;
      for (const auto& d : docs) {
        const InferenceResult r = StackedInfer(base, d, cfg);
        sink = sink + r.score.logit;
        calls += r.base_calls;
        bytes += r.scored_bytes;
      }
    }
    stacked_t.push_back(
        std::chrono::duration<double>(Clock::now() - t0).count() / passes);
    ratios.push_back(stacked_t.back() / base_t.back());
    report.stacked_calls = calls;
    report.stacked_bytes = bytes;
  }
  report.base_seconds = Median(base_t);
  report.stacked_seconds = Median(stacked_t);
  report.ratio = Median(ratios);
  return report;
}

}  // namespace stackdet
