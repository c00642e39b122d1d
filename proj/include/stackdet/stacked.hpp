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

#ifndef STACKDET_STACKED_HPP_
#define STACKDET_STACKED_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "stackdet/detector.hpp"
#include "stackdet/logreg.hpp"
#include "stackdet/retention.hpp"
#include "stackdet/segmentation.hpp"

namespace stackdet {

enum class StackedMode { kTrained, kTrainingFree };

/// A base detector used twice: once per subsequence to build the retention
/// mask, then once on the retained text.
struct StackedDetector {
  std::shared_ptr<const Detector> base;
  FilterConfig cfg;
  StackedMode mode = StackedMode::kTrained;
};

/// Wraps a frozen detector; no training involved.
StackedDetector TrainingFreeWrap(std::shared_ptr<const Detector> base,
                                 const FilterConfig& cfg);

struct InferenceResult {
  DetectorScore score;
  std::size_t n_groups = 0;
  std::size_t n_filtered = 0;
  RetentionMask mask;
  std::size_t base_calls = 0;     // texts sent to the base detector
  std::size_t scored_bytes = 0;   // total bytes across those texts
};

/// Retained text of one document plus the bookkeeping of the first pass.
struct Retention {
  std::string text;
  RetentionMask mask;
  std::size_t base_calls = 0;
  std::size_t scored_bytes = 0;
};

/// First pass only. When the filter budget floor(tau * n_groups) is zero
/// the mask is all ones without scoring anything. An all-ones mask yields
/// the document text verbatim.
Retention RetainText(const Detector& base, const Document& doc,
                     const FilterConfig& cfg);

InferenceResult StackedInfer(const Detector& base, const Document& doc,
                             const FilterConfig& cfg);
InferenceResult StackedInfer(const StackedDetector& sd, const Document& doc);

/// Control: drops as many groups as the constrained rule would, but picks
/// them uniformly at random (seeded per document).
InferenceResult RandomFilterInfer(const Detector& base, const Document& doc,
                                  const FilterConfig& cfg,
                                  std::uint64_t seed);

/// Document-parallel inference; results follow input order.
std::vector<InferenceResult> StackedInferAll(const Detector& base,
                                             std::span<const Document> docs,
                                             const FilterConfig& cfg,
                                             int jobs = 1);

struct TrainConfig {
  int epochs = 5;
  double eta = 1.0;
  std::size_t batch_size = 32;
  double tau = 0.25;
  double r_e = 0.01;
  std::size_t k = 3;
  std::uint64_t seed = 0;

  FilterConfig filter() const { return {r_e, tau, k}; }
  /// Throws InvalidConfig. epochs == 0 is accepted (returns the input).
  void Validate() const;
};

struct EpochRecord {
  int epoch = 0;
  double mean_q = 0.0;            // batch-mean log-likelihood, averaged
  double filtered_fraction = 0.0; // zeros / groups over the epoch
  double wall_seconds = 0.0;
};

struct TrainTrace {
  std::vector<EpochRecord> epochs;
};

struct TrainResult {
  LogRegModel model;
  TrainTrace trace;
};

/// Hard-EM training. Per batch: the E-step computes every document's mask
/// with the current parameters (labels are never consulted), the M-step
/// takes one gradient ascent step on the binary log-likelihood of the
/// retained texts with masks held fixed. Batches are reshuffled every epoch
/// from `seed`. Throws DegenerateDataset unless both labels occur, and
/// NumericalError on a non-finite objective.
TrainResult TrainHardEM(LogRegModel base, std::span<const Document> data,
                        const TrainConfig& tc, int jobs = 1);

/// The same loop on full texts with no E-step.
TrainResult TrainPlain(LogRegModel base, std::span<const Document> data,
                       const TrainConfig& tc);

}  // namespace stackdet

#endif  // STACKDET_STACKED_HPP_
