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

#ifndef STACKDET_LOGREG_HPP_
#define STACKDET_LOGREG_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stackdet/detector.hpp"
#include "stackdet/featurize.hpp"

namespace stackdet {

inline constexpr std::uint32_t kDefaultHashBuckets = 1u << 18;

/// Hashed n-gram logistic regression: P(machine | text) = sigmoid(w.phi + b).
struct LogRegModel {
  FeatureMode feature_mode = FeatureMode::kWord;
  std::uint32_t n = 2;
  std::uint32_t hash_buckets = kDefaultHashBuckets;
  std::vector<double> weights;
  double bias = 0.0;

  /// Zero-initialized model.
  static LogRegModel Zero(FeatureMode mode = FeatureMode::kWord,
                          std::uint32_t n = 2,
                          std::uint32_t buckets = kDefaultHashBuckets);

  HashingFeaturizer featurizer() const {
    return HashingFeaturizer(feature_mode, n, hash_buckets);
  }
  double Logit(const SparseVector& x) const;

  bool operator==(const LogRegModel&) const = default;
};

struct LabeledText {
  std::string text;
  int label = 0;
};

struct Example {
  SparseVector x;
  int label = 0;
};

/// Gradient of the batch-mean binary log-likelihood.
struct Gradient {
  std::vector<std::pair<std::uint32_t, double>> weights;  // sorted by index
  double bias = 0.0;
};

std::vector<Example> Featurize(const LogRegModel& model,
                               std::span<const LabeledText> batch);

/// Mean over the batch of y log p + (1 - y) log(1 - p), computed without
/// forming p so it stays finite for confident predictions.
double MeanLogLikelihood(const LogRegModel& model,
                         std::span<const Example> batch);

Gradient LogLikelihoodGradient(const LogRegModel& model,
                               std::span<const Example> batch);

/// theta += eta * gradient, in place. Throws NumericalError naming the
/// first non-finite coordinate; the model is untouched in that case.
void ApplyGradientStep(LogRegModel& model, std::span<const Example> batch,
                       double eta);

/// One full-batch ascent step; returns the updated copy.
LogRegModel GradUpdate(const LogRegModel& model,
                       std::span<const LabeledText> batch, double eta);

/// Detector view over a LogRegModel. Either shares ownership or borrows a
/// model that the caller keeps alive.
class LogRegDetector : public LocalDetector {
 public:
  explicit LogRegDetector(std::shared_ptr<const LogRegModel> model);
  static LogRegDetector Borrow(const LogRegModel& model);

  std::string name() const override { return "logreg"; }
  DetectorScore ScoreOne(std::string_view text) const override;

  const LogRegModel& model() const { return *model_; }

 private:
  LogRegDetector() = default;
  std::shared_ptr<const LogRegModel> owned_;
  const LogRegModel* model_ = nullptr;
};

}  // namespace stackdet

#endif  // STACKDET_LOGREG_HPP_
