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

#ifndef STACKDET_DETECTOR_HPP_
#define STACKDET_DETECTOR_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stackdet {

/// Machine-generation confidence. `value` is the contract output in
/// [0, 1]; `logit` is a strictly increasing transform of it that does not
/// saturate in double precision, which keeps rankings (AUROC) intact for
/// very confident texts.
struct DetectorScore {
  double value = 0.5;
  double logit = 0.0;
};

/// Logistic function with exact label symmetry: Sigmoid(-x) == 1 - Sigmoid(x)
/// holds bit-for-bit.
double Sigmoid(double x);

/// log(p / (1 - p)); +-inf at the endpoints.
double LogitOf(double p);

inline DetectorScore FromLogit(double logit) {
  return {Sigmoid(logit), logit};
}

/// Scoring contract shared by native and external detectors. Scoring is
/// const; implementations must be safe to call concurrently.
class Detector {
 public:
  virtual ~Detector() = default;

  virtual std::string name() const = 0;

  /// Throws EmptyDocument when a text carries no scoreable content.
  virtual std::vector<DetectorScore> ScoreBatch(
      std::span<const std::string_view> texts) const = 0;

  DetectorScore Score(std::string_view text) const {
    return ScoreBatch(std::span<const std::string_view>(&text, 1)).front();
  }
};

/// Base class for detectors that score one text at a time in-process.
class LocalDetector : public Detector {
 public:
  virtual DetectorScore ScoreOne(std::string_view text) const = 0;

  std::vector<DetectorScore> ScoreBatch(
      std::span<const std::string_view> texts) const override {
    std::vector<DetectorScore> out;
    out.reserve(texts.size());
    for (auto t : texts) out.push_back(ScoreOne(t));
    return out;
  }
};

}  // namespace stackdet

#endif  // STACKDET_DETECTOR_HPP_
