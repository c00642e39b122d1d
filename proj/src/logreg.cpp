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

#include "stackdet/logreg.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "stackdet/error.hpp"

namespace stackdet {
namespace {

// log(1 + exp(x)) without overflow.
double Softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

}  // namespace

LogRegModel LogRegModel::Zero(FeatureMode mode, std::uint32_t n,
                              std::uint32_t buckets) {
  LogRegModel m;
  m.feature_mode = mode;
  m.n = n;
  m.hash_buckets = buckets;
  m.weights.assign(buckets, 0.0);
  return m;
}

double LogRegModel::Logit(const SparseVector& x) const {
  double z = bias;
  for (std::size_t i = 0; i < x.size(); ++i) {
    z += weights[x.index[i]] * x.value[i];
  }
  return z;
}

std::vector<Example> Featurize(const LogRegModel& model,
                               std::span<const LabeledText> batch) {
  const auto featurizer = model.featurizer();
  std::vector<Example> out;
  out.reserve(batch.size());
  for (const auto& item : batch) {
    if (item.label != 0 && item.label != 1) {
      throw DataError("training label must be 0 or 1");
    }
    out.push_back({featurizer.Featurize(item.text), item.label});
  }
  return out;
}

double MeanLogLikelihood(const LogRegModel& model,
                         std::span<const Example> batch) {
  if (batch.empty()) return 0.0;
  double total = 0.0;
  for (const auto& ex : batch) {
    const double z = model.Logit(ex.x);
    total -= ex.label == 1 ? Softplus(-z) : Softplus(z);
  }
  return total / static_cast<double>(batch.size());
}

Gradient LogLikelihoodGradient(const LogRegModel& model,
                               std::span<const Example> batch) {
  Gradient g;
  if (batch.empty()) return g;
  std::map<std::uint32_t, double> acc;
  const double inv = 1.0 / static_cast<double>(batch.size());
  for (const auto& ex : batch) {
    const double residual = ex.label - Sigmoid(model.Logit(ex.x));
    for (std::size_t i = 0; i < ex.x.size(); ++i) {
      acc[ex.x.index[i]] += residual * ex.x.value[i];
    }
    g.bias += residual;
  }
  g.weights.reserve(acc.size());
  for (const auto& [idx, v] : acc) g.weights.emplace_back(idx, v * inv);
  g.bias *= inv;
  return g;
}

void ApplyGradientStep(LogRegModel& model, std::span<const Example> batch,
                       double eta) {
  if (batch.empty()) throw InvalidConfig("gradient step on an empty batch");
  const Gradient g = LogLikelihoodGradient(model, batch);
  for (const auto& [idx, v] : g.weights) {
    if (!std::isfinite(v) || !std::isfinite(model.weights[idx] + eta * v)) {
      throw NumericalError(
          "non-finite gradient at feature " + std::to_string(idx), idx);
    }
  }
  if (!std::isfinite(g.bias) || !std::isfinite(model.bias + eta * g.bias)) {
    throw NumericalError("non-finite gradient at bias");
  }
  for (const auto& [idx, v] : g.weights) model.weights[idx] += eta * v;
  model.bias += eta * g.bias;
}

LogRegModel GradUpdate(const LogRegModel& model,
                       std::span<const LabeledText> batch, double eta) {
  if (batch.empty()) throw InvalidConfig("gradient step on an empty batch");
  LogRegModel next = model;
  const auto examples = Featurize(model, batch);
  ApplyGradientStep(next, examples, eta);
  return next;
}

LogRegDetector::LogRegDetector(std::shared_ptr<const LogRegModel> model)
    : owned_(std::move(model)), model_(owned_.get()) {
  if (!model_) throw InvalidConfig("LogRegDetector: null model");
}

LogRegDetector LogRegDetector::Borrow(const LogRegModel& model) {
  LogRegDetector d;
  d.model_ = &model;
  return d;
}

DetectorScore LogRegDetector::ScoreOne(std::string_view text) const {
  const SparseVector x = model_->featurizer().Featurize(text);
  if (x.size() == 0) throw EmptyDocument("text has no tokens to score");
  return FromLogit(model_->Logit(x));
}

}  // namespace stackdet
