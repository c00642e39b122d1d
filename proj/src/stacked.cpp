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

#include "stackdet/stacked.hpp"

#include <chrono>
#include <cmath>
#include <numeric>

#include "stackdet/error.hpp"
#include "stackdet/parallel.hpp"
#include "stackdet/rng.hpp"

namespace stackdet {
namespace {

std::vector<double> ScoreGroups(const Detector& base, const Document& doc,
                                const SubsequenceSet& groups,
                                std::size_t& scored_bytes) {
  std::vector<std::string_view> texts;
  texts.reserve(groups.size());
  for (std::size_t j = 0; j < groups.size(); ++j) {
    texts.push_back(GroupText(doc, groups, j));
    scored_bytes += texts.back().size();
  }
  const auto scores = base.ScoreBatch(texts);
  std::vector<double> values;
  values.reserve(scores.size());
  for (const auto& s : scores) values.push_back(s.value);
  return values;
}

std::string ApplyMask(const Document& doc, const SubsequenceSet& groups,
                      const RetentionMask& mask) {
  return mask.all_ones() ? doc.text : Reconstruct(doc, groups, mask);
}

InferenceResult Finish(const Detector& base, Retention r) {
  InferenceResult out;
  out.n_groups = r.mask.size();
  out.n_filtered = r.mask.zeros();
  out.base_calls = r.base_calls + 1;
  out.scored_bytes = r.scored_bytes + r.text.size();
  out.score = base.Score(r.text);
  out.mask = std::move(r.mask);
  return out;
}

}  // namespace

StackedDetector TrainingFreeWrap(std::shared_ptr<const Detector> base,
                                 const FilterConfig& cfg) {
  cfg.Validate();
  if (!base) throw InvalidConfig("training-free wrap: null base detector");
  return {std::move(base), cfg, StackedMode::kTrainingFree};
}

Retention RetainText(const Detector& base, const Document& doc,
                     const FilterConfig& cfg) {
  const SubsequenceSet groups = GroupSubsequences(doc, cfg.k);
  Retention r;
  if (FilterBudget(cfg.tau, groups.size()) == 0) {
    r.mask.bits.assign(groups.size(), 1);
    r.text = doc.text;
    return r;
  }
  const auto scores = ScoreGroups(base, doc, groups, r.scored_bytes);
  r.base_calls = groups.size();
  r.mask = ComputeMask(scores, cfg);
  r.text = ApplyMask(doc, groups, r.mask);
  return r;
}

InferenceResult StackedInfer(const Detector& base, const Document& doc,
                             const FilterConfig& cfg) {
  return Finish(base, RetainText(base, doc, cfg));
}

InferenceResult StackedInfer(const StackedDetector& sd, const Document& doc) {
  return StackedInfer(*sd.base, doc, sd.cfg);
}

InferenceResult RandomFilterInfer(const Detector& base, const Document& doc,
                                  const FilterConfig& cfg,
                                  std::uint64_t seed) {
  const SubsequenceSet groups = GroupSubsequences(doc, cfg.k);
  Retention r = RetainText(base, doc, cfg);
  const std::size_t drop = r.mask.zeros();
  if (drop > 0) {
    const double ratio =
        static_cast<double>(drop) / static_cast<double>(groups.size());
    r.mask = RandomMask(groups.size(), ratio, seed);
    r.text = ApplyMask(doc, groups, r.mask);
  }
  return Finish(base, std::move(r));
}

std::vector<InferenceResult> StackedInferAll(const Detector& base,
                                             std::span<const Document> docs,
                                             const FilterConfig& cfg,
                                             int jobs) {
  std::vector<InferenceResult> out(docs.size());
  ParallelFor(docs.size(), jobs,
              [&](std::size_t i) { out[i] = StackedInfer(base, docs[i], cfg); });
  return out;
}

void TrainConfig::Validate() const {
  if (epochs < 0) throw InvalidConfig("epochs must be >= 0");
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw InvalidConfig("learning rate must be > 0");
  }
  if (batch_size < 1) throw InvalidConfig("batch size must be >= 1");
  filter().Validate();
}

namespace {

void CheckLabels(std::span<const Document> data) {
  bool seen[2] = {false, false};
  for (const auto& d : data) {
    if (!d.label) {
      throw DataError("training document '" + d.id + "' has no label");
    }
    seen[*d.label] = true;
  }
  if (!seen[0] || !seen[1]) {
    throw DegenerateDataset("training data must contain both classes");
  }
}

TrainResult RunTraining(LogRegModel model, std::span<const Document> data,
                        const TrainConfig& tc, bool stacked, int jobs) {
  tc.Validate();
  CheckLabels(data);
  if (model.weights.size() != model.hash_buckets) {
    throw InvalidConfig("model weights do not match hash_buckets");
  }
  const FilterConfig fc = tc.filter();
  const auto featurizer = model.featurizer();

  TrainResult result;
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);

  for (int epoch = 0; epoch < tc.epochs; ++epoch) {
    const auto start = std::chrono::steady_clock::now();
    Rng rng(DeriveSeed(tc.seed, 0x7472616eULL, epoch));
    rng.Shuffle(order);

    double q_sum = 0.0;
    std::size_t batches = 0, groups = 0, filtered = 0;
    for (std::size_t b = 0; b < order.size(); b += tc.batch_size) {
      const std::size_t e = std::min(order.size(), b + tc.batch_size);
      std::vector<Example> batch(e - b);
      std::vector<std::size_t> zeros(e - b, 0), group_counts(e - b, 0);

      // E-step against the frozen current parameters.
      const LogRegDetector current = LogRegDetector::Borrow(model);
      ParallelFor(e - b, stacked ? jobs : 1, [&](std::size_t i) {
        const Document& doc = data[order[b + i]];
        batch[i].label = *doc.label;
        if (stacked) {
          Retention r = RetainText(current, doc, fc);
          zeros[i] = r.mask.zeros();
          group_counts[i] = r.mask.size();
          batch[i].x = featurizer.Featurize(r.text);
        } else {
          batch[i].x = featurizer.Featurize(doc.text);
        }
      });
      for (std::size_t i = 0; i < batch.size(); ++i) {
        filtered += zeros[i];
        groups += group_counts[i];
      }

      // M-step: one ascent step on Q with masks held fixed.
      const double q = MeanLogLikelihood(model, batch);
      if (!std::isfinite(q)) {
        throw NumericalError("non-finite objective in epoch " +
                             std::to_string(epoch));
      }
      ApplyGradientStep(model, batch, tc.eta);
      q_sum += q;
      ++batches;
    }

    EpochRecord rec;
    rec.epoch = epoch;
    rec.mean_q = batches ? q_sum / static_cast<double>(batches) : 0.0;
    rec.filtered_fraction =
        groups ? static_cast<double>(filtered) / static_cast<double>(groups)
               : 0.0;
    rec.wall_seconds = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    result.trace.epochs.push_back(rec);
  }
  result.model = std::move(model);
  return result;
}

}  // namespace

TrainResult TrainHardEM(LogRegModel base, std::span<const Document> data,
                        const TrainConfig& tc, int jobs) {
  return RunTraining(std::move(base), data, tc, /*stacked=*/true, jobs);
}

TrainResult TrainPlain(LogRegModel base, std::span<const Document> data,
                       const TrainConfig& tc) {
  return RunTraining(std::move(base), data, tc, /*stacked=*/false, 1);
}

}  // namespace stackdet
