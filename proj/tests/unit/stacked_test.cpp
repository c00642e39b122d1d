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


#include <gtest/gtest.h>

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "stackdet/error.hpp"
#include "stackdet/lm_detector.hpp"
#include "stackdet/logreg.hpp"
#include "stackdet/model_io.hpp"
#include "stackdet/rng.hpp"
#include "stackdet/stacked.hpp"
#include "stackdet/synth.hpp"

namespace sd = stackdet;

namespace {

// Looks texts up in a table (default otherwise) and records every call.
class TableDetector : public sd::LocalDetector {
 public:
  TableDetector(std::map<std::string, double> table, double fallback)
      : table_(std::move(table)), fallback_(fallback) {}

  std::string name() const override { return "table"; }
  sd::DetectorScore ScoreOne(std::string_view text) const override {
    {
      std::lock_guard<std::mutex> lock(mu_);
      seen_.emplace_back(text);
    }
    const auto it = table_.find(std::string(text));
    const double v = it == table_.end() ? fallback_ : it->second;
    return {v, sd::LogitOf(v)};
  }
  std::vector<std::string> seen() const {
    std::lock_guard<std::mutex> lock(mu_);
    return seen_;
  }

 private:
  std::map<std::string, double> table_;
  double fallback_;
  mutable std::mutex mu_;
  mutable std::vector<std::string> seen_;
};

std::vector<sd::Document> SynthDocs(std::size_t per_class, std::uint64_t seed,
                                    std::size_t sentences = 8) {
  sd::SynthConfig cfg;
  cfg.sentences = sentences;
  cfg.seed = seed;
  sd::SynthWorld world(cfg);
  sd::Rng rng(seed + 1);
  std::vector<sd::Document> docs;
  for (std::size_t i = 0; i < per_class; ++i) {
    docs.push_back(world.MakeDoc(rng, 0, "h" + std::to_string(i)));
    docs.push_back(world.MakeDoc(rng, 1, "m" + std::to_string(i)));
  }
  return docs;
}

sd::NGramLMDetector SynthLm(std::uint64_t seed) {
  sd::SynthConfig cfg;
  cfg.seed = seed;
  sd::SynthWorld world(cfg);
  sd::Rng rng(seed + 2);
  std::vector<std::string> human, machine;
  for (int i = 0; i < 100; ++i) {
    human.push_back(world.Text(rng, 0));
    machine.push_back(world.Text(rng, 1));
  }
  return sd::NGramLMDetector::Fit(human, machine, 1, 0.1);
}

}  // namespace

TEST(StackedInfer, ChainExample) {
  TableDetector det({{"W.", 0.005}, {"X.", 0.8}, {"Y.", 0.003}, {"Z.", 0.4},
                     {"W. X. Z.", 0.93}},
                    0.5);
  const auto doc = sd::MakeDocument("d", "W. X. Y. Z.");
  const auto r = sd::StackedInfer(det, doc, {0.01, 0.25, 1});
  EXPECT_EQ(r.mask.bits, (std::vector<std::uint8_t>{1, 1, 0, 1}));
  EXPECT_EQ(r.n_groups, 4u);
  EXPECT_EQ(r.n_filtered, 1u);
  EXPECT_EQ(r.score.value, 0.93);
  EXPECT_EQ(r.base_calls, 5u);
  const auto seen = det.seen();
  ASSERT_EQ(seen.size(), 5u);
  EXPECT_EQ(seen.back(), "W. X. Z.");
  EXPECT_EQ(r.scored_bytes, 2u * 4 + 8);
}

TEST(StackedInfer, TauZeroEqualsBase) {
  const auto lm = SynthLm(1);
  for (const auto& doc : SynthDocs(20, 2)) {
    const auto r = sd::StackedInfer(lm, doc, {0.01, 0.0, 3});
    ASSERT_EQ(r.score.logit, lm.Score(doc.text).logit);
    ASSERT_EQ(r.n_filtered, 0u);
    ASSERT_EQ(r.base_calls, 1u);
  }
}

TEST(StackedInfer, SingleGroupEqualsBase) {
  const auto lm = SynthLm(3);
  for (const auto& doc : SynthDocs(10, 4, 4)) {
    const auto r = sd::StackedInfer(lm, doc, {0.49, 0.9, 10});
    ASSERT_EQ(r.n_groups, 1u);
    ASSERT_EQ(r.score.logit, lm.Score(doc.text).logit);
  }
}

TEST(StackedInfer, CostIsBounded) {
  const auto lm = SynthLm(5);
  for (double tau : {0.0, 0.1, 0.25, 0.5}) {
    for (std::size_t k : {1u, 2u, 3u}) {
      const sd::FilterConfig cfg{0.3, tau, k};
      for (const auto& doc : SynthDocs(10, 6)) {
        const auto r = sd::StackedInfer(lm, doc, cfg);
        const bool first_pass = sd::FilterBudget(tau, r.n_groups) > 0;
        ASSERT_EQ(r.base_calls, first_pass ? r.n_groups + 1 : 1u);
        ASSERT_LE(r.scored_bytes, 2 * doc.text.size());
        ASSERT_LE(r.n_filtered, sd::FilterBudget(tau, r.n_groups));
      }
    }
  }
}

TEST(StackedInfer, ParallelMatchesSequential) {
  const auto lm = SynthLm(7);
  const auto docs = SynthDocs(30, 8);
  const sd::FilterConfig cfg{0.2, 0.25, 2};
  const auto one = sd::StackedInferAll(lm, docs, cfg, 1);
  const auto four = sd::StackedInferAll(lm, docs, cfg, 4);
  ASSERT_EQ(one.size(), docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    EXPECT_EQ(one[i].score.logit, four[i].score.logit);
    EXPECT_EQ(one[i].mask, four[i].mask);
    EXPECT_EQ(one[i].score.logit, sd::StackedInfer(lm, docs[i], cfg).score.logit);
  }
}

TEST(StackedInfer, RandomFilterDropsTheSameNumber) {
  const auto lm = SynthLm(9);
  const sd::FilterConfig cfg{0.3, 0.25, 1};
  for (const auto& doc : SynthDocs(10, 10)) {
    const auto a = sd::StackedInfer(lm, doc, cfg);
    const auto b = sd::RandomFilterInfer(lm, doc, cfg, 42);
    ASSERT_EQ(a.n_filtered, b.n_filtered);
    const auto c = sd::RandomFilterInfer(lm, doc, cfg, 42);
    ASSERT_EQ(b.mask, c.mask);
  }
}

TEST(StackedInfer, MasksIgnoreLabels) {
  const auto lm = SynthLm(11);
  const sd::FilterConfig cfg{0.3, 0.25, 1};
  for (auto doc : SynthDocs(10, 12)) {
    const auto a = sd::RetainText(lm, doc, cfg);
    doc.label = 1 - *doc.label;
    const auto b = sd::RetainText(lm, doc, cfg);
    doc.label.reset();
    const auto c = sd::RetainText(lm, doc, cfg);
    ASSERT_EQ(a.mask, b.mask);
    ASSERT_EQ(a.mask, c.mask);
    ASSERT_EQ(a.text, b.text);
  }
}

TEST(TrainingFreeWrap, Validates) {
  auto lm = std::make_shared<sd::NGramLMDetector>(SynthLm(13));
  EXPECT_THROW(sd::TrainingFreeWrap(lm, {0.6, 0.2, 1}), sd::InvalidConfig);
  EXPECT_THROW(sd::TrainingFreeWrap(nullptr, {}), sd::InvalidConfig);
  const auto w = sd::TrainingFreeWrap(lm, {});
  EXPECT_EQ(w.mode, sd::StackedMode::kTrainingFree);
}

TEST(Training, ZeroEpochsReturnsTheInput) {
  const auto docs = SynthDocs(5, 14);
  auto base = sd::LogRegModel::Zero(sd::FeatureMode::kWord, 1, 64);
  base.bias = 0.25;
  sd::TrainConfig tc;
  tc.epochs = 0;
  const auto r = sd::TrainHardEM(base, docs, tc);
  EXPECT_EQ(r.model, base);
  EXPECT_TRUE(r.trace.epochs.empty());
}

TEST(Training, TauZeroMatchesPlainTraining) {
  const auto docs = SynthDocs(30, 15);
  sd::TrainConfig tc;
  tc.epochs = 3;
  tc.tau = 0.0;
  tc.batch_size = 8;
  tc.seed = 3;
  const auto base = sd::LogRegModel::Zero(sd::FeatureMode::kWord, 2, 1u << 12);
  const auto em = sd::TrainHardEM(base, docs, tc);
  const auto plain = sd::TrainPlain(base, docs, tc);
  EXPECT_EQ(sd::SerializeModel(em.model), sd::SerializeModel(plain.model));
}

TEST(Training, SeparableToyReachesPerfectAccuracy) {
  std::vector<sd::Document> docs;
  for (int i = 0; i < 10; ++i) {
    docs.push_back(sd::MakeDocument(
        "h" + std::to_string(i), "Red apple tree. Red apple pie. Red sky.", 0));
    docs.push_back(sd::MakeDocument(
        "m" + std::to_string(i), "Blue stone wall. Blue stone path. Blue sea.",
        1));
  }
  sd::TrainConfig tc;
  tc.epochs = 50;
  tc.batch_size = 4;
  tc.k = 1;
  const auto base = sd::LogRegModel::Zero(sd::FeatureMode::kWord, 1, 256);
  const auto r = sd::TrainHardEM(base, docs, tc);
  ASSERT_EQ(r.trace.epochs.size(), 50u);
  const auto det = sd::LogRegDetector::Borrow(r.model);
  for (const auto& doc : docs) {
    const double s = sd::StackedInfer(det, doc, tc.filter()).score.value;
    EXPECT_EQ(s > 0.5, *doc.label == 1) << doc.id;
  }
}

TEST(Training, ObjectiveRisesWithMasksHeldFixed) {
  const auto docs = SynthDocs(20, 16);
  auto model = sd::LogRegModel::Zero(sd::FeatureMode::kWord, 1, 1u << 10);
  sd::TrainConfig tc;
  tc.epochs = 2;
  model = sd::TrainHardEM(model, docs, tc).model;
  const auto det = sd::LogRegDetector::Borrow(model);
  const auto featurizer = model.featurizer();
  std::vector<sd::Example> batch;
  for (const auto& doc : docs) {
    batch.push_back({featurizer.Featurize(sd::RetainText(det, doc,
                                                         tc.filter()).text),
                     *doc.label});
  }
  auto next = model;
  sd::ApplyGradientStep(next, batch, 1e-3);
  EXPECT_GE(sd::MeanLogLikelihood(next, batch),
            sd::MeanLogLikelihood(model, batch));
}

TEST(Training, DeterministicAcrossJobs) {
  const auto docs = SynthDocs(20, 17);
  sd::TrainConfig tc;
  tc.epochs = 2;
  tc.batch_size = 7;
  tc.tau = 0.3;
  tc.r_e = 0.45;
  const auto base = sd::LogRegModel::Zero(sd::FeatureMode::kWord, 2, 1u << 10);
  const auto a = sd::TrainHardEM(base, docs, tc, 1);
  const auto b = sd::TrainHardEM(base, docs, tc, 3);
  EXPECT_EQ(a.model, b.model);
  ASSERT_EQ(a.trace.epochs.size(), 2u);
  EXPECT_EQ(a.trace.epochs[1].filtered_fraction,
            b.trace.epochs[1].filtered_fraction);
  EXPECT_EQ(a.trace.epochs[1].mean_q, b.trace.epochs[1].mean_q);
}

TEST(Training, RejectsBadData) {
  auto docs = SynthDocs(3, 18);
  const auto base = sd::LogRegModel::Zero(sd::FeatureMode::kWord, 1, 64);
  sd::TrainConfig tc;
  std::vector<sd::Document> humans;
  for (const auto& d : docs) {
    if (*d.label == 0) humans.push_back(d);
  }
  EXPECT_THROW(sd::TrainHardEM(base, humans, tc), sd::DegenerateDataset);
  docs[0].label.reset();
  EXPECT_THROW(sd::TrainHardEM(base, docs, tc), sd::DataError);
  tc.eta = 0.0;
  EXPECT_THROW(sd::TrainPlain(base, humans, tc), sd::InvalidConfig);
}
