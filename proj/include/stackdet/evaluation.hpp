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

#ifndef STACKDET_EVALUATION_HPP_
#define STACKDET_EVALUATION_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "stackdet/rng.hpp"
#include "stackdet/segmentation.hpp"

namespace stackdet {

/// Mann-Whitney AUROC: P(pos > neg) + P(pos == neg) / 2, O(N log N).
/// Throws DegenerateDataset unless both labels occur.
double Auroc(std::span<const double> scores, std::span<const int> labels);

/// TPR at the lowest threshold t whose false-positive rate
/// #{neg > t} / #neg stays <= K; a text is flagged when score > t.
double TprAtFpr(std::span<const double> scores, std::span<const int> labels,
                double k);

struct ConfidenceInterval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Percentile bootstrap for AUROC; positives and negatives are resampled
/// separately so every replicate has both classes.
ConfidenceInterval BootstrapAuroc(std::span<const double> scores,
                                  std::span<const int> labels,
                                  int resamples, std::uint64_t seed,
                                  double level = 0.95);

struct EvalReport {
  double auroc = 0.0;
  std::map<std::string, double> tpr_at_fpr;  // "0.5%" -> TPR, "5%" -> TPR
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
  std::uint64_t seed = 0;
  std::string detector_id;
  std::string corpus_id;

  std::string ToJson() const;
};

EvalReport Evaluate(std::span<const double> scores,
                    std::span<const int> labels, std::string detector_id,
                    std::string corpus_id, std::uint64_t seed);

struct SplitSpec {
  double train = 2.0;
  double val = 1.0;
  double test = 1.0;
  std::uint64_t seed = 0;
};

struct DatasetSplit {
  std::vector<Document> train, val, test;
};

/// Stratified seeded split. Each label's documents are shuffled and cut at
/// train/(sum) and (train+val)/(sum); the three parts are then each
/// shuffled once more so labels interleave.
DatasetSplit SplitDataset(std::span<const Document> corpus,
                          const SplitSpec& spec);

/// Casefold, collapse whitespace, strip terminal punctuation.
std::string NormalizeSentence(std::string_view sentence);

/// Share of machine sentences whose normalized form occurs among the
/// normalized human sentences.
double ConsistentSentenceProportion(std::span<const Document> human,
                                    std::span<const Document> machine);

/// Replaces `count` distinct, uniformly chosen sentence positions with
/// sentences drawn uniformly from `pool`. Sentences of the result are
/// joined by single spaces and its spans are built directly, so each
/// replacement stays one sentence. Throws InvalidConfig unless
/// count < number of sentences.
Document InjectHumanSentences(const Document& machine_doc,
                              std::span<const std::string> pool,
                              std::size_t count, Rng& rng);

}  // namespace stackdet

#endif  // STACKDET_EVALUATION_HPP_
