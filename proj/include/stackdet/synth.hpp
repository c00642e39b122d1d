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

// Synthetic two-class text generator.
//
// Words are pronounceable pseudo-words. Both classes draw mostly from one
// shared Zipf vocabulary; some human sentences are "colloquial" and lean
// on a human-only vocabulary, and machine sentences sprinkle in a small
// machine-only vocabulary. Human evidence is therefore concentrated in a
// few sentences, which is the regime where dropping the most human-looking
// groups of a mixed document helps.

#ifndef STACKDET_SYNTH_HPP_
#define STACKDET_SYNTH_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "stackdet/rng.hpp"
#include "stackdet/segmentation.hpp"

namespace stackdet {

struct SynthConfig {
  std::size_t shared_vocab = 400;
  std::size_t human_vocab = 150;
  std::size_t machine_vocab = 150;
  double zipf_exponent = 1.0;
  double colloquial_rate = 0.15;      // share of human sentences
  double colloquial_marker_rate = 0.35;
  double human_marker_rate = 0.0;     // in plain human sentences
  double machine_marker_rate = 0.03;
  std::size_t min_words = 8;
  std::size_t max_words = 16;
  std::size_t sentences = 12;         // per document
  std::uint64_t seed = 0;

  void Validate() const;
};

class SynthWorld {
 public:
  explicit SynthWorld(const SynthConfig& cfg);

  /// One sentence: capitalized, single-spaced, ending in '.'.
  std::string Sentence(Rng& rng, int label) const;
  /// cfg.sentences sentences joined by single spaces.
  std::string Text(Rng& rng, int label) const;
  Document MakeDoc(Rng& rng, int label, std::string id) const;

  const SynthConfig& config() const { return cfg_; }

 private:
  std::string Word(Rng& rng, const std::vector<std::string>& vocab,
                   const std::vector<double>& cumulative) const;

  SynthConfig cfg_;
  std::vector<std::string> shared_, human_, machine_;
  std::vector<double> shared_cdf_, human_cdf_, machine_cdf_;
};

struct SynthCorpus {
  std::vector<std::string> lm_human;    // detector training texts
  std::vector<std::string> lm_machine;
  std::vector<std::string> human_pool;  // sentences for injection
  std::vector<Document> human;          // label 0
  std::vector<Document> machine;        // label 1, unmixed
};

/// Everything derives from cfg.seed; sizes are per class.
SynthCorpus GenerateSynthCorpus(const SynthConfig& cfg, std::size_t train_docs,
                                std::size_t eval_docs, std::size_t pool_size);

/// Human documents followed by machine documents with `replacements`
/// sentences each swapped for pool sentences.
std::vector<Document> MixedCorpus(const SynthCorpus& corpus,
                                  std::size_t replacements,
                                  std::uint64_t seed);

}  // namespace stackdet

#endif  // STACKDET_SYNTH_HPP_
