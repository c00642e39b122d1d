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

#include "stackdet/synth.hpp"

#include <cmath>
#include <unordered_set>

#include "stackdet/error.hpp"
#include "stackdet/evaluation.hpp"

namespace stackdet {
namespace {

constexpr std::string_view kOnsets[] = {"b", "d", "f", "g", "k", "l", "m",
                                        "n", "p", "r", "s", "t", "v", "z",
                                        "br", "dr", "st", "tr", "pl", "gr"};
constexpr std::string_view kVowels[] = {"a", "e", "i", "o", "u", "ai", "ou"};

std::vector<std::string> PseudoWords(std::size_t count, Rng& rng,
                                     std::unordered_set<std::string>& used) {
  const auto abbreviations = SentenceSplitter::DefaultAbbreviations();
  std::vector<std::string> out;
  out.reserve(count);
  while (out.size() < count) {
    std::string w;
    const std::size_t syllables = 2 + rng.Index(3);
    for (std::size_t s = 0; s < syllables; ++s) {
      w += kOnsets[rng.Index(std::size(kOnsets))];
      w += kVowels[rng.Index(std::size(kVowels))];
    }
    if (rng.Uniform() < 0.4) w += kOnsets[rng.Index(14)];
    if (w.size() < 5 || abbreviations.count(w + ".")) continue;
    if (used.insert(w).second) out.push_back(std::move(w));
  }
  return out;
}

std::vector<double> ZipfCdf(std::size_t n, double exponent) {
  std::vector<double> cdf(n);
  double total = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    total += std::pow(static_cast<double>(r + 1), -exponent);
    cdf[r] = total;
  }
  return cdf;
}

}  // namespace

void SynthConfig::Validate() const {
  if (shared_vocab < 1 || human_vocab < 1 || machine_vocab < 1) {
    throw InvalidConfig("synthetic vocabularies must be non-empty");
  }
  if (min_words < 1 || max_words < min_words) {
    throw InvalidConfig("need 1 <= min_words <= max_words");
  }
  if (sentences < 1) throw InvalidConfig("sentences must be >= 1");
  for (double p : {colloquial_rate, colloquial_marker_rate, human_marker_rate,
                   machine_marker_rate}) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw InvalidConfig("synthetic rates must lie in [0, 1]");
    }
  }
}

SynthWorld::SynthWorld(const SynthConfig& cfg) : cfg_(cfg) {
  cfg_.Validate();
  Rng rng(DeriveSeed(cfg.seed, 0x766f6362ULL));
  std::unordered_set<std::string> used;
  shared_ = PseudoWords(cfg.shared_vocab, rng, used);
  human_ = PseudoWords(cfg.human_vocab, rng, used);
  machine_ = PseudoWords(cfg.machine_vocab, rng, used);
  shared_cdf_ = ZipfCdf(shared_.size(), cfg.zipf_exponent);
  human_cdf_ = ZipfCdf(human_.size(), cfg.zipf_exponent);
  machine_cdf_ = ZipfCdf(machine_.size(), cfg.zipf_exponent);
}

std::string SynthWorld::Word(Rng& rng, const std::vector<std::string>& vocab,
                             const std::vector<double>& cumulative) const {
  return vocab[rng.Categorical(cumulative)];
}

std::string SynthWorld::Sentence(Rng& rng, int label) const {
  const std::size_t words =
      cfg_.min_words + rng.Index(cfg_.max_words - cfg_.min_words + 1);
  double marker_rate = cfg_.machine_marker_rate;
  if (label == 0) {
    marker_rate = rng.Uniform() < cfg_.colloquial_rate
                      ? cfg_.colloquial_marker_rate
                      : cfg_.human_marker_rate;
  }
  const auto& markers = label == 0 ? human_ : machine_;
  const auto& marker_cdf = label == 0 ? human_cdf_ : machine_cdf_;
  std::string s;
  for (std::size_t i = 0; i < words; ++i) {
    if (i) s.push_back(' ');
    s += rng.Uniform() < marker_rate ? Word(rng, markers, marker_cdf)
                                     : Word(rng, shared_, shared_cdf_);
  }
  s[0] = static_cast<char>(s[0] - 'a' + 'A');
  s.push_back('.');
  return s;
}

std::string SynthWorld::Text(Rng& rng, int label) const {
  std::string text;
  for (std::size_t i = 0; i < cfg_.sentences; ++i) {
    if (i) text.push_back(' ');
    text += Sentence(rng, label);
  }
  return text;
}

Document SynthWorld::MakeDoc(Rng& rng, int label, std::string id) const {
  return MakeDocument(std::move(id), Text(rng, label), label);
}

SynthCorpus GenerateSynthCorpus(const SynthConfig& cfg, std::size_t train_docs,
                                std::size_t eval_docs, std::size_t pool_size) {
  const SynthWorld world(cfg);
  SynthCorpus c;
  Rng train(DeriveSeed(cfg.seed, 0x6c6dULL));
  for (std::size_t i = 0; i < train_docs; ++i) {
    c.lm_human.push_back(world.Text(train, 0));
    c.lm_machine.push_back(world.Text(train, 1));
  }
  Rng pool(DeriveSeed(cfg.seed, 0x706f6f6cULL));
  for (std::size_t i = 0; i < pool_size; ++i) {
    c.human_pool.push_back(world.Sentence(pool, 0));
  }
  Rng eval(DeriveSeed(cfg.seed, 0x6576616cULL));
  for (std::size_t i = 0; i < eval_docs; ++i) {
    c.human.push_back(world.MakeDoc(eval, 0, "h" + std::to_string(i)));
  }
  for (std::size_t i = 0; i < eval_docs; ++i) {
    c.machine.push_back(world.MakeDoc(eval, 1, "m" + std::to_string(i)));
  }
  return c;
}

std::vector<Document> MixedCorpus(const SynthCorpus& corpus,
                                  std::size_t replacements,
                                  std::uint64_t seed) {
  std::vector<Document> out = corpus.human;
  Rng rng(DeriveSeed(seed, 0x6d6978ULL, replacements));
  for (const auto& d : corpus.machine) {
    out.push_back(
        InjectHumanSentences(d, corpus.human_pool, replacements, rng));
  }
  return out;
}

}  // namespace stackdet
