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

#include "stackdet/lm_detector.hpp"

#include <cmath>
#include <utility>

#include "stackdet/error.hpp"
#include "stackdet/featurize.hpp"
#include "stackdet/rng.hpp"

namespace stackdet {
namespace {

constexpr std::uint64_t kBeginOfText = 0x5bd1e9955bd1e995ULL;

std::uint64_t Combine(std::uint64_t h, std::uint64_t t) {
  return Mix64(h * 0x100000001b3ULL ^ t);
}

std::uint64_t Lookup(const std::unordered_map<std::uint64_t, std::uint64_t>& m,
                     std::uint64_t key) {
  const auto it = m.find(key);
  return it == m.end() ? 0 : it->second;
}

}  // namespace

NGramLMDetector::NGramLMDetector(std::uint32_t order, double lambda)
    : order_(order), lambda_(lambda) {
  if (order_ < 1) throw InvalidConfig("LM order must be >= 1");
  if (!(lambda_ > 0.0) || !std::isfinite(lambda_)) {
    throw InvalidConfig("LM smoothing lambda must be > 0");
  }
}

NGramLMDetector NGramLMDetector::Fit(std::span<const std::string> human,
                                     std::span<const std::string> machine,
                                     std::uint32_t order, double lambda) {
  NGramLMDetector d(order, lambda);
  for (const auto& t : human) d.AddHuman(t);
  for (const auto& t : machine) d.AddMachine(t);
  return d;
}

template <typename Fn>
void NGramLMDetector::ForEachKey(std::string_view text, Fn&& fn) const {
  // Ring of the last order - 1 token ids; unused for unigrams.
  std::vector<std::uint64_t> history;
  if (order_ > 1) history.assign(order_ - 1, kBeginOfText);
  std::size_t head = 0;
  ForEachWordHash(text, [&](std::uint64_t id) {
    std::uint64_t ctx = order_;
    for (std::uint32_t back = order_ - 1; back >= 1; --back) {
      ctx = Combine(ctx, history[(head + history.size() - back) %
                                 history.size()]);
    }
    fn(Key{ctx, Combine(ctx, id)}, id);
    if (!history.empty()) {
      history[head] = id;
      head = (head + 1) % history.size();
    }
  });
}

void NGramLMDetector::Add(std::string_view text, NGramCounts& counts) {
  ForEachKey(text, [&](const Key& k, std::uint64_t id) {
    ++counts.ngrams[k.ngram];
    ++counts.contexts[k.context];
    vocab_.insert(id);
  });
}

double NGramLMDetector::LogProb(const NGramCounts& counts,
                                const Key& key) const {
  const double num = static_cast<double>(Lookup(counts.ngrams, key.ngram)) +
                     lambda_;
  const double den = static_cast<double>(Lookup(counts.contexts, key.context)) +
                     lambda_ * static_cast<double>(vocab_size());
  return std::log(num / den);
}

DetectorScore NGramLMDetector::ScoreOne(std::string_view text) const {
  double logit = 0.0;
  std::size_t tokens = 0;
  ForEachKey(text, [&](const Key& k, std::uint64_t) {
    logit += LogProb(machine_, k) - LogProb(human_, k);
    ++tokens;
  });
  if (tokens == 0) throw EmptyDocument("text has no tokens to score");
  return FromLogit(logit);
}

NGramLMDetector NGramLMDetector::Swapped() const {
  NGramLMDetector d = *this;
  std::swap(d.human_, d.machine_);
  return d;
}

void NGramLMDetector::Restore(NGramCounts human, NGramCounts machine,
                              std::unordered_set<std::uint64_t> vocab) {
  human_ = std::move(human);
  machine_ = std::move(machine);
  vocab_ = std::move(vocab);
}

}  // namespace stackdet
