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

#ifndef STACKDET_LM_DETECTOR_HPP_
#define STACKDET_LM_DETECTOR_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "stackdet/detector.hpp"

namespace stackdet {

/// Word n-gram counts for one class. Keys are 64-bit hashes; an n-gram key
/// covers (context, token), a context key covers the n-1 preceding tokens
/// with begin-of-text padding.
struct NGramCounts {
  std::unordered_map<std::uint64_t, std::uint64_t> ngrams;
  std::unordered_map<std::uint64_t, std::uint64_t> contexts;

  bool operator==(const NGramCounts&) const = default;
};

/// Zero-shot detector: logit = log M(text) - log H(text), where M and H
/// are add-lambda smoothed conditional n-gram models
///   P(w | c) = (count(c, w) + lambda) / (count(c) + lambda * V)
/// and V is the joint vocabulary size plus one unknown slot.
class NGramLMDetector : public LocalDetector {
 public:
  NGramLMDetector(std::uint32_t order, double lambda);

  static NGramLMDetector Fit(std::span<const std::string> human,
                             std::span<const std::string> machine,
                             std::uint32_t order = 1, double lambda = 0.1);

  void AddHuman(std::string_view text) { Add(text, human_); }
  void AddMachine(std::string_view text) { Add(text, machine_); }

  /// Same detector with the class tables exchanged; its scores are exactly
  /// 1 - s of this one.
  NGramLMDetector Swapped() const;

  std::string name() const override { return "ngram-lm"; }
  DetectorScore ScoreOne(std::string_view text) const override;

  std::uint32_t order() const { return order_; }
  double lambda() const { return lambda_; }
  std::uint64_t vocab_size() const { return vocab_.size() + 1; }
  const NGramCounts& human() const { return human_; }
  const NGramCounts& machine() const { return machine_; }
  const std::unordered_set<std::uint64_t>& vocab() const { return vocab_; }

  // Used by model loading.
  void Restore(NGramCounts human, NGramCounts machine,
               std::unordered_set<std::uint64_t> vocab);

 private:
  struct Key {
    std::uint64_t context;
    std::uint64_t ngram;
  };
  template <typename Fn>
  void ForEachKey(std::string_view text, Fn&& fn) const;
  void Add(std::string_view text, NGramCounts& counts);
  double LogProb(const NGramCounts& counts, const Key& key) const;

  std::uint32_t order_;
  double lambda_;
  NGramCounts human_;
  NGramCounts machine_;
  std::unordered_set<std::uint64_t> vocab_;
};

}  // namespace stackdet

#endif  // STACKDET_LM_DETECTOR_HPP_
