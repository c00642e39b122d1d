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

#include "stackdet/featurize.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "stackdet/error.hpp"

namespace stackdet {
namespace {


bool IsWordByte(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z') || c >= 0x80;
}

char Lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

// Units the n-grams are built from: word tokens, or single bytes of the
// whitespace-collapsed text.
std::vector<std::string_view> Units(FeatureMode mode, std::string_view text,
                                    std::string& scratch) {
  if (mode == FeatureMode::kWord) return WordTokens(text, scratch);
  scratch.clear();
  scratch.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    const bool space = c == ' ' || c == '\t' || c == '\n' || c == '\r' ||
                       c == '\f' || c == '\v';
    if (space) {
      pending_space = !scratch.empty();
      continue;
    }
    if (pending_space) scratch.push_back(' ');
    pending_space = false;
    scratch.push_back(Lower(c));
  }
  std::vector<std::string_view> units;
  units.reserve(scratch.size());
  for (std::size_t i = 0; i < scratch.size(); ++i) {
    units.emplace_back(scratch.data() + i, 1);
  }
  return units;
}

}  // namespace

const char* FeatureModeName(FeatureMode mode) {
  return mode == FeatureMode::kWord ? "word" : "char";
}

FeatureMode ParseFeatureMode(std::string_view name) {
  if (name == "word") return FeatureMode::kWord;
  if (name == "char") return FeatureMode::kChar;
  throw InvalidConfig("feature mode must be 'word' or 'char', got '" +
                      std::string(name) + "'");
}

std::vector<std::string_view> WordTokens(std::string_view text,
                                         std::string& scratch) {
  scratch.assign(text.begin(), text.end());
  for (char& c : scratch) c = Lower(c);
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < scratch.size()) {
    while (i < scratch.size() &&
           !IsWordByte(static_cast<unsigned char>(scratch[i]))) {
      ++i;
    }
    const std::size_t start = i;
    while (i < scratch.size() &&
           IsWordByte(static_cast<unsigned char>(scratch[i]))) {
      ++i;
    }
    if (i > start) tokens.emplace_back(scratch.data() + start, i - start);
  }
  return tokens;
}

std::uint64_t HashPieces(std::span<const std::string_view> pieces) {
  std::uint64_t h = kFnvOffset;
  bool first = true;
  for (auto piece : pieces) {
    if (!first) {
      h ^= 0x1fU;
      h *= kFnvPrime;
    }
    first = false;
    for (unsigned char c : piece) {
      h ^= c;
      h *= kFnvPrime;
    }
  }
  return h;
}

HashingFeaturizer::HashingFeaturizer(FeatureMode mode, std::uint32_t n,
                                     std::uint32_t buckets)
    : mode_(mode), n_(n), buckets_(buckets) {
  if (n_ < 1) throw InvalidConfig("n-gram order must be >= 1");
  if (buckets_ < 1) throw InvalidConfig("hash_buckets must be >= 1");
}

SparseVector HashingFeaturizer::Featurize(std::string_view text) const {
  std::string scratch;
  const auto units = Units(mode_, text, scratch);

  std::vector<std::uint32_t> hits;
  hits.reserve(units.size() * n_);
  for (std::size_t i = 0; i < units.size(); ++i) {
    for (std::uint32_t order = 1; order <= n_ && i + order <= units.size();
         ++order) {
      const std::uint64_t h = HashPieces(
          std::span<const std::string_view>(units.data() + i, order));
      // Mix the order in so "a b" and a unigram colliding on text do not
      // share a slot by construction.
      const std::uint64_t keyed = h ^ (0x9e3779b97f4a7c15ULL * order);
      hits.push_back(static_cast<std::uint32_t>(keyed % buckets_));
    }
  }
  std::sort(hits.begin(), hits.end());

  SparseVector out;
  double norm2 = 0.0;
  for (std::size_t i = 0; i < hits.size();) {
    std::size_t j = i;
    while (j < hits.size() && hits[j] == hits[i]) ++j;
    const double v = std::log1p(static_cast<double>(j - i));
    out.index.push_back(hits[i]);
    out.value.push_back(v);
    norm2 += v * v;
    i = j;
  }
  if (norm2 > 0.0) {
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& v : out.value) v *= inv;
  }
  return out;
}

}  // namespace stackdet
