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

#ifndef STACKDET_FEATURIZE_HPP_
#define STACKDET_FEATURIZE_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stackdet {

enum class FeatureMode : std::uint8_t { kWord = 0, kChar = 1 };

const char* FeatureModeName(FeatureMode mode);
FeatureMode ParseFeatureMode(std::string_view name);

/// Lower-cased maximal runs of ASCII alphanumerics; bytes >= 0x80 count as
/// word characters so UTF-8 words stay whole.
std::vector<std::string_view> WordTokens(std::string_view text,
                                         std::string& scratch);

inline constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
inline constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

/// FNV-1a 64 over the given pieces with a 0x1f separator between them.
std::uint64_t HashPieces(std::span<const std::string_view> pieces);

/// Calls fn(hash) for each token WordTokens would produce, in order, with
/// hash == HashPieces({token}). Allocates nothing.
template <typename Fn>
void ForEachWordHash(std::string_view text, Fn&& fn) {
  std::uint64_t h = kFnvOffset;
  bool in_word = false;
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    const bool word = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
                      (c >= 'A' && c <= 'Z') || c >= 0x80;
    if (word) {
      if (c >= 'A' && c <= 'Z') c = static_cast<unsigned char>(c - 'A' + 'a');
      h = (h ^ c) * kFnvPrime;
      in_word = true;
    } else if (in_word) {
      fn(h);
      h = kFnvOffset;
      in_word = false;
    }
  }
  if (in_word) fn(h);
}

/// Sorted, duplicate-free sparse vector.
struct SparseVector {
  std::vector<std::uint32_t> index;
  std::vector<double> value;

  std::size_t size() const { return index.size(); }
};

/// Hashes all n-grams of order 1..n into `buckets` bins, applies log1p
/// to the counts and L2-normalizes. Deterministic across platforms.
class HashingFeaturizer {
 public:
  HashingFeaturizer(FeatureMode mode, std::uint32_t n, std::uint32_t buckets);

  /// Empty result means the text has no tokens.
  SparseVector Featurize(std::string_view text) const;

  FeatureMode mode() const { return mode_; }
  std::uint32_t n() const { return n_; }
  std::uint32_t buckets() const { return buckets_; }

 private:
  FeatureMode mode_;
  std::uint32_t n_;
  std::uint32_t buckets_;
};

}  // namespace stackdet

#endif  // STACKDET_FEATURIZE_HPP_
