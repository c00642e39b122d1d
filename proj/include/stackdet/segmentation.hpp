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

#ifndef STACKDET_SEGMENTATION_HPP_
#define STACKDET_SEGMENTATION_HPP_

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace stackdet {

/// Half-open byte range [begin, end) into a UTF-8 string.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool operator==(const Span&) const = default;
};

struct Document {
  std::string id;
  std::string text;
  std::optional<int> label;  // 0 = human, 1 = machine
  std::vector<Span> sentences;

  std::string_view sentence(std::size_t i) const {
    return std::string_view(text).substr(sentences[i].begin,
                                         sentences[i].size());
  }
};

/// Contiguous sentence-index ranges [first, last) over one document.
struct SubsequenceSet {
  std::string parent;
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  std::size_t k = 1;

  std::size_t size() const { return groups.size(); }
};

struct RetentionMask;

/// Rule-based sentence splitter.
///
/// A break is placed after a run of terminators (`.`, `!`, `?`, U+2026)
/// and any closing quotes/brackets that follow it, provided the next byte
/// is whitespace or end of text and no quote or bracket is left open. A
/// `.` that ends a guarded abbreviation (compared case-insensitively on
/// the whitespace-delimited token) never breaks. Output spans are trimmed
/// and cover every non-whitespace byte.
class SentenceSplitter {
 public:
  SentenceSplitter();
  explicit SentenceSplitter(std::set<std::string> abbreviations);

  /// One abbreviation per line; blank lines and `#` comments skipped.
  static SentenceSplitter FromFile(const std::string& path);
  static const std::set<std::string>& DefaultAbbreviations();

  std::vector<Span> Split(std::string_view text) const;

  const std::set<std::string>& abbreviations() const { return abbrevs_; }

 private:
  bool IsAbbreviation(std::string_view text, std::size_t period_pos) const;

  std::set<std::string> abbrevs_;  // stored lower-case, with trailing '.'
};

/// Splits with the default abbreviation list.
std::vector<Span> SplitSentences(std::string_view text);

/// Builds a Document and segments it. Throws EmptyDocument for
/// whitespace-only text and DataError for a label outside {0, 1}.
Document MakeDocument(std::string id, std::string text,
                      std::optional<int> label = std::nullopt,
                      const SentenceSplitter& splitter = SentenceSplitter());

/// Greedy left-to-right grouping into ceil(n/k) groups of at most k
/// sentences. Throws InvalidConfig when k < 1.
SubsequenceSet GroupSubsequences(const Document& doc, std::size_t k);

/// Original text of group j: from its first sentence start to its last
/// sentence end, inner whitespace untouched.
std::string_view GroupText(const Document& doc, const SubsequenceSet& groups,
                           std::size_t j);

std::vector<std::string> GroupTexts(const Document& doc,
                                    const SubsequenceSet& groups);

/// Retained groups in document order, joined by a single space.
/// Throws EmptyRetention for an all-zero mask and InvalidConfig when the
/// mask length does not match the group count.
std::string Reconstruct(const Document& doc, const SubsequenceSet& groups,
                        const RetentionMask& mask);

}  // namespace stackdet

#endif  // STACKDET_SEGMENTATION_HPP_
