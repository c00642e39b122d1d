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

#ifndef STACKDET_CORPUS_HPP_
#define STACKDET_CORPUS_HPP_

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stackdet/segmentation.hpp"

namespace stackdet {

/// One JSON object per line: {"id": str, "text": str, "label": 0|1}.
/// `label` may be absent or null. Numeric ids are accepted and kept as
/// their decimal text. Blank lines are skipped. Malformed lines throw
/// DataError naming `source` and the 1-based line number; empty texts
/// throw EmptyDocument with the same context.
/// Parses one line; nullopt for a blank line. `lineno` only labels errors.
std::optional<Document> ParseJsonlLine(const std::string& line,
                                       const std::string& source,
                                       std::size_t lineno,
                                       const SentenceSplitter& splitter =
                                           SentenceSplitter());

std::vector<Document> ReadJsonl(std::istream& in, const std::string& source,
                                const SentenceSplitter& splitter =
                                    SentenceSplitter());
std::vector<Document> ReadJsonl(const std::string& path,
                                const SentenceSplitter& splitter =
                                    SentenceSplitter());

void WriteJsonl(std::ostream& out, std::span<const Document> docs);
void WriteJsonl(const std::string& path, std::span<const Document> docs);

}  // namespace stackdet

#endif  // STACKDET_CORPUS_HPP_
