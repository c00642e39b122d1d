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

#include "stackdet/segmentation.hpp"

#include <fstream>

#include "stackdet/error.hpp"
#include "stackdet/retention.hpp"

namespace stackdet {
namespace {

bool IsSpace(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

std::string AsciiLower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

constexpr std::string_view kEllipsis = "\xE2\x80\xA6";    // U+2026
constexpr std::string_view kLeftDquo = "\xE2\x80\x9C";    // U+201C
constexpr std::string_view kRightDquo = "\xE2\x80\x9D";   // U+201D

// Length of the terminator starting at `i`, or 0.
std::size_t TerminatorAt(std::string_view t, std::size_t i) {
  const char c = t[i];
  if (c == '.' || c == '!' || c == '?') return 1;
  if (t.substr(i, kEllipsis.size()) == kEllipsis) return kEllipsis.size();
  return 0;
}

// Nesting tracker for paired quotes and brackets. Straight double quotes
// toggle; single quotes are ignored because they double as apostrophes.
struct Nesting {
  int brackets = 0;
  int curly_quotes = 0;
  bool straight_quote = false;

  bool open() const {
    return brackets > 0 || curly_quotes > 0 || straight_quote;
  }

  // Consumes the delimiter at `i` if there is one; returns its length.
  std::size_t Feed(std::string_view t, std::size_t i) {
    const char c = t[i];
    switch (c) {
      case '(':
      case '[':
      case '{':
        ++brackets;
        return 1;
      case ')':
      case ']':
      case '}':
        if (brackets > 0) --brackets;
        return 1;
      case '"':
        straight_quote = !straight_quote;
        return 1;
      default:
        break;
    }
    if (t.substr(i, kLeftDquo.size()) == kLeftDquo) {
      ++curly_quotes;
      return kLeftDquo.size();
    }
    if (t.substr(i, kRightDquo.size()) == kRightDquo) {
      if (curly_quotes > 0) --curly_quotes;
      return kRightDquo.size();
    }
    return 0;
  }
};

// Closing delimiter length at `i` given the current nesting, or 0.
std::size_t CloserAt(std::string_view t, std::size_t i, const Nesting& n) {
  const char c = t[i];
  if (c == ')' || c == ']' || c == '}') return 1;
  if (c == '"' && n.straight_quote) return 1;
  if (t.substr(i, kRightDquo.size()) == kRightDquo) return kRightDquo.size();
  return 0;
}

}  // namespace

const std::set<std::string>& SentenceSplitter::DefaultAbbreviations() {
  // Mirrors data/abbreviations.txt.
  static const std::set<std::string> kDefaults = {
      "mr.",   "mrs.",  "ms.",  "dr.",   "prof.", "sr.",   "jr.",
      "st.",   "vs.",   "etc.", "e.g.",  "i.e.",  "inc.",  "ltd.",
      "co.",   "corp.", "no.",  "fig.",  "approx.", "dept.", "est.",
      "jan.",  "feb.",  "mar.", "apr.",  "jun.",  "jul.",  "aug.",
      "sep.",  "sept.", "oct.", "nov.",  "dec.",  "u.s.",  "u.k.",
      "a.m.",  "p.m.",  "cf.",  "al.",   "gen.",  "gov.",  "mt.",
  };
  return kDefaults;
}

SentenceSplitter::SentenceSplitter() : abbrevs_(DefaultAbbreviations()) {}

SentenceSplitter::SentenceSplitter(std::set<std::string> abbreviations) {
  for (const auto& a : abbreviations) {
    std::string lower = AsciiLower(a);
    if (lower.empty()) continue;
    if (lower.back() != '.') lower.push_back('.');
    abbrevs_.insert(std::move(lower));
  }
}

SentenceSplitter SentenceSplitter::FromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidConfig("cannot open abbreviation list: " + path);
  std::set<std::string> list;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t b = 0, e = line.size();
    while (b < e && IsSpace(static_cast<unsigned char>(line[b]))) ++b;
    while (e > b && IsSpace(static_cast<unsigned char>(line[e - 1]))) --e;
    if (b == e || line[b] == '#') continue;
    list.insert(line.substr(b, e - b));
  }
  return SentenceSplitter(std::move(list));
}

bool SentenceSplitter::IsAbbreviation(std::string_view text,
                                      std::size_t period_pos) const {
  std::size_t start = period_pos;
  while (start > 0 && !IsSpace(static_cast<unsigned char>(text[start - 1]))) {
    --start;
  }
  // Skip opening punctuation glued to the token, e.g. "(Dr.".
  while (start < period_pos &&
         (text[start] == '(' || text[start] == '[' || text[start] == '"')) {
    ++start;
  }
  const std::string token =
      AsciiLower(text.substr(start, period_pos + 1 - start));
  return abbrevs_.count(token) > 0;
}

std::vector<Span> SentenceSplitter::Split(std::string_view text) const {
  std::vector<Span> spans;
  Nesting nesting;
  std::size_t sentence_start = std::string_view::npos;

  auto close_sentence = [&](std::size_t end) {
    std::size_t e = end;
    while (e > sentence_start &&
           IsSpace(static_cast<unsigned char>(text[e - 1]))) {
      --e;
    }
    if (e > sentence_start) spans.push_back({sentence_start, e});
    sentence_start = std::string_view::npos;
  };

  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (sentence_start == std::string_view::npos) {
      if (IsSpace(c)) {
        ++i;
        continue;
      }
      sentence_start = i;
    }

    const std::size_t term = TerminatorAt(text, i);
    if (term == 0) {
      const std::size_t consumed = nesting.Feed(text, i);
      i += consumed > 0 ? consumed : 1;
      continue;
    }

    const bool single_period = text[i] == '.';
    std::size_t j = i + term;
    // Absorb a run of terminators ("?!", "...").
    while (j < text.size()) {
      const std::size_t more = TerminatorAt(text, j);
      if (more == 0) break;
      j += more;
    }
    const bool guarded = single_period && j == i + 1 &&
                         IsAbbreviation(text, i);
    // Absorb trailing closers (quotes, brackets) on a scratch copy so a
    // rejected break does not disturb the real nesting state.
    Nesting after = nesting;
    while (j < text.size()) {
      const std::size_t closer = CloserAt(text, j, after);
      if (closer == 0) break;
      after.Feed(text, j);
      j += closer;
    }
    const bool at_boundary =
        j == text.size() || IsSpace(static_cast<unsigned char>(text[j]));
    if (!guarded && at_boundary && !after.open()) {
      nesting = after;
      close_sentence(j);
    } else {
      nesting = after;
    }
    i = j;
  }
  if (sentence_start != std::string_view::npos) close_sentence(text.size());
  return spans;
}

std::vector<Span> SplitSentences(std::string_view text) {
  static const SentenceSplitter kDefault;
  return kDefault.Split(text);
}

Document MakeDocument(std::string id, std::string text,
                      std::optional<int> label,
                      const SentenceSplitter& splitter) {
  if (label && *label != 0 && *label != 1) {
    throw DataError("document '" + id + "': label must be 0 or 1");
  }
  Document doc;
  doc.id = std::move(id);
  doc.text = std::move(text);
  doc.label = label;
  doc.sentences = splitter.Split(doc.text);
  if (doc.sentences.empty()) {
    throw EmptyDocument("document '" + doc.id + "' is empty");
  }
  return doc;
}

SubsequenceSet GroupSubsequences(const Document& doc, std::size_t k) {
  if (k < 1) throw InvalidConfig("subsequence size k must be >= 1");
  if (doc.sentences.empty()) {
    throw EmptyDocument("document '" + doc.id + "' has no sentences");
  }
  SubsequenceSet set;
  set.parent = doc.id;
  set.k = k;
  const std::size_t n = doc.sentences.size();
  set.groups.reserve((n + k - 1) / k);
  for (std::size_t first = 0; first < n; first += k) {
    set.groups.emplace_back(first, std::min(first + k, n));
  }
  return set;
}

std::string_view GroupText(const Document& doc, const SubsequenceSet& groups,
                           std::size_t j) {
  const auto [first, last] = groups.groups.at(j);
  const std::size_t b = doc.sentences[first].begin;
  const std::size_t e = doc.sentences[last - 1].end;
  return std::string_view(doc.text).substr(b, e - b);
}

std::vector<std::string> GroupTexts(const Document& doc,
                                    const SubsequenceSet& groups) {
  std::vector<std::string> out;
  out.reserve(groups.size());
  for (std::size_t j = 0; j < groups.size(); ++j) {
    out.emplace_back(GroupText(doc, groups, j));
  }
  return out;
}

std::string Reconstruct(const Document& doc, const SubsequenceSet& groups,
                        const RetentionMask& mask) {
  if (mask.bits.size() != groups.size()) {
    throw InvalidConfig("mask length " + std::to_string(mask.bits.size()) +
                        " does not match group count " +
                        std::to_string(groups.size()));
  }
  std::string out;
  for (std::size_t j = 0; j < groups.size(); ++j) {
    if (!mask.bits[j]) continue;
    if (!out.empty()) out.push_back(' ');
    out.append(GroupText(doc, groups, j));
  }
  if (out.empty()) {
    throw EmptyRetention("retention mask filters every group of '" +
                         doc.id + "'");
  }
  return out;
}

}  // namespace stackdet
