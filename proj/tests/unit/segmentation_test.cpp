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


#include <gtest/gtest.h>

#include <cctype>
#include <iterator>
#include <set>
#include <string>
#include <vector>

#include "stackdet/error.hpp"
#include "stackdet/retention.hpp"
#include "stackdet/rng.hpp"
#include "stackdet/segmentation.hpp"

namespace sd = stackdet;

namespace {

std::vector<std::string> Sentences(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& s : sd::SplitSentences(text)) {
    out.emplace_back(text.substr(s.begin, s.size()));
  }
  return out;
}

using Strings = std::vector<std::string>;

std::string RandomText(sd::Rng& rng) {
  static const char* kWords[] = {"alpha", "beta", "Dr.", "gamma", "e.g.",
                                 "delta", "(note", "this)", "\"quoted",
                                 "words\"", "omega", "x"};
  static const char* kEnds[] = {".", "?", "!", "...", "?!", ".\""};
  std::string text;
  const std::size_t sentences = 1 + rng.Index(8);
  for (std::size_t s = 0; s < sentences; ++s) {
    const std::size_t words = 1 + rng.Index(6);
    for (std::size_t w = 0; w < words; ++w) {
      if (!text.empty()) text += rng.Index(5) == 0 ? "  " : " ";
      text += kWords[rng.Index(std::size(kWords))];
    }
    text += kEnds[rng.Index(std::size(kEnds))];
  }
  return text;
}

sd::Document Doc(std::string text) { return sd::MakeDocument("d", text); }

}  // namespace

TEST(Split, SingleSentence) {
  EXPECT_EQ(Sentences("Hello world."), Strings{"Hello world."});
}

TEST(Split, MixedTerminators) {
  EXPECT_EQ(Sentences("A. B? C!"), (Strings{"A.", "B?", "C!"}));
}

TEST(Split, AbbreviationDoesNotBreak) {
  EXPECT_EQ(Sentences("Dr. Smith left. He returned."),
            (Strings{"Dr. Smith left.", "He returned."}));
}

TEST(Split, AbbreviationsAreCaseInsensitive) {
  EXPECT_EQ(Sentences("See FIG. 2 below. Done."),
            (Strings{"See FIG. 2 below.", "Done."}));
}

TEST(Split, TerminatorRunsStayTogether) {
  EXPECT_EQ(Sentences("What?! Yes... Fine."),
            (Strings{"What?!", "Yes...", "Fine."}));
}

TEST(Split, UnicodeEllipsis) {
  EXPECT_EQ(Sentences("Wait\xE2\x80\xA6 Then go."),
            (Strings{"Wait\xE2\x80\xA6", "Then go."}));
}

TEST(Split, NoBreakInsideQuotes) {
  EXPECT_EQ(Sentences("He said \"Stop. Now.\" Then left."),
            (Strings{"He said \"Stop. Now.\"", "Then left."}));
}

TEST(Split, NoBreakInsideBrackets) {
  EXPECT_EQ(Sentences("(A. B.) C."), (Strings{"(A. B.)", "C."}));
}

TEST(Split, DecimalNumbersDoNotBreak) {
  EXPECT_EQ(Sentences("Pi is 3.14 roughly. Yes."),
            (Strings{"Pi is 3.14 roughly.", "Yes."}));
}

TEST(Split, TrailingTextWithoutTerminator) {
  EXPECT_EQ(Sentences("One. two three"), (Strings{"One.", "two three"}));
}

TEST(Split, WhitespaceOnlyGivesNothing) {
  EXPECT_TRUE(sd::SplitSentences("  \n\t ").empty());
  EXPECT_TRUE(sd::SplitSentences("").empty());
}

TEST(Split, CustomAbbreviations) {
  sd::SentenceSplitter none(std::set<std::string>{});
  const std::string text = "Dr. Who.";
  EXPECT_EQ(none.Split(text).size(), 2u);
  sd::SentenceSplitter custom({"Who."});
  EXPECT_EQ(custom.Split("Ask Who. now.").size(), 1u);
}

TEST(Split, ShippedListMatchesDefault) {
  const auto file =
      sd::SentenceSplitter::FromFile(STACKDET_DATA_DIR "/abbreviations.txt");
  EXPECT_EQ(file.abbreviations(), sd::SentenceSplitter::DefaultAbbreviations());
}

TEST(Split, MissingAbbreviationFile) {
  EXPECT_THROW(sd::SentenceSplitter::FromFile("/nonexistent/abbr.txt"),
               sd::InvalidConfig);
}

TEST(Split, SpansAreOrderedTrimmedAndCoverAllText) {
  sd::Rng rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const std::string text = RandomText(rng);
    const auto spans = sd::SplitSentences(text);
    ASSERT_FALSE(spans.empty());
    std::size_t covered_to = 0;
    for (const auto& s : spans) {
      ASSERT_LT(s.begin, s.end);
      ASSERT_GE(s.begin, covered_to);
      for (std::size_t i = covered_to; i < s.begin; ++i) {
        ASSERT_TRUE(std::isspace(static_cast<unsigned char>(text[i])))
            << text;
      }
      ASSERT_FALSE(std::isspace(static_cast<unsigned char>(text[s.begin])));
      ASSERT_FALSE(std::isspace(static_cast<unsigned char>(text[s.end - 1])));
      covered_to = s.end;
    }
    for (std::size_t i = covered_to; i < text.size(); ++i) {
      ASSERT_TRUE(std::isspace(static_cast<unsigned char>(text[i])));
    }
    ASSERT_EQ(spans, sd::SplitSentences(text));
  }
}

TEST(MakeDocument, EmptyTextThrows) {
  EXPECT_THROW(sd::MakeDocument("e", "   "), sd::EmptyDocument);
}

TEST(MakeDocument, RejectsBadLabel) {
  EXPECT_THROW(sd::MakeDocument("e", "Hi.", 2), sd::DataError);
}

TEST(Group, SizesForFiveSentences) {
  const auto doc = Doc("A. B. C. D. E.");
  const auto g1 = sd::GroupSubsequences(doc, 1);
  EXPECT_EQ(g1.size(), 5u);
  const auto g2 = sd::GroupSubsequences(doc, 2);
  ASSERT_EQ(g2.size(), 3u);
  EXPECT_EQ(g2.groups[0], (std::pair<std::size_t, std::size_t>{0, 2}));
  EXPECT_EQ(g2.groups[1], (std::pair<std::size_t, std::size_t>{2, 4}));
  EXPECT_EQ(g2.groups[2], (std::pair<std::size_t, std::size_t>{4, 5}));
  EXPECT_EQ(sd::GroupTexts(doc, g2), (Strings{"A. B.", "C. D.", "E."}));
  EXPECT_EQ(g2.parent, "d");
}

TEST(Group, ExactMultiple) {
  const auto g = sd::GroupSubsequences(Doc("A. B. C. D. E. F."), 3);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g.groups[1].second - g.groups[1].first, 3u);
}

TEST(Group, KLargerThanDocument) {
  const auto doc = Doc("A. B.");
  const auto g = sd::GroupSubsequences(doc, 10);
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(sd::GroupText(doc, g, 0), "A. B.");
}

TEST(Group, ZeroKIsInvalid) {
  EXPECT_THROW(sd::GroupSubsequences(Doc("A."), 0), sd::InvalidConfig);
}

TEST(Reconstruct, DropsMiddleGroup) {
  const auto doc = Doc("A. B. C.");
  const auto g = sd::GroupSubsequences(doc, 1);
  EXPECT_EQ(sd::Reconstruct(doc, g, sd::RetentionMask{{1, 0, 1}}), "A. C.");
  EXPECT_EQ(sd::Reconstruct(doc, g, sd::RetentionMask{{0, 1, 0}}), "B.");
}

TEST(Reconstruct, JoinsWithSingleSpaces) {
  const auto doc = Doc("A.\n\n  B.   C.");
  const auto g = sd::GroupSubsequences(doc, 1);
  EXPECT_EQ(sd::Reconstruct(doc, g, sd::RetentionMask{{1, 0, 1}}), "A. C.");
}

TEST(Reconstruct, AllZeroThrows) {
  const auto doc = Doc("A. B.");
  const auto g = sd::GroupSubsequences(doc, 1);
  EXPECT_THROW(sd::Reconstruct(doc, g, sd::RetentionMask{{0, 0}}),
               sd::EmptyRetention);
}

TEST(Reconstruct, LengthMismatchThrows) {
  const auto doc = Doc("A. B.");
  const auto g = sd::GroupSubsequences(doc, 1);
  EXPECT_THROW(sd::Reconstruct(doc, g, sd::RetentionMask{{1}}),
               sd::InvalidConfig);
}

TEST(Reconstruct, RoundTripOnSingleSpacedText) {
  sd::Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::string text = RandomText(rng);
    // Normalize to single spaces so the full reconstruction is verbatim.
    std::string single;
    for (char c : text) {
      if (c == ' ' && !single.empty() && single.back() == ' ') continue;
      single += c;
    }
    const auto doc = Doc(single);
    for (std::size_t k = 1; k <= 4; ++k) {
      const auto g = sd::GroupSubsequences(doc, k);
      sd::RetentionMask all{std::vector<std::uint8_t>(g.size(), 1)};
      ASSERT_EQ(sd::Reconstruct(doc, g, all), single);
    }
  }
}

TEST(Reconstruct, LengthIsMonotoneInTheMask) {
  sd::Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const auto doc = Doc(RandomText(rng));
    const auto g = sd::GroupSubsequences(doc, 1 + rng.Index(3));
    sd::RetentionMask mask{std::vector<std::uint8_t>(g.size(), 1)};
    std::size_t last = sd::Reconstruct(doc, g, mask).size();
    auto order = rng.Sample(g.size(), g.size() - 1);
    for (std::size_t j : order) {
      mask.bits[j] = 0;
      const std::size_t now = sd::Reconstruct(doc, g, mask).size();
      ASSERT_LT(now, last);
      last = now;
    }
  }
}
