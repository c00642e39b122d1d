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
#include <set>
#include <string>
#include <vector>

#include "stackdet/error.hpp"
#include "stackdet/evaluation.hpp"
#include "stackdet/segmentation.hpp"
#include "stackdet/synth.hpp"

namespace sd = stackdet;

TEST(Synth, SentencesHaveTheRequestedShape) {
  sd::SynthConfig cfg;
  sd::SynthWorld world(cfg);
  sd::Rng rng(1);
  const auto& abbreviations = sd::SentenceSplitter::DefaultAbbreviations();
  for (int i = 0; i < 200; ++i) {
    const std::string s = world.Sentence(rng, i % 2);
    ASSERT_EQ(s.back(), '.');
    ASSERT_TRUE(s[0] >= 'A' && s[0] <= 'Z');
    std::size_t words = 1;
    for (char c : s) words += c == ' ';
    ASSERT_GE(words, cfg.min_words);
    ASSERT_LE(words, cfg.max_words);
    ASSERT_EQ(sd::SplitSentences(s).size(), 1u) << s;
    const auto last = s.substr(s.rfind(' ') + 1);
    std::string lower;
    for (char c : last) lower += static_cast<char>(std::tolower(c));
    ASSERT_EQ(abbreviations.count(lower), 0u);
  }
}

TEST(Synth, DocumentsSplitIntoConfiguredSentences) {
  sd::SynthConfig cfg;
  cfg.sentences = 9;
  sd::SynthWorld world(cfg);
  sd::Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    const auto doc = world.MakeDoc(rng, i % 2, "d" + std::to_string(i));
    ASSERT_EQ(doc.sentences.size(), 9u);
    ASSERT_EQ(doc.label, i % 2);
  }
}

TEST(Synth, CorpusIsDeterministic) {
  sd::SynthConfig cfg;
  cfg.seed = 4;
  const auto a = sd::GenerateSynthCorpus(cfg, 5, 6, 20);
  const auto b = sd::GenerateSynthCorpus(cfg, 5, 6, 20);
  EXPECT_EQ(a.lm_human, b.lm_human);
  EXPECT_EQ(a.human_pool, b.human_pool);
  ASSERT_EQ(a.human.size(), 6u);
  ASSERT_EQ(a.machine.size(), 6u);
  EXPECT_EQ(a.lm_machine.size(), 5u);
  EXPECT_EQ(a.human_pool.size(), 20u);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(a.machine[i].text, b.machine[i].text);
  cfg.seed = 5;
  EXPECT_NE(sd::GenerateSynthCorpus(cfg, 5, 6, 20).lm_human, a.lm_human);
}

TEST(Synth, MixedCorpusInjectsPoolSentences) {
  sd::SynthConfig cfg;
  const auto corpus = sd::GenerateSynthCorpus(cfg, 2, 10, 50);
  const auto mixed = sd::MixedCorpus(corpus, 3, 9);
  ASSERT_EQ(mixed.size(), 20u);
  const std::set<std::string> pool(corpus.human_pool.begin(),
                                   corpus.human_pool.end());
  for (std::size_t i = 0; i < 10; ++i) {
    EXPECT_EQ(mixed[i].label, 0);
    EXPECT_EQ(mixed[i].text, corpus.human[i].text);
    const auto& m = mixed[10 + i];
    EXPECT_EQ(m.label, 1);
    std::size_t from_pool = 0;
    for (std::size_t s = 0; s < m.sentences.size(); ++s) {
      from_pool += pool.count(std::string(m.sentence(s)));
    }
    EXPECT_GE(from_pool, 3u);
  }
  const auto again = sd::MixedCorpus(corpus, 3, 9);
  EXPECT_EQ(again[15].text, mixed[15].text);
}

TEST(Synth, ClassesShareLittleSentenceText) {
  sd::SynthConfig cfg;
  const auto corpus = sd::GenerateSynthCorpus(cfg, 2, 50, 10);
  EXPECT_LT(sd::ConsistentSentenceProportion(corpus.human, corpus.machine),
            0.01);
}

TEST(Synth, Validation) {
  sd::SynthConfig cfg;
  cfg.min_words = 10;
  cfg.max_words = 5;
  EXPECT_THROW(cfg.Validate(), sd::InvalidConfig);
  cfg = {};
  cfg.colloquial_rate = 1.5;
  EXPECT_THROW(cfg.Validate(), sd::InvalidConfig);
  cfg = {};
  cfg.sentences = 0;
  EXPECT_THROW(sd::SynthWorld{cfg}, sd::InvalidConfig);
}
