// Copyright 2026 The treetok Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>
#include <sstream>
#include <thread>

#include "support/oracles.h"
#include "treetok/treetok.h"

namespace treetok {
namespace {

using testing::BruteForcePostMerge;
using testing::DyadicEntropy;
using testing::RandomTreeRecord;
using testing::SegmentationCost;
using Tokens = std::vector<std::string>;

Vocabulary Vocab(std::initializer_list<std::pair<const char*, std::uint64_t>> items) {
  Vocabulary v;
  for (const auto& [tok, c] : items) v.Set(tok, c);
  return v;
}

SegmentationResult Segment(const Vocabulary& v, std::string_view word, std::string_view bracket) {
  TokenizerModel model(v, ToolConfig{});
  return TokenizeWord(model, word, ParseTreeText(bracket));
}

// ---- top-down -----------------------------------------------------------------

TEST(TopDownTest, BookED) {
  const ParseNode tree = ParseTreeText("(((b (o (o k))) e) d)");
  const Vocabulary v = Vocab({{"book", 5}, {"e", 2}, {"d", 2}, {"ed", 4}});
  EXPECT_EQ(TopDownTokenize("booked", tree, v), (Tokens{"book", "e", "d"}));
}

TEST(TopDownTest, MissingLeafEmittedAsIs) {
  const ParseNode tree = ParseTreeText("(a ∂)");
  const Vocabulary v = Vocab({{"a", 1}});
  EXPECT_EQ(TopDownTokenize("a∂", tree, v), (Tokens{"a", "∂"}));
}

// ---- post-merge ---------------------------------------------------------------

EntropyTable Table(std::initializer_list<std::pair<const char*, double>> items) {
  EntropyTable t;
  for (const auto& [tok, e] : items) t.Set(tok, e);
  return t;
}

TEST(PostMergeTest, BookED) {
  const EntropyTable t = Table({{"book", 1.25}, {"e", 1.72}, {"d", 1.72}, {"ed", 1.25}});
  EXPECT_EQ(PostMerge({"book", "e", "d"}, t), (Tokens{"book", "ed"}));
}

TEST(PostMergeTest, SingleTokenUnchanged) {
  EXPECT_EQ(PostMerge({"only"}, Table({})), (Tokens{"only"}));
  EXPECT_TRUE(PostMerge({}, Table({})).empty());
}

TEST(PostMergeTest, AbsentMergeNotTaken) {
  const EntropyTable t = Table({{"a", 3.0}, {"b", 3.0}});
  EXPECT_EQ(PostMerge({"a", "b"}, t), (Tokens{"a", "b"}));
}

TEST(PostMergeTest, TieKeepsSplit) {
  const EntropyTable t = Table({{"a", 1.0}, {"b", 1.0}, {"ab", 2.0}});
  EXPECT_EQ(PostMerge({"a", "b"}, t), (Tokens{"a", "b"}));
}

TEST(PostMergeTest, MatchesBruteForce) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    Tokens toks;
    for (std::size_t k = 0; k < n; ++k) toks.push_back(testing::RandomWord(rng, 1, 2, "ab"));
    EntropyTable t;
    for (std::size_t i = 0; i < n; ++i) {
      std::string run;
      for (std::size_t j = i; j < n; ++j) {
        run += toks[j];
        if (rng() % 2) t.Set(run, DyadicEntropy(rng));
      }
    }
    t.set_unknown_cost(7.0);
    const Tokens out = PostMerge(toks, t);
    const double dp = SegmentationCost(out, t, toks);
    ASSERT_EQ(dp, BruteForcePostMerge(toks, t));

    std::string a, b;
    for (const auto& s : toks) a += s;
    for (const auto& s : out) b += s;
    ASSERT_EQ(a, b);
    ASSERT_LE(out.size(), toks.size());
    ASSERT_LE(dp, SegmentationCost(toks, t, toks));
    ASSERT_EQ(PostMerge(out, t), out);
  }
}

// ---- tokenize_word --------------------------------------------------------------

TEST(TokenizeWordTest, BookEDEndToEnd) {
  const Vocabulary v = Vocab({{"book", 10}, {"e", 2}, {"d", 2}, {"ed", 10}});
  const auto r = Segment(v, "booked", "(((b (o (o k))) e) d)");
  EXPECT_EQ(r.pre_merge_tokens, (Tokens{"book", "e", "d"}));
  EXPECT_EQ(r.tokens, (Tokens{"book", "ed"}));
  EXPECT_EQ(r.unk_count, 0u);
}

class TableFixtureTest : public ::testing::Test {
 protected:
  Vocabulary vocab_ = Vocab({{"wind", 40}, {"surf", 30}, {"ing", 90}, {"tri", 20},
                             {"cycles", 15}, {"unique", 25}, {"ness", 35}, {"es", 60},
                             {"bed", 30}, {"commonly", 12}, {"s", 80}, {"e", 90},
                             {"n", 70}, {"d", 50}, {"c", 40}});
};

TEST_F(TableFixtureTest, Rows) {
  EXPECT_EQ(Segment(vocab_, "windsurfing",
                "(((w (i (n d))) (s (u (r f)))) (i (n g)))").tokens,
            (Tokens{"wind", "surf", "ing"}));
  EXPECT_EQ(Segment(vocab_, "tricycles", "((t (r i)) (c (y (c (l (e s))))))").tokens,
            (Tokens{"tri", "cycles"}));
  EXPECT_EQ(Segment(vocab_, "uniquenesses",
                "(((u (n (i (q (u e))))) (n (e (s s)))) (e s))").tokens,
            (Tokens{"unique", "ness", "es"}));
  EXPECT_EQ(Segment(vocab_, "bed", "((b e) d)").tokens, (Tokens{"bed"}));
  EXPECT_EQ(Segment(vocab_, "commonly", "((c (o (m (m (o n))))) (l y))").tokens,
            (Tokens{"commonly"}));
}

TEST(TokenizeWordTest, UnknownLeaf) {
  const auto r = Segment(Vocab({{"a", 3}}), "a∂", "(a ∂)");
  EXPECT_EQ(r.tokens, (Tokens{"a", "∂"}));
  EXPECT_EQ(r.unk_count, 1u);
}

TEST(TokenizeWordTest, InvalidTreeRejected) {
  TokenizerModel model(Vocab({{"a", 1}}), ToolConfig{});
  try {
    TokenizeWord(model, "abc", ParseTreeText("(a b)"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSpanMismatch);
  }
}

Vocabulary RandomVocab(std::mt19937_64& rng, std::string_view alphabet) {
  Vocabulary v;
  for (std::string_view ch : utf8::SplitChars(alphabet)) {
    if (rng() % 4) v.Set(ch, 1 + rng() % 50);
  }
  for (int n = 0; n < 30; ++n) v.Set(testing::RandomWord(rng, 2, 5, alphabet), rng() % 50);
  return v;
}

TEST(TokenizeWordTest, RoundTripAndMonotonicityFuzz) {
  std::mt19937_64 rng(8080);
  for (int trial = 0; trial < 200; ++trial) {
    const Vocabulary v = RandomVocab(rng, "abcé");
    ToolConfig cfg;
    cfg.cache_capacity = trial % 2 ? 0 : 1000;
    TokenizerModel model(v, cfg);
    for (int w = 0; w < 50; ++w) {
      const TreeRecord rec = RandomTreeRecord(rng, 1, 14, "abcé");
      const SegmentationResult r = TokenizeWord(model, rec.word, rec.tree);
      std::string joined;
      for (const auto& t : r.tokens) joined += t;
      ASSERT_EQ(joined, rec.word);
      ASSERT_LE(r.tokens.size(), r.pre_merge_tokens.size());
      ASSERT_LE(SegmentationCost(r.tokens, model.entropies(), r.pre_merge_tokens),
                SegmentationCost(r.pre_merge_tokens, model.entropies(), r.pre_merge_tokens) +
                    1e-9);
      for (const auto& t : r.tokens) ASSERT_FALSE(t.empty());
    }
  }
}

TEST(TokenizeWordTest, CacheIsTransparent) {
  std::mt19937_64 rng(2024);
  const Vocabulary v = RandomVocab(rng, "abcd");
  ToolConfig off;
  off.cache_capacity = 0;
  ToolConfig small;
  small.cache_capacity = 16;
  TokenizerModel uncached(v, off), cached(v, small);
  for (int n = 0; n < 2000; ++n) {
    const TreeRecord rec = RandomTreeRecord(rng, 1, 6, "abcd");
    ASSERT_EQ(TokenizeWord(cached, rec.word, rec.tree),
              TokenizeWord(uncached, rec.word, rec.tree));
  }
  EXPECT_LE(cached.cache().size(), 16u);
  EXPECT_EQ(uncached.cache().size(), 0u);
}

TEST(TokenizeWordTest, SameWordDifferentTreesDoNotCollide) {
  TokenizerModel model(Vocab({{"ab", 5}, {"bc", 5}, {"a", 1}, {"b", 1}, {"c", 1}}),
                       ToolConfig{});
  EXPECT_EQ(TokenizeWord(model, "abc", ParseTreeText("((a b) c)")).tokens,
            (Tokens{"ab", "c"}));
  EXPECT_EQ(TokenizeWord(model, "abc", ParseTreeText("(a (b c))")).tokens,
            (Tokens{"a", "bc"}));
}

TEST(TokenizeWordTest, ConcurrentCallers) {
  std::mt19937_64 rng(99);
  const Vocabulary v = RandomVocab(rng, "abc");
  std::vector<TreeRecord> words;
  for (int n = 0; n < 300; ++n) words.push_back(RandomTreeRecord(rng, 1, 8, "abc"));
  ToolConfig off;
  off.cache_capacity = 0;
  TokenizerModel reference(v, off);
  std::vector<SegmentationResult> expected;
  for (const auto& w : words) expected.push_back(TokenizeWord(reference, w.word, w.tree));

  TokenizerModel shared(v, ToolConfig{});
  std::vector<std::thread> pool;
  std::vector<int> failures(4, 0);
  for (int t = 0; t < 4; ++t) {
    pool.emplace_back([&, t] {
      for (int rep = 0; rep < 5; ++rep) {
        for (std::size_t n = 0; n < words.size(); ++n) {
          if (!(TokenizeWord(shared, words[n].word, words[n].tree) == expected[n])) {
            ++failures[t];
          }
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (int f : failures) EXPECT_EQ(f, 0);
}

// ---- corpus ---------------------------------------------------------------------

TEST(TokenizeCorpusTest, AverageTokensPerSentence) {
  const Vocabulary v = Vocab({{"ab", 5}, {"a", 1}, {"b", 1}, {"c", 1}});
  TokenizerModel model(v, ToolConfig{});
  StringMap<ParseNode> trees;
  trees.emplace("ab", ParseTreeText("(a b)"));
  trees.emplace("abc", ParseTreeText("((a b) c)"));
  trees.emplace("c", ParseTreeText("c"));
  // 3 tokens, then 5 tokens.
  std::istringstream in("ab abc\nabc abc c\n\n");
  std::ostringstream out;
  const CorpusTokenStats s = TokenizeCorpus(model, trees, in, &out);
  EXPECT_EQ(s.tokens_per_sentence, (std::vector<std::size_t>{3, 5}));
  EXPECT_EQ(SummarizeTokenStream(s.tokens_per_sentence, s.unk_tokens).avg_tokens_per_sentence,
            4.0);
  EXPECT_EQ(out.str(), "ab ab c\nab c ab c c\n\n");
}

TEST(TokenizeCorpusTest, EmptyCorpus) {
  TokenizerModel model(Vocab({{"a", 1}}), ToolConfig{});
  std::istringstream in("");
  const CorpusTokenStats s = TokenizeCorpus(model, {}, in, nullptr);
  EXPECT_EQ(s.sentences(), 0u);
  EXPECT_EQ(SummarizeTokenStream(s.tokens_per_sentence, 0).avg_tokens_per_sentence, 0.0);
}

TEST(TokenizeCorpusTest, MissingTree) {
  TokenizerModel model(Vocab({{"a", 1}}), ToolConfig{});
  std::istringstream in("a");
  try {
    TokenizeCorpus(model, {}, in, nullptr);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingTree);
  }
}

TEST(TokenizeCorpusTest, FallbackMatchesExplicitTree) {
  const Vocabulary v = Vocab({{"bc", 5}, {"a", 1}, {"b", 1}, {"c", 1}});
  TokenizerModel model(v, ToolConfig{});
  std::istringstream in("abc");
  std::ostringstream out;
  TokenizeCorpus(model, {}, in, &out, FallbackSpec{TreeStrategy::kRight, 0});
  const auto r = TokenizeWord(model, "abc", ParseTreeText("(a (b c))"));
  EXPECT_EQ(out.str(), "a bc\n");
  EXPECT_EQ(r.tokens, (Tokens{"a", "bc"}));
}

TEST(TokenizeCorpusTest, Lowercase) {
  ToolConfig cfg;
  cfg.lowercase = true;
  TokenizerModel model(Vocab({{"ab", 1}}), cfg);
  StringMap<ParseNode> trees;
  trees.emplace("ab", ParseTreeText("(a b)"));
  std::istringstream in("AB Ab");
  std::ostringstream out;
  TokenizeCorpus(model, trees, in, &out);
  EXPECT_EQ(out.str(), "ab ab\n");
}

}  // namespace
}  // namespace treetok
