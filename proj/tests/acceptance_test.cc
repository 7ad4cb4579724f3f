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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/oracles.h"
#include "treetok/treetok.h"

namespace treetok {
namespace {

using Clock = std::chrono::steady_clock;
using Tokens = std::vector<std::string>;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Fmt(const char* format, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), format, a, b);
  return buf;
}

Vocabulary Vocab(std::initializer_list<std::pair<const char*, std::uint64_t>> items) {
  Vocabulary v;
  for (const auto& [tok, c] : items) v.Set(tok, c);
  return v;
}

void AssignRandomEntropies(const ParseNode& n, std::mt19937_64& rng, EntropyTable& t) {
  if (n.is_leaf() || rng() % 3 != 0) t.Set(n.token, testing::DyadicEntropy(rng));
  if (n.left) AssignRandomEntropies(*n.left, rng, t);
  if (n.right) AssignRandomEntropies(*n.right, rng, t);
}

// ---- criteria -----------------------------------------------------------------

Outcome RoundTrip() {
  std::mt19937_64 rng(101);
  const std::string alphabet = "abcdeé語";
  const auto start = Clock::now();
  std::size_t failures = 0;
  ToolConfig cfg;
  cfg.cache_capacity = 0;
  for (int n = 0; n < 10000; ++n) {
    const TreeRecord rec = testing::RandomTreeRecord(rng, 1, 16, alphabet);
    Vocabulary v;
    const auto chars = utf8::SplitChars(rec.word);
    for (std::string_view ch : utf8::SplitChars(alphabet)) {
      if (rng() % 5) v.Set(ch, 1 + rng() % 100);
    }
    for (int k = 0; k < 12; ++k) {
      const std::size_t i = rng() % chars.size();
      const std::size_t len = 1 + rng() % std::min<std::size_t>(6, chars.size() - i);
      std::string sub;
      for (std::size_t c = i; c < i + len; ++c) sub += chars[c];
      v.Set(sub, rng() % 100);
    }
    const TokenizerModel model(std::move(v), cfg);
    const SegmentationResult r = TokenizeWord(model, rec.word, rec.tree);
    std::string joined;
    for (const auto& t : r.tokens) joined += t;
    if (joined != rec.word) ++failures;
  }
  const double secs = Seconds(start);
  return {failures == 0 && secs < 10.0,
          Fmt("failures=%.0f time=%.2fs (limit 10s)", static_cast<double>(failures), secs)};
}

Outcome PostMergeOptimality() {
  std::mt19937_64 rng(202);
  const auto start = Clock::now();
  std::size_t mismatches = 0;
  for (int n = 0; n < 1000; ++n) {
    const std::size_t len = 1 + rng() % 8;
    Tokens toks;
    for (std::size_t k = 0; k < len; ++k) toks.push_back(testing::RandomWord(rng, 1, 2, "abc"));
    EntropyTable t;
    for (std::size_t i = 0; i < len; ++i) {
      std::string run;
      for (std::size_t j = i; j < len; ++j) {
        run += toks[j];
        if (rng() % 2) t.Set(run, testing::DyadicEntropy(rng));
      }
    }
    t.set_unknown_cost(8.0);
    const Tokens out = PostMerge(toks, t);
    if (testing::SegmentationCost(out, t, toks) != testing::BruteForcePostMerge(toks, t)) {
      ++mismatches;
    }
  }
  const double secs = Seconds(start);
  return {mismatches == 0 && secs < 5.0,
          Fmt("mismatches=%.0f time=%.2fs (limit 5s)", static_cast<double>(mismatches), secs)};
}

Outcome ViterbiOptimality() {
  std::mt19937_64 rng(303);
  const auto start = Clock::now();
  std::size_t mismatches = 0;
  for (int n = 0; n < 500; ++n) {
    const TreeRecord rec = testing::RandomTreeRecord(rng, 1, 12, "abcd");
    EntropyTable t;
    AssignRandomEntropies(rec.tree, rng, t);
    if (TreeViterbi(rec.tree, t).entropy != testing::BruteForceTreeSegmentation(rec, t).entropy) {
      ++mismatches;
    }
  }
  const double secs = Seconds(start);
  return {mismatches == 0 && secs < 5.0,
          Fmt("mismatches=%.0f time=%.2fs (limit 5s)", static_cast<double>(mismatches), secs)};
}

Outcome TableFixture() {
  const Vocabulary v = Vocab({{"wind", 40}, {"surf", 30}, {"ing", 90}, {"tri", 20},
                              {"cycles", 15}, {"unique", 25}, {"ness", 35}, {"es", 60},
                              {"bed", 30}, {"commonly", 12}});
  const TokenizerModel model(v, ToolConfig{});
  struct Row {
    const char* word;
    const char* tree;
    Tokens expected;
  };
  const std::vector<Row> rows = {
      {"windsurfing", "(((w (i (n d))) (s (u (r f)))) (i (n g)))", {"wind", "surf", "ing"}},
      {"tricycles", "((t (r i)) (c (y (c (l (e s))))))", {"tri", "cycles"}},
      {"uniquenesses", "(((u (n (i (q (u e))))) (n (e (s s)))) (e s))",
       {"unique", "ness", "es"}},
      {"bed", "((b e) d)", {"bed"}},
      {"commonly", "((c (o (m (m (o n))))) (l y))", {"commonly"}},
  };
  Outcome o;
  for (const auto& row : rows) {
    const Tokens got = TokenizeWord(model, row.word, ParseTreeText(row.tree)).tokens;
    std::string joined;
    for (const auto& t : got) joined += (joined.empty() ? "" : "/") + t;
    o.detail += (o.detail.empty() ? "" : " ") + joined;
    if (got != row.expected) o.pass = false;
  }
  return o;
}

Outcome BookedFixture() {
  const Vocabulary v = Vocab({{"book", 10}, {"e", 2}, {"d", 2}, {"ed", 10}});
  const TokenizerModel model(v, ToolConfig{});
  const auto r = TokenizeWord(model, "booked", ParseTreeText("(((b (o (o k))) e) d)"));
  const bool ok = r.pre_merge_tokens == Tokens{"book", "e", "d"} &&
                  r.tokens == Tokens{"book", "ed"};
  return {ok, "pre=" + std::to_string(r.pre_merge_tokens.size()) +
                  " tokens, post=" + std::to_string(r.tokens.size()) + " tokens"};
}

Outcome PairCounting() {
  const std::vector<WeightedTree> trees = {{ParseTreeText("((b (o o)) k)"), 1}};
  Vocabulary chars = Vocab({{"b", 1}, {"o", 2}, {"k", 1}});
  const PairCandidates c = CountTreePairs(trees, chars);
  const bool ok = c.size() == 1 && c.contains("oo");
  return {ok, "candidates=" + std::to_string(c.size())};
}

std::string SyntheticCorpus(std::mt19937_64& rng, std::size_t sentences) {
  const std::vector<std::string> stems = {"walk", "talk", "play", "jump", "kind", "lock",
                                          "book", "cook", "help", "work", "read", "sing",
                                          "wind", "surf", "form", "port", "mark", "turn"};
  const std::vector<std::string> prefixes = {"", "", "", "un", "re", "pre"};
  const std::vector<std::string> suffixes = {"", "", "s", "ed", "ing", "er", "ness", "able"};
  std::ostringstream text;
  std::geometric_distribution<std::size_t> zipfish(0.25);
  for (std::size_t s = 0; s < sentences; ++s) {
    const std::size_t words = 4 + rng() % 9;
    for (std::size_t w = 0; w < words; ++w) {
      const std::string word = prefixes[std::min(zipfish(rng), prefixes.size() - 1)] +
                               stems[std::min(zipfish(rng), stems.size() - 1)] +
                               suffixes[rng() % suffixes.size()];
      text << (w ? " " : "") << word;
    }
    text << '\n';
  }
  return text.str();
}

Outcome VocabularyConstruction() {
  std::mt19937_64 rng(404);
  std::istringstream in(SyntheticCorpus(rng, 1000));
  const CorpusStats corpus = ReadCorpus(in, false);
  std::vector<WeightedTree> trees;
  for (const auto& [word, freq] : corpus.word_freq) {
    trees.push_back({FallbackTree(word, TreeStrategy::kBalanced), freq});
  }
  ToolConfig cfg;
  cfg.pair_threshold = 2;
  const Vocabulary init = InitVocab(trees, cfg.pair_threshold);
  cfg.target_vocab_size = init.CharacterCount() + (init.size() - init.CharacterCount()) / 3;

  const auto start = Clock::now();
  PruneTrace trace;
  const Vocabulary first = BuildVocabulary(trees, cfg, &trace);
  std::shuffle(trees.begin(), trees.end(), rng);
  const Vocabulary second = BuildVocabulary(trees, cfg);
  const double secs = Seconds(start);

  std::ostringstream a, b;
  WriteVocabulary(a, first);
  WriteVocabulary(b, second);
  bool shrinking = trace.sizes.size() >= 2;
  for (std::size_t r = 1; r < trace.sizes.size(); ++r) {
    shrinking = shrinking && trace.sizes[r] < trace.sizes[r - 1];
  }
  bool chars_kept = true;
  for (const auto& [tok, c] : init.counts()) {
    if (IsSingleCharacter(tok) && !first.Contains(tok)) chars_kept = false;
  }
  const bool exact = first.size() == cfg.target_vocab_size;
  const bool identical = a.str() == b.str();
  Outcome o;
  o.pass = exact && chars_kept && shrinking && identical && secs < 60.0;
  o.detail = "init=" + std::to_string(init.size()) +
             " target=" + std::to_string(cfg.target_vocab_size) +
             " final=" + std::to_string(first.size()) +
             " rounds=" + std::to_string(trace.sizes.size() - 1) +
             (chars_kept ? " chars-kept" : " chars-LOST") +
             (shrinking ? " strictly-shrinking" : " NOT-shrinking") +
             (identical ? " byte-identical" : " DIFFERENT") + Fmt(" time=%.2fs (limit 60s)", secs);
  return o;
}

Outcome Renyi() {
  const auto dist = [](std::initializer_list<std::uint64_t> counts) {
    StringMap<std::uint64_t> m;
    int k = 0;
    for (auto c : counts) m[std::to_string(k++)] = c;
    return TokenDistribution::FromCounts(m);
  };
  const double uniform = RenyiEfficiency(dist({3, 3, 3, 3}), 2.5);
  const double degenerate = RenyiEfficiency(dist({9}), 2.5);
  const double balanced = RenyiEfficiency(dist({5, 5}), 2.5);
  const double skewed = RenyiEfficiency(dist({9, 1}), 2.5);
  const bool ok = std::abs(uniform - 1.0) <= 1e-9 && degenerate == 0.0 && balanced > skewed;
  return {ok, Fmt("uniform=%.12f degenerate=%.1f", uniform, degenerate) +
                  Fmt(" {.5,.5}=%.4f {.9,.1}=%.4f", balanced, skewed)};
}

Outcome RecallOracle() {
  std::mt19937_64 rng(505);
  std::size_t mismatches = 0;
  for (int n = 0; n < 200; ++n) {
    const TreeRecord rec = testing::RandomTreeRecord(rng, 1, 12, "abcé");
    const auto chars = utf8::SplitChars(rec.word);
    GoldSegmentation g{rec.word, {}};
    for (std::size_t k = 0; k < chars.size();) {
      const std::size_t len = 1 + rng() % std::min<std::size_t>(5, chars.size() - k);
      std::string m;
      for (std::size_t c = k; c < k + len; ++c) m += chars[c];
      g.morphs.push_back(std::move(m));
      k += len;
    }
    if (MorphemeRecall(rec.tree, g) != testing::BruteForceRecall(rec, g)) ++mismatches;
  }
  return {mismatches == 0, "mismatches=" + std::to_string(mismatches)};
}

Outcome Throughput() {
  std::mt19937_64 rng(606);
  std::vector<TreeRecord> words;
  StringMap<bool> seen;
  while (words.size() < 10000) {
    TreeRecord rec = testing::RandomTreeRecord(rng, 3, 12, "abcdefghijklmnop");
    if (seen.emplace(rec.word, true).second) words.push_back(std::move(rec));
  }
  Vocabulary v;
  for (char c = 'a'; c <= 'p'; ++c) v.Set(std::string(1, c), 100 + rng() % 1000);
  for (int k = 0; k < 3000; ++k) v.Set(testing::RandomWord(rng, 2, 5, "abcdefghijklmnop"), 1 + rng() % 500);
  ToolConfig cfg;
  cfg.cache_capacity = 20000;
  const TokenizerModel model(std::move(v), cfg);
  for (const auto& w : words) TokenizeWord(model, w.word, w.tree);

  const std::size_t calls = 1000000;
  std::size_t sink = 0;
  const auto start = Clock::now();
  for (std::size_t n = 0; n < calls; ++n) {
    const auto& w = words[n % words.size()];
    sink += TokenizeWord(model, w.word, w.tree).tokens.size();
  }
  const double secs = Seconds(start);
  const double rate = static_cast<double>(calls) / secs;
  return {rate >= 100000.0 && sink > 0, Fmt("%.0f calls/s (target 100000)", rate)};
}

}  // namespace
}  // namespace treetok

int main() {
  using treetok::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"round-trip", treetok::RoundTrip},
      {"post-merge-optimality", treetok::PostMergeOptimality},
      {"tree-viterbi-optimality", treetok::ViterbiOptimality},
      {"fixture-segmentation-rows", treetok::TableFixture},
      {"fixture-booked-post-merge", treetok::BookedFixture},
      {"pair-counting-oo", treetok::PairCounting},
      {"vocabulary-construction", treetok::VocabularyConstruction},
      {"renyi-efficiency", treetok::Renyi},
      {"morpheme-recall-oracle", treetok::RecallOracle},
      {"throughput-cached", treetok::Throughput},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    if (!o.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
