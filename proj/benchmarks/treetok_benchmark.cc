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

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "treetok/treetok.h"

namespace treetok {
namespace {

constexpr std::string_view kAlphabet = "abcdefghijklmnop";

std::string RandomWord(std::mt19937_64& rng, std::size_t min_len, std::size_t max_len) {
  const std::size_t len = min_len + rng() % (max_len - min_len + 1);
  std::string w;
  for (std::size_t k = 0; k < len; ++k) w.push_back(kAlphabet[rng() % kAlphabet.size()]);
  return w;
}

struct Workload {
  std::vector<TreeRecord> words;
  Vocabulary vocab;
};

Workload MakeWorkload(std::size_t words, std::size_t max_len) {
  std::mt19937_64 rng(7);
  Workload w;
  for (std::size_t n = 0; n < words; ++n) {
    std::string word = RandomWord(rng, 3, max_len);
    ParseNode tree = FallbackTree(word, TreeStrategy::kRandom, n);
    w.words.push_back({std::move(word), std::move(tree)});
  }
  for (char c : kAlphabet) w.vocab.Set(std::string(1, c), 100 + rng() % 1000);
  for (int k = 0; k < 3000; ++k) w.vocab.Set(RandomWord(rng, 2, 5), 1 + rng() % 500);
  return w;
}

void BM_TokenizeWord(benchmark::State& state) {
  static const Workload w = MakeWorkload(10000, 12);
  ToolConfig cfg;
  cfg.cache_capacity = static_cast<std::size_t>(state.range(0));
  const TokenizerModel model(w.vocab, cfg);
  std::size_t n = 0;
  for (auto _ : state) {
    const auto& rec = w.words[n++ % w.words.size()];
    benchmark::DoNotOptimize(TokenizeWord(model, rec.word, rec.tree));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_TokenizeWord)->Arg(0)->Arg(100000);

void BM_PostMerge(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto len = static_cast<std::size_t>(state.range(0));
  std::vector<std::string> tokens;
  EntropyTable table;
  for (std::size_t k = 0; k < len; ++k) tokens.push_back(RandomWord(rng, 1, 3));
  for (std::size_t i = 0; i < len; ++i) {
    std::string run;
    for (std::size_t j = i; j < len; ++j) {
      run += tokens[j];
      if (rng() % 2) table.Set(run, static_cast<double>(rng() % 64) / 8.0);
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(PostMerge(tokens, table));
}
BENCHMARK(BM_PostMerge)->Arg(4)->Arg(8)->Arg(16);

void BM_TreeViterbi(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const auto len = static_cast<std::size_t>(state.range(0));
  const std::string word = RandomWord(rng, len, len);
  const ParseNode tree = FallbackTree(word, TreeStrategy::kRandom, 1);
  EntropyTable table;
  for (const auto& [i, j] : TreeSpans(tree)) {
    if (rng() % 2) table.Set(word.substr(i, j - i + 1), static_cast<double>(rng() % 64) / 8.0);
  }
  for (auto _ : state) benchmark::DoNotOptimize(TreeViterbi(tree, table));
}
BENCHMARK(BM_TreeViterbi)->Arg(6)->Arg(12)->Arg(24);

void BM_BuildVocabulary(benchmark::State& state) {
  const Workload w = MakeWorkload(static_cast<std::size_t>(state.range(0)), 10);
  std::vector<WeightedTree> trees;
  std::mt19937_64 rng(11);
  for (const auto& rec : w.words) trees.push_back({rec.tree, 1 + rng() % 20});
  ToolConfig cfg;
  cfg.pair_threshold = 2;
  const Vocabulary init = InitVocab(trees, cfg.pair_threshold);
  cfg.target_vocab_size = init.CharacterCount() + (init.size() - init.CharacterCount()) / 2;
  for (auto _ : state) benchmark::DoNotOptimize(BuildVocabulary(trees, cfg));
}
BENCHMARK(BM_BuildVocabulary)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace treetok

BENCHMARK_MAIN();
