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

#ifndef TREETOK_VOCAB_BUILDER_H_
#define TREETOK_VOCAB_BUILDER_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "treetok/config.h"
#include "treetok/parse_tree.h"
#include "treetok/vocabulary.h"

namespace treetok {

// A word's parse tree together with the word's corpus frequency.
struct WeightedTree {
  ParseNode tree;
  std::uint64_t freq = 1;
};

// Concatenated sibling pair -> accumulated frequency.
using PairCandidates = StringMap<std::uint64_t>;

// Token -> accumulated entropy increase (nats) if the token were removed.
using DeltaLossTable = StringMap<double>;

struct ViterbiResult {
  double entropy = 0.0;
  std::vector<std::string> tokens;
};

// Counts sibling pairs whose subtrees are both fully covered by `vocab` but
// whose concatenation is not yet in it. Once a node misses, none of its
// ancestors is counted for that tree.
PairCandidates CountTreePairs(std::span<const WeightedTree> trees,
                              const Vocabulary& vocab);

// Character frequencies, then repeated admission of pair candidates whose
// frequency is strictly greater than `pair_threshold`, until a pass adds
// nothing.
Vocabulary InitVocab(std::span<const WeightedTree> trees,
                     std::uint64_t pair_threshold);

// Minimum-entropy segmentation restricted to subtree tokens. A node is kept
// whole only when its entropy is strictly below the best split. With
// `delta`, every internal node adds max(split - whole, 0) under its token.
ViterbiResult TreeViterbi(const ParseNode& root, const EntropyTable& entropies,
                          DeltaLossTable* delta = nullptr);

// Re-counts tokens from the Viterbi segmentations weighted by frequency.
// Zero-count tokens are dropped, except single characters which stay at 0.
// Entropies come from `vocab`; a zero-count character costs
// EntropyTable::unknown_cost() instead of infinity.
Vocabulary EStep(std::span<const WeightedTree> trees, const Vocabulary& vocab,
                 std::size_t threads = 1);

// Accumulates per-word delta losses of the tokens chosen in each word's
// segmentation, scaled by word frequency.
DeltaLossTable MStep(std::span<const WeightedTree> trees, const Vocabulary& vocab,
                     std::size_t threads = 1);
DeltaLossTable MStep(std::span<const WeightedTree> trees, const EntropyTable& entropies,
                     std::size_t threads = 1);

struct PruneTrace {
  // Vocabulary size at the start of each round, followed by the final size.
  std::vector<std::size_t> sizes;
};

// Alternates E and M steps, removing the lowest-delta non-character tokens
// each round until exactly `target_size` entries remain.
Vocabulary PruneVocab(std::span<const WeightedTree> trees, Vocabulary vocab,
                      std::size_t target_size, double prune_rate,
                      std::size_t threads = 1, PruneTrace* trace = nullptr);

// InitVocab followed by PruneVocab; the result is independent of the order
// of `trees`.
Vocabulary BuildVocabulary(std::span<const WeightedTree> trees,
                           const ToolConfig& config, PruneTrace* trace = nullptr);

}  // namespace treetok

#endif  // TREETOK_VOCAB_BUILDER_H_
