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

#ifndef TREETOK_METRICS_H_
#define TREETOK_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "treetok/parse_tree.h"
#include "treetok/treeio.h"
#include "treetok/vocabulary.h"

namespace treetok {

// Token -> probability, normalised from positive counts.
class TokenDistribution {
 public:
  TokenDistribution() = default;
  static TokenDistribution FromCounts(const StringMap<std::uint64_t>& counts);

  const StringMap<double>& probabilities() const { return probs_; }
  std::size_t support() const { return probs_.size(); }

 private:
  StringMap<double> probs_;
};

// Fraction of words whose predicted token list equals the gold morphs.
double SegmentationAccuracy(std::span<const std::vector<std::string>> preds,
                            std::span<const GoldSegmentation> golds);

// Share of eligible gold morphs (longer than one character and shorter than
// the word) that appear as a non-trivial span of the tree. Trivial spans are
// single characters and the whole word. nullopt when no morph is eligible.
std::optional<double> MorphemeRecall(const ParseNode& tree, const GoldSegmentation& gold);

struct RecallSummary {
  double mean = 0.0;          // over applicable words
  std::size_t applicable = 0;
  std::size_t skipped = 0;
};

// Per-word (macro) average; not-applicable words are skipped.
RecallSummary MacroMorphemeRecall(std::span<const ParseNode* const> trees,
                                  std::span<const GoldSegmentation> golds);

// H_alpha(p) / ln|support| with H_alpha = ln(sum p^alpha) / (1 - alpha).
// A single-token support yields 0. Throws kInvalidAlpha unless alpha > 0
// and alpha != 1.
double RenyiEfficiency(const TokenDistribution& dist, double alpha);

// Shannon entropy (nats) of the vocabulary's count distribution.
double CorpusEntropy(const Vocabulary& vocab);

struct TokenStreamSummary {
  double avg_tokens_per_sentence = 0.0;
  std::uint64_t total_tokens = 0;
  double unk_rate = 0.0;
};

TokenStreamSummary SummarizeTokenStream(std::span<const std::size_t> tokens_per_sentence,
                                        std::uint64_t unk_tokens);

}  // namespace treetok

#endif  // TREETOK_METRICS_H_
