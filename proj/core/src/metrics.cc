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

#include "treetok/metrics.h"

#include <cmath>
#include <set>
#include <utility>

#include "treetok/error.h"
#include "treetok/utf8.h"

namespace treetok {

TokenDistribution TokenDistribution::FromCounts(const StringMap<std::uint64_t>& counts) {
  std::uint64_t total = 0;
  for (const auto& [tok, c] : counts) total += c;
  TokenDistribution dist;
  if (total == 0) return dist;
  for (const auto& [tok, c] : counts) {
    if (c == 0) continue;
    dist.probs_.emplace(tok, static_cast<double>(c) / static_cast<double>(total));
  }
  return dist;
}

double SegmentationAccuracy(std::span<const std::vector<std::string>> preds,
                            std::span<const GoldSegmentation> golds) {
  if (preds.size() != golds.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(preds.size()) + " predictions for " +
                    std::to_string(golds.size()) + " gold words");
  }
  if (golds.empty()) return 0.0;
  std::size_t correct = 0;
  for (std::size_t n = 0; n < golds.size(); ++n) {
    if (preds[n] == golds[n].morphs) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(golds.size());
}

std::optional<double> MorphemeRecall(const ParseNode& tree, const GoldSegmentation& gold) {
  if (tree.token != gold.word) {
    throw Error(ErrorCode::kCoverageMismatch,
                "tree covers '" + tree.token + "' but gold word is '" + gold.word + "'");
  }
  const std::size_t n = utf8::CharCount(gold.word);

  std::set<std::pair<std::size_t, std::size_t>> spans;
  for (const auto& [i, j] : TreeSpans(tree)) {
    if (i == j || (i == 0 && j + 1 == n)) continue;
    spans.emplace(i, j);
  }

  std::size_t eligible = 0;
  std::size_t found = 0;
  std::size_t offset = 0;
  for (const auto& morph : gold.morphs) {
    const std::size_t len = utf8::CharCount(morph);
    const std::size_t i = offset;
    offset += len;
    if (len <= 1 || len == n) continue;
    ++eligible;
    if (spans.count({i, i + len - 1})) ++found;
  }
  if (eligible == 0) return std::nullopt;
  return static_cast<double>(found) / static_cast<double>(eligible);
}

RecallSummary MacroMorphemeRecall(std::span<const ParseNode* const> trees,
                                  std::span<const GoldSegmentation> golds) {
  if (trees.size() != golds.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(trees.size()) + " trees for " +
                    std::to_string(golds.size()) + " gold words");
  }
  RecallSummary summary;
  double sum = 0.0;
  for (std::size_t n = 0; n < golds.size(); ++n) {
    if (auto r = MorphemeRecall(*trees[n], golds[n])) {
      sum += *r;
      ++summary.applicable;
    } else {
      ++summary.skipped;
    }
  }
  if (summary.applicable > 0) summary.mean = sum / static_cast<double>(summary.applicable);
  return summary;
}

double RenyiEfficiency(const TokenDistribution& dist, double alpha) {
  if (!(alpha > 0.0) || alpha == 1.0 || !std::isfinite(alpha)) {
    throw Error(ErrorCode::kInvalidAlpha,
                "alpha must be finite, > 0 and != 1, got " + std::to_string(alpha));
  }
  if (dist.support() <= 1) return 0.0;
  double power_sum = 0.0;
  for (const auto& [tok, p] : dist.probabilities()) power_sum += std::pow(p, alpha);
  const double renyi = std::log(power_sum) / (1.0 - alpha);
  return renyi / std::log(static_cast<double>(dist.support()));
}

double CorpusEntropy(const Vocabulary& vocab) {
  if (vocab.total() == 0) return 0.0;
  const double total = static_cast<double>(vocab.total());
  double h = 0.0;
  for (const auto& [tok, c] : vocab.counts()) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / total;
    h -= p * std::log(p);
  }
  return h == 0.0 ? 0.0 : h;
}

TokenStreamSummary SummarizeTokenStream(std::span<const std::size_t> tokens_per_sentence,
                                        std::uint64_t unk_tokens) {
  TokenStreamSummary summary;
  for (std::size_t c : tokens_per_sentence) summary.total_tokens += c;
  if (!tokens_per_sentence.empty()) {
    summary.avg_tokens_per_sentence = static_cast<double>(summary.total_tokens) /
                                      static_cast<double>(tokens_per_sentence.size());
  }
  if (summary.total_tokens > 0) {
    summary.unk_rate =
        static_cast<double>(unk_tokens) / static_cast<double>(summary.total_tokens);
  }
  return summary;
}

}  // namespace treetok
