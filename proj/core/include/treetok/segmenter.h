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

#ifndef TREETOK_SEGMENTER_H_
#define TREETOK_SEGMENTER_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "treetok/config.h"
#include "treetok/fallback_tree.h"
#include "treetok/parse_tree.h"
#include "treetok/vocabulary.h"

namespace treetok {

struct SegmentationResult {
  std::vector<std::string> tokens;
  // Emitted tokens absent from the vocabulary.
  std::size_t unk_count = 0;
  // Top-down output before post-merge repair.
  std::vector<std::string> pre_merge_tokens;

  friend bool operator==(const SegmentationResult&, const SegmentationResult&) = default;
};

// Bounded word -> result map, safe for concurrent readers and writers.
// Entries are admitted on miss until capacity is reached; a later insert of
// an existing key overwrites it.
class TokenCache {
 public:
  explicit TokenCache(std::size_t capacity) : capacity_(capacity) {}

  std::optional<SegmentationResult> Find(std::string_view key) const;
  void Insert(std::string_view key, const SegmentationResult& value);

  std::size_t size() const;
  std::size_t capacity() const { return capacity_; }
  void Clear();

 private:
  std::size_t capacity_;
  mutable std::shared_mutex mutex_;
  StringMap<SegmentationResult> entries_;
};

// The deployable tokenizer: a frozen vocabulary, its entropy table and a
// cache of previously tokenized (word, tree) pairs.
class TokenizerModel {
 public:
  TokenizerModel(Vocabulary vocabulary, ToolConfig config);

  const Vocabulary& vocabulary() const { return vocabulary_; }
  const EntropyTable& entropies() const { return entropies_; }
  const ToolConfig& config() const { return config_; }
  TokenCache& cache() const { return cache_; }

 private:
  Vocabulary vocabulary_;
  EntropyTable entropies_;
  ToolConfig config_;
  mutable TokenCache cache_;
};

// Depth-first over the tree, left before right; a node whose token is in
// the vocabulary is emitted whole and its subtree skipped. Leaves missing
// from the vocabulary are emitted as themselves.
std::vector<std::string> TopDownTokenize(std::string_view word, const ParseNode& tree,
                                         const Vocabulary& vocab);

// Interval DP over the token sequence: any contiguous run may be replaced by
// its concatenation when that string has an entropy. Minimises total
// entropy; ties go to splitting, and among splits to the largest index.
// Emitted tokens without a finite entropy cost `entropies.unknown_cost()`.
std::vector<std::string> PostMerge(const std::vector<std::string>& tokens,
                                   const EntropyTable& entropies);

// Cache lookup, else validation, top-down matching and post-merge.
SegmentationResult TokenizeWord(const TokenizerModel& model, std::string_view word,
                                const ParseNode& tree);

struct CorpusTokenStats {
  std::vector<std::size_t> tokens_per_sentence;
  std::uint64_t total_tokens = 0;
  std::uint64_t unk_tokens = 0;
  StringMap<std::uint64_t> token_counts;

  std::size_t sentences() const { return tokens_per_sentence.size(); }
};

// Tokenizes each line of `text`. Every input line produces one output line
// of space-joined tokens (empty lines stay empty and are not counted as
// sentences). Words without a tree use `fallback` or raise kMissingTree.
CorpusTokenStats TokenizeCorpus(const TokenizerModel& model,
                                const StringMap<ParseNode>& trees, std::istream& text,
                                std::ostream* out,
                                const std::optional<FallbackSpec>& fallback = std::nullopt);

}  // namespace treetok

#endif  // TREETOK_SEGMENTER_H_
