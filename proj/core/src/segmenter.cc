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

#include "treetok/segmenter.h"

#include <mutex>

#include "treetok/error.h"
#include "treetok/utf8.h"

namespace treetok {

std::optional<SegmentationResult> TokenCache::Find(std::string_view key) const {
  if (capacity_ == 0) return std::nullopt;
  std::shared_lock lock(mutex_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void TokenCache::Insert(std::string_view key, const SegmentationResult& value) {
  if (capacity_ == 0) return;
  std::unique_lock lock(mutex_);
  auto it = entries_.find(key);
  if (it != entries_.end()) {
    it->second = value;
  } else if (entries_.size() < capacity_) {
    entries_.emplace(std::string(key), value);
  }
}

std::size_t TokenCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

void TokenCache::Clear() {
  std::unique_lock lock(mutex_);
  entries_.clear();
}

TokenizerModel::TokenizerModel(Vocabulary vocabulary, ToolConfig config)
    : vocabulary_(std::move(vocabulary)),
      entropies_(vocabulary_),
      config_(config),
      cache_(config.cache_capacity) {}

std::vector<std::string> TopDownTokenize(std::string_view /*word*/, const ParseNode& tree,
                                         const Vocabulary& vocab) {
  std::vector<std::string> tokens;
  std::vector<const ParseNode*> stack{&tree};
  while (!stack.empty()) {
    const ParseNode* node = stack.back();
    stack.pop_back();
    if (vocab.Contains(node->token)) {
      tokens.push_back(node->token);
    } else if (node->left && node->right) {
      stack.push_back(node->right.get());
      stack.push_back(node->left.get());
    } else {
      tokens.push_back(node->token);
    }
  }
  return tokens;
}

std::vector<std::string> PostMerge(const std::vector<std::string>& tokens,
                                   const EntropyTable& entropies) {
  const std::size_t n = tokens.size();
  if (n <= 1) return tokens;

  // best[i][j]: minimum entropy of t_i..t_j; split[i][j]: chosen k or -1
  // for the merged run.
  std::vector<double> best(n * n, kInfinity);
  std::vector<long> split(n * n, -1);
  auto at = [n](std::size_t i, std::size_t j) { return i * n + j; };

  for (std::size_t i = 0; i < n; ++i) best[at(i, i)] = entropies.EmittedCost(tokens[i]);

  std::string merged;
  for (std::size_t h = 1; h < n; ++h) {
    for (std::size_t i = 0; i + h < n; ++i) {
      const std::size_t j = i + h;
      merged.clear();
      for (std::size_t k = i; k <= j; ++k) merged += tokens[k];
      double h_best = entropies.Lookup(merged);
      long k_best = -1;
      for (std::size_t k = i; k < j; ++k) {
        const double candidate = best[at(i, k)] + best[at(k + 1, j)];
        if (candidate <= h_best) {
          k_best = static_cast<long>(k);
          h_best = candidate;
        }
      }
      best[at(i, j)] = h_best;
      split[at(i, j)] = k_best;
    }
  }

  std::vector<std::string> out;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, n - 1}};
  while (!stack.empty()) {
    auto [i, j] = stack.back();
    stack.pop_back();
    if (i == j) {
      out.push_back(tokens[i]);
      continue;
    }
    const long k = split[at(i, j)];
    if (k < 0) {
      std::string run;
      for (std::size_t m = i; m <= j; ++m) run += tokens[m];
      out.push_back(std::move(run));
    } else {
      stack.emplace_back(static_cast<std::size_t>(k) + 1, j);
      stack.emplace_back(i, static_cast<std::size_t>(k));
    }
  }
  return out;
}

namespace {

void BuildCacheKey(std::string_view word, const ParseNode& tree, std::string& key) {
  key.clear();
  const auto len = static_cast<std::uint32_t>(word.size());
  for (int b = 0; b < 4; ++b) key.push_back(static_cast<char>((len >> (8 * b)) & 0xFF));
  key.append(word);
  AppendSplitSignature(tree, key);
}

SegmentationResult Segment(const TokenizerModel& model, std::string_view word,
                           const ParseNode& tree) {
  SegmentationResult result;
  result.pre_merge_tokens = TopDownTokenize(word, tree, model.vocabulary());
  result.tokens = PostMerge(result.pre_merge_tokens, model.entropies());
  for (const auto& tok : result.tokens) {
    if (!model.vocabulary().Contains(tok)) ++result.unk_count;
  }
  return result;
}

}  // namespace

SegmentationResult TokenizeWord(const TokenizerModel& model, std::string_view word,
                                const ParseNode& tree) {
  RequireValidTree(tree, word);
  if (model.cache().capacity() == 0) return Segment(model, word, tree);

  thread_local std::string key;
  BuildCacheKey(word, tree, key);
  if (auto hit = model.cache().Find(key)) return std::move(*hit);
  SegmentationResult result = Segment(model, word, tree);
  model.cache().Insert(key, result);
  return result;
}

CorpusTokenStats TokenizeCorpus(const TokenizerModel& model,
                                const StringMap<ParseNode>& trees, std::istream& text,
                                std::ostream* out,
                                const std::optional<FallbackSpec>& fallback) {
  CorpusTokenStats stats;
  std::string line;
  std::string lowered;
  std::uint64_t offset = 0;
  while (std::getline(text, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (auto bad = utf8::FindInvalid(line)) {
      throw Error(ErrorCode::kInvalidUtf8,
                  "invalid UTF-8 at byte offset " + std::to_string(offset + *bad));
    }
    offset += line.size() + 1;
    const auto words = utf8::SplitWhitespace(line);
    if (words.empty()) {
      if (out) *out << '\n';
      continue;
    }
    std::size_t sentence_tokens = 0;
    bool first = true;
    for (std::string_view raw : words) {
      std::string_view word = raw;
      if (model.config().lowercase) {
        lowered = utf8::ToLower(raw);
        word = lowered;
      }
      SegmentationResult seg;
      if (auto it = trees.find(word); it != trees.end()) {
        seg = TokenizeWord(model, word, it->second);
      } else if (fallback) {
        seg = TokenizeWord(model, word, FallbackTree(word, *fallback));
      } else {
        throw Error(ErrorCode::kMissingTree, "no tree for word '" + std::string(word) + "'");
      }
      for (const auto& tok : seg.tokens) {
        if (out) {
          if (!first) *out << ' ';
          *out << tok;
        }
        first = false;
        ++stats.token_counts[tok];
      }
      sentence_tokens += seg.tokens.size();
      stats.unk_tokens += seg.unk_count;
    }
    if (out) *out << '\n';
    stats.tokens_per_sentence.push_back(sentence_tokens);
    stats.total_tokens += sentence_tokens;
  }
  if (text.bad()) throw Error(ErrorCode::kIoFailure, "read error");
  return stats;
}

}  // namespace treetok
