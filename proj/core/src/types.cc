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

#include <algorithm>
#include <cmath>
#include <string>

#include "treetok/config.h"
#include "treetok/error.h"
#include "treetok/utf8.h"
#include "treetok/vocabulary.h"

namespace treetok {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedLine: return "MalformedLine";
    case ErrorCode::kNonBinary: return "NonBinary";
    case ErrorCode::kSpanMismatch: return "SpanMismatch";
    case ErrorCode::kTokenMismatch: return "TokenMismatch";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kInvalidUtf8: return "InvalidUtf8";
    case ErrorCode::kConcatMismatch: return "ConcatMismatch";
    case ErrorCode::kTargetBelowCharacterFloor: return "TargetBelowCharacterFloor";
    case ErrorCode::kInsufficientVocabulary: return "InsufficientVocabulary";
    case ErrorCode::kMissingTree: return "MissingTree";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kCoverageMismatch: return "CoverageMismatch";
    case ErrorCode::kInvalidAlpha: return "InvalidAlpha";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

void Vocabulary::Set(std::string_view token, std::uint64_t count) {
  auto it = counts_.find(token);
  if (it == counts_.end()) {
    counts_.emplace(std::string(token), count);
  } else {
    total_ -= it->second;
    it->second = count;
  }
  total_ += count;
}

void Vocabulary::Add(std::string_view token, std::uint64_t count) {
  auto it = counts_.find(token);
  if (it == counts_.end()) {
    counts_.emplace(std::string(token), count);
  } else {
    it->second += count;
  }
  total_ += count;
}

bool Vocabulary::Remove(std::string_view token) {
  auto it = counts_.find(token);
  if (it == counts_.end()) return false;
  total_ -= it->second;
  counts_.erase(it);
  return true;
}

std::uint64_t Vocabulary::Count(std::string_view token) const {
  auto it = counts_.find(token);
  return it == counts_.end() ? 0 : it->second;
}

std::vector<Vocabulary::Entry> Vocabulary::SortedEntries() const {
  std::vector<Entry> entries(counts_.begin(), counts_.end());
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return entries;
}

std::size_t Vocabulary::CharacterCount() const {
  return static_cast<std::size_t>(
      std::count_if(counts_.begin(), counts_.end(),
                    [](const auto& kv) { return IsSingleCharacter(kv.first); }));
}

bool IsSingleCharacter(std::string_view token) {
  return !token.empty() &&
         utf8::SequenceLength(static_cast<unsigned char>(token[0])) >= token.size();
}

namespace {

double EntropyFromCount(std::uint64_t count, std::uint64_t total) {
  if (count == 0 || total == 0) return kInfinity;
  const double p = static_cast<double>(count) / static_cast<double>(total);
  return p >= 1.0 ? 0.0 : -std::log(p);
}

}  // namespace

double EntropyOf(const Vocabulary& vocab, std::string_view token) {
  auto it = vocab.counts().find(token);
  if (it == vocab.counts().end()) return kInfinity;
  return EntropyFromCount(it->second, vocab.total());
}

EntropyTable::EntropyTable(const Vocabulary& vocab) {
  entropies_.reserve(vocab.size());
  for (const auto& [token, count] : vocab.counts()) {
    entropies_.emplace(token, EntropyFromCount(count, vocab.total()));
  }
  unknown_cost_ = vocab.total() > 0
                      ? std::log(static_cast<double>(vocab.total())) + 1.0
                      : 1.0;
}

void EntropyTable::Set(std::string_view token, double entropy) {
  auto it = entropies_.find(token);
  if (it == entropies_.end()) {
    entropies_.emplace(std::string(token), entropy);
  } else {
    it->second = entropy;
  }
}

void ValidateConfig(const ToolConfig& config) {
  if (!(config.prune_rate > 0.0 && config.prune_rate < 1.0)) {
    throw Error(ErrorCode::kInvalidConfig,
                "prune_rate must lie in (0, 1), got " +
                    std::to_string(config.prune_rate));
  }
  if (!(config.renyi_alpha > 0.0) || config.renyi_alpha == 1.0) {
    throw Error(ErrorCode::kInvalidConfig,
                "renyi_alpha must be > 0 and != 1, got " +
                    std::to_string(config.renyi_alpha));
  }
}

}  // namespace treetok
