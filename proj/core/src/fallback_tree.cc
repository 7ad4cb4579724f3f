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

#include "treetok/fallback_tree.h"

#include <random>
#include <vector>

#include "treetok/error.h"
#include "treetok/utf8.h"

namespace treetok {

namespace {

std::uint64_t Fnv1a(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

class Builder {
 public:
  Builder(const std::vector<std::string_view>& chars, TreeStrategy strategy,
          std::uint64_t seed)
      : chars_(chars), strategy_(strategy), rng_(seed) {}

  ParseNode Build(std::size_t i, std::size_t j) {
    if (i == j) return MakeLeaf(i, std::string(chars_[i]));
    std::size_t k = i;
    switch (strategy_) {
      case TreeStrategy::kRight: k = i; break;
      case TreeStrategy::kLeft: k = j - 1; break;
      case TreeStrategy::kBalanced: k = i + (j - i) / 2; break;
      case TreeStrategy::kRandom: k = i + static_cast<std::size_t>(rng_() % (j - i)); break;
    }
    ParseNode left = Build(i, k);
    ParseNode right = Build(k + 1, j);
    return MakeInternal(std::move(left), std::move(right));
  }

 private:
  const std::vector<std::string_view>& chars_;
  TreeStrategy strategy_;
  std::mt19937_64 rng_;
};

}  // namespace

std::optional<TreeStrategy> ParseTreeStrategy(std::string_view name) {
  if (name == "right") return TreeStrategy::kRight;
  if (name == "left") return TreeStrategy::kLeft;
  if (name == "balanced") return TreeStrategy::kBalanced;
  if (name == "random") return TreeStrategy::kRandom;
  return std::nullopt;
}

std::string_view TreeStrategyName(TreeStrategy strategy) {
  switch (strategy) {
    case TreeStrategy::kRight: return "right";
    case TreeStrategy::kLeft: return "left";
    case TreeStrategy::kBalanced: return "balanced";
    case TreeStrategy::kRandom: return "random";
  }
  return "right";
}

ParseNode FallbackTree(std::string_view word, TreeStrategy strategy, std::uint64_t seed) {
  const auto chars = utf8::SplitChars(word);
  if (chars.empty()) {
    throw Error(ErrorCode::kMalformedLine, "cannot build a tree for an empty word");
  }
  Builder builder(chars, strategy, seed ^ Fnv1a(word));
  return builder.Build(0, chars.size() - 1);
}

}  // namespace treetok
