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

#ifndef TREETOK_FALLBACK_TREE_H_
#define TREETOK_FALLBACK_TREE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "treetok/parse_tree.h"

namespace treetok {

enum class TreeStrategy { kRight, kLeft, kBalanced, kRandom };

struct FallbackSpec {
  TreeStrategy strategy = TreeStrategy::kRight;
  std::uint64_t seed = 0;
};

std::optional<TreeStrategy> ParseTreeStrategy(std::string_view name);
std::string_view TreeStrategyName(TreeStrategy strategy);

// Deterministic binary tree over the characters of a non-empty word.
//   right:    (a (b c))
//   left:     ((a b) c)
//   balanced: split at the middle, left half takes the extra character
//   random:   uniform split points drawn from a generator seeded by the seed
//             mixed with a hash of the word, so each word's tree is
//             independent of call order.
ParseNode FallbackTree(std::string_view word, TreeStrategy strategy,
                       std::uint64_t seed = 0);

inline ParseNode FallbackTree(std::string_view word, const FallbackSpec& spec) {
  return FallbackTree(word, spec.strategy, spec.seed);
}

}  // namespace treetok

#endif  // TREETOK_FALLBACK_TREE_H_
