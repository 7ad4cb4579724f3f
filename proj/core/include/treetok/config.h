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

#ifndef TREETOK_CONFIG_H_
#define TREETOK_CONFIG_H_

#include <cstddef>
#include <cstdint>

namespace treetok {

struct ToolConfig {
  // Pair candidates are admitted when their frequency is strictly greater.
  std::uint64_t pair_threshold = 10;
  // Fraction of the vocabulary removed per pruning round, in (0, 1).
  double prune_rate = 0.10;
  std::size_t target_vocab_size = 30000;
  double renyi_alpha = 2.5;
  bool lowercase = false;
  std::size_t cache_capacity = 100000;
  // Worker cap for the map-reduce passes; 0 means hardware concurrency.
  std::size_t threads = 1;
};

// Throws Error(kInvalidConfig) when a field is out of range.
void ValidateConfig(const ToolConfig& config);

}  // namespace treetok

#endif  // TREETOK_CONFIG_H_
