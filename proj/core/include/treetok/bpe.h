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

#ifndef TREETOK_BPE_H_
#define TREETOK_BPE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "treetok/treeio.h"
#include "treetok/vocabulary.h"

namespace treetok {

// Learned merges in application order.
using MergeList = std::vector<std::pair<std::string, std::string>>;

struct BpeModel {
  MergeList merges;
  // Characters at their corpus frequency; each merged unit at the pair
  // frequency it had when it was merged.
  Vocabulary vocab;
};

// Greedy pair-merge training with no end-of-word marker. Picks the most
// frequent pair, ties broken by lexicographic (left, right). Stops when the
// vocabulary reaches `vocab_size` or no pair occurs at least twice.
BpeModel BpeTrain(const CorpusStats& corpus, std::size_t vocab_size);

class BpeEncoder {
 public:
  explicit BpeEncoder(const MergeList& merges);

  // Starts from characters and applies merges in learned order.
  std::vector<std::string> Tokenize(std::string_view word) const;

 private:
  // Keyed by `left<TAB>right`; tokens never contain tabs.
  StringMap<std::size_t> ranks_;
};

std::vector<std::string> BpeTokenize(std::string_view word, const MergeList& merges);

// `left<TAB>right` per line.
void WriteMerges(std::ostream& out, const MergeList& merges);
MergeList ReadMerges(std::istream& in);

}  // namespace treetok

#endif  // TREETOK_BPE_H_
