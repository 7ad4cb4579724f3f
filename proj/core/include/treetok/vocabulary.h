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

#ifndef TREETOK_VOCABULARY_H_
#define TREETOK_VOCABULARY_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace treetok {

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};

template <typename V>
using StringMap = std::unordered_map<std::string, V, StringHash, std::equal_to<>>;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Token string -> count, with the running total T.
class Vocabulary {
 public:
  using Entry = std::pair<std::string, std::uint64_t>;

  Vocabulary() = default;

  // Sets the count of `token`, inserting it if needed.
  void Set(std::string_view token, std::uint64_t count);
  void Add(std::string_view token, std::uint64_t count);
  bool Remove(std::string_view token);

  bool Contains(std::string_view token) const {
    return counts_.find(token) != counts_.end();
  }
  // 0 when absent.
  std::uint64_t Count(std::string_view token) const;

  std::uint64_t total() const { return total_; }
  std::size_t size() const { return counts_.size(); }
  bool empty() const { return counts_.empty(); }

  const StringMap<std::uint64_t>& counts() const { return counts_; }

  // Descending count, ties broken by byte-wise lexicographic order.
  std::vector<Entry> SortedEntries() const;

  // Number of single-character entries.
  std::size_t CharacterCount() const;

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.total_ == b.total_ && a.counts_ == b.counts_;
  }

 private:
  StringMap<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

bool IsSingleCharacter(std::string_view token);

// −ln(count/T) for present tokens, +inf otherwise. Requires vocab.total() > 0.
double EntropyOf(const Vocabulary& vocab, std::string_view token);

// Token -> entropy in nats, frozen from a Vocabulary.
class EntropyTable {
 public:
  EntropyTable() = default;
  explicit EntropyTable(const Vocabulary& vocab);

  // +inf when absent.
  double Lookup(std::string_view token) const {
    auto it = entropies_.find(token);
    return it == entropies_.end() ? kInfinity : it->second;
  }

  // Cost of a token that is emitted regardless of membership: its entropy
  // when finite, otherwise the unknown-token cost ln T + 1.
  double EmittedCost(std::string_view token) const {
    const double e = Lookup(token);
    return e == kInfinity ? unknown_cost_ : e;
  }

  void Set(std::string_view token, double entropy);

  double unknown_cost() const { return unknown_cost_; }
  void set_unknown_cost(double cost) { unknown_cost_ = cost; }

  std::size_t size() const { return entropies_.size(); }
  bool Contains(std::string_view token) const {
    return entropies_.find(token) != entropies_.end();
  }

 private:
  StringMap<double> entropies_;
  double unknown_cost_ = 1.0;
};

}  // namespace treetok

#endif  // TREETOK_VOCABULARY_H_
