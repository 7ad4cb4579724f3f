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

#include "treetok/bpe.h"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <tuple>

#include "treetok/error.h"
#include "treetok/utf8.h"

namespace treetok {

namespace {

using Pair = std::pair<std::string, std::string>;

struct WordState {
  std::vector<std::string> symbols;
  std::uint64_t freq;
};

// Pair counts with an ordered index for O(log n) best-pair selection.
class PairTable {
 public:
  void Adjust(const Pair& pair, std::int64_t delta) {
    auto it = counts_.find(pair);
    std::int64_t old = it == counts_.end() ? 0 : it->second;
    if (old > 0) order_.erase({-old, pair});
    const std::int64_t now = old + delta;
    if (now > 0) {
      counts_[pair] = now;
      order_.insert({-now, pair});
    } else if (it != counts_.end()) {
      counts_.erase(it);
    }
  }

  // Highest count, then smallest (left, right).
  const std::pair<std::int64_t, Pair>* Best() const {
    return order_.empty() ? nullptr : &*order_.begin();
  }

 private:
  std::map<Pair, std::int64_t> counts_;
  std::set<std::pair<std::int64_t, Pair>> order_;
};

void AdjustWord(PairTable& table, const WordState& w, std::int64_t sign) {
  for (std::size_t k = 0; k + 1 < w.symbols.size(); ++k) {
    table.Adjust({w.symbols[k], w.symbols[k + 1]},
                 sign * static_cast<std::int64_t>(w.freq));
  }
}

bool ApplyMerge(std::vector<std::string>& symbols, std::string_view left,
                std::string_view right) {
  bool changed = false;
  std::vector<std::string> out;
  out.reserve(symbols.size());
  for (std::size_t k = 0; k < symbols.size(); ++k) {
    if (k + 1 < symbols.size() && symbols[k] == left && symbols[k + 1] == right) {
      out.push_back(symbols[k] + symbols[k + 1]);
      ++k;
      changed = true;
    } else {
      out.push_back(std::move(symbols[k]));
    }
  }
  symbols = std::move(out);
  return changed;
}

std::string RankKey(std::string_view left, std::string_view right) {
  std::string key;
  key.reserve(left.size() + right.size() + 1);
  key.append(left);
  key.push_back('\t');
  key.append(right);
  return key;
}

}  // namespace

BpeModel BpeTrain(const CorpusStats& corpus, std::size_t vocab_size) {
  std::vector<std::pair<std::string, std::uint64_t>> words(corpus.word_freq.begin(),
                                                           corpus.word_freq.end());
  std::sort(words.begin(), words.end());

  BpeModel model;
  std::vector<WordState> states;
  states.reserve(words.size());
  for (const auto& [word, freq] : words) {
    WordState st{{}, freq};
    for (std::string_view ch : utf8::SplitChars(word)) {
      st.symbols.emplace_back(ch);
      model.vocab.Add(ch, freq);
    }
    states.push_back(std::move(st));
  }

  PairTable table;
  std::map<Pair, std::set<std::size_t>> where;
  for (std::size_t w = 0; w < states.size(); ++w) {
    AdjustWord(table, states[w], +1);
    const auto& sym = states[w].symbols;
    for (std::size_t k = 0; k + 1 < sym.size(); ++k) where[{sym[k], sym[k + 1]}].insert(w);
  }

  while (model.vocab.size() < vocab_size) {
    const auto* best = table.Best();
    if (best == nullptr || -best->first < 2) break;
    const Pair pair = best->second;
    const auto count = static_cast<std::uint64_t>(-best->first);
    const std::set<std::size_t> affected = where[pair];
    for (std::size_t w : affected) {
      WordState& st = states[w];
      AdjustWord(table, st, -1);
      ApplyMerge(st.symbols, pair.first, pair.second);
      AdjustWord(table, st, +1);
      for (std::size_t k = 0; k + 1 < st.symbols.size(); ++k) {
        where[{st.symbols[k], st.symbols[k + 1]}].insert(w);
      }
    }
    where.erase(pair);
    model.merges.push_back(pair);
    model.vocab.Add(pair.first + pair.second, count);
  }
  return model;
}

BpeEncoder::BpeEncoder(const MergeList& merges) {
  for (std::size_t r = 0; r < merges.size(); ++r) {
    ranks_.emplace(RankKey(merges[r].first, merges[r].second), r);
  }
}

std::vector<std::string> BpeEncoder::Tokenize(std::string_view word) const {
  std::vector<std::string> symbols;
  for (std::string_view ch : utf8::SplitChars(word)) symbols.emplace_back(ch);
  // Applying the lowest-ranked present pair first is equivalent to applying
  // the merge list in order: a pair involving a newly merged unit always has
  // a higher rank than the merge that created it.
  while (symbols.size() > 1) {
    std::size_t best_rank = std::numeric_limits<std::size_t>::max();
    std::size_t best_pos = 0;
    for (std::size_t k = 0; k + 1 < symbols.size(); ++k) {
      auto it = ranks_.find(RankKey(symbols[k], symbols[k + 1]));
      if (it != ranks_.end() && it->second < best_rank) {
        best_rank = it->second;
        best_pos = k;
      }
    }
    if (best_rank == std::numeric_limits<std::size_t>::max()) break;
    const std::string left = symbols[best_pos];
    const std::string right = symbols[best_pos + 1];
    ApplyMerge(symbols, left, right);
  }
  return symbols;
}

std::vector<std::string> BpeTokenize(std::string_view word, const MergeList& merges) {
  return BpeEncoder(merges).Tokenize(word);
}

void WriteMerges(std::ostream& out, const MergeList& merges) {
  for (const auto& [l, r] : merges) out << l << '\t' << r << '\n';
}

MergeList ReadMerges(std::istream& in) {
  MergeList merges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size() ||
        line.find('\t', tab + 1) != std::string::npos) {
      throw Error(ErrorCode::kMalformedLine,
                  "line " + std::to_string(line_no) + ": expected left<TAB>right");
    }
    merges.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return merges;
}

}  // namespace treetok
