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

#include "treetok/vocab_builder.h"

#include <algorithm>
#include <cmath>
#include <thread>
#include <tuple>

#include "treetok/error.h"

namespace treetok {

namespace {

using TreeView = std::vector<const WeightedTree*>;

TreeView InputOrder(std::span<const WeightedTree> trees) {
  TreeView view;
  view.reserve(trees.size());
  for (const auto& t : trees) view.push_back(&t);
  return view;
}

// Sorted by word, then by split structure, so that every downstream
// reduction sees the same sequence regardless of input order.
TreeView CanonicalOrder(std::span<const WeightedTree> trees) {
  struct Keyed {
    const WeightedTree* tree;
    std::string signature;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(trees.size());
  for (const auto& t : trees) {
    Keyed k{&t, {}};
    AppendSplitSignature(t.tree, k.signature);
    keyed.push_back(std::move(k));
  }
  std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    return std::tie(a.tree->tree.token, a.signature, a.tree->freq) <
           std::tie(b.tree->tree.token, b.signature, b.tree->freq);
  });
  TreeView view;
  view.reserve(keyed.size());
  for (const auto& k : keyed) view.push_back(k.tree);
  return view;
}

std::size_t ResolveThreads(std::size_t threads, std::size_t work) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  return std::max<std::size_t>(1, std::min(threads, work));
}

// Runs `fn(begin, end, partial)` over contiguous chunks and merges the
// partial maps in chunk order.
template <typename Map, typename Fn, typename Merge>
Map MapReduce(const TreeView& trees, std::size_t threads, Fn&& fn, Merge&& merge) {
  const std::size_t workers = ResolveThreads(threads, trees.size());
  std::vector<Map> partials(workers);
  if (workers == 1) {
    fn(std::size_t{0}, trees.size(), partials[0]);
    return std::move(partials[0]);
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (trees.size() + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(trees.size(), w * chunk);
    const std::size_t end = std::min(trees.size(), begin + chunk);
    pool.emplace_back([&, w, begin, end] { fn(begin, end, partials[w]); });
  }
  for (auto& t : pool) t.join();
  Map result = std::move(partials[0]);
  for (std::size_t w = 1; w < workers; ++w) merge(result, partials[w]);
  return result;
}

bool RecurCount(const ParseNode& node, std::uint64_t freq, const Vocabulary& vocab,
                PairCandidates& out) {
  if (!node.left || !node.right) return true;
  const bool hit_left = RecurCount(*node.left, freq, vocab, out);
  const bool hit_right = RecurCount(*node.right, freq, vocab, out);
  if (!(hit_left && hit_right)) return false;
  if (vocab.Contains(node.token)) return true;
  out[node.token] += freq;
  return false;
}

void AddCharacters(const ParseNode& node, std::uint64_t freq, Vocabulary& vocab) {
  if (node.is_leaf()) {
    vocab.Add(node.token, freq);
    return;
  }
  if (node.left) AddCharacters(*node.left, freq, vocab);
  if (node.right) AddCharacters(*node.right, freq, vocab);
}

double ViterbiRecurse(const ParseNode& node, const EntropyTable& entropies,
                      DeltaLossTable* delta, std::vector<const ParseNode*>& seg) {
  if (node.is_leaf()) {
    seg.push_back(&node);
    return entropies.Lookup(node.token);
  }
  const std::size_t mark = seg.size();
  const double split = ViterbiRecurse(*node.left, entropies, delta, seg) +
                       ViterbiRecurse(*node.right, entropies, delta, seg);
  const double whole = entropies.Lookup(node.token);
  if (delta != nullptr) {
    // An absent token (whole = inf) has nothing to lose.
    const double gain = whole == kInfinity ? 0.0 : std::max(split - whole, 0.0);
    (*delta)[node.token] += gain;
  }
  if (split > whole) {
    seg.resize(mark);
    seg.push_back(&node);
    return whole;
  }
  return split;
}

// Zero-count characters cost the unknown-token rate rather than infinity.
EntropyTable PruningEntropies(const Vocabulary& vocab) {
  EntropyTable entropies(vocab);
  for (const auto& [tok, c] : vocab.counts()) {
    if (c == 0 && IsSingleCharacter(tok)) entropies.Set(tok, entropies.unknown_cost());
  }
  return entropies;
}

StringMap<std::uint64_t> CountSegments(const TreeView& trees, const Vocabulary& vocab,
                                       std::size_t threads) {
  const EntropyTable entropies = PruningEntropies(vocab);
  return MapReduce<StringMap<std::uint64_t>>(
      trees, threads,
      [&](std::size_t begin, std::size_t end, StringMap<std::uint64_t>& counts) {
        std::vector<const ParseNode*> seg;
        for (std::size_t n = begin; n < end; ++n) {
          seg.clear();
          ViterbiRecurse(trees[n]->tree, entropies, nullptr, seg);
          for (const ParseNode* tok : seg) counts[tok->token] += trees[n]->freq;
        }
      },
      [](StringMap<std::uint64_t>& into, const StringMap<std::uint64_t>& from) {
        for (const auto& [tok, c] : from) into[tok] += c;
      });
}

// E-step body. With `keep_all`, every token of `vocab` survives (possibly at
// count 0); otherwise only counted tokens and characters do.
Vocabulary EStepImpl(const TreeView& trees, const Vocabulary& vocab,
                     std::size_t threads, bool keep_all) {
  const auto counts = CountSegments(trees, vocab, threads);
  Vocabulary next;
  for (const auto& [tok, c] : counts) next.Set(tok, c);
  for (const auto& [tok, c] : vocab.counts()) {
    if (next.Contains(tok)) continue;
    if (keep_all || IsSingleCharacter(tok)) next.Set(tok, 0);
  }
  return next;
}

DeltaLossTable MStepImpl(const TreeView& trees, const EntropyTable& entropies,
                         std::size_t threads) {
  return MapReduce<DeltaLossTable>(
      trees, threads,
      [&](std::size_t begin, std::size_t end, DeltaLossTable& losses) {
        std::vector<const ParseNode*> seg;
        DeltaLossTable word_losses;
        for (std::size_t n = begin; n < end; ++n) {
          seg.clear();
          word_losses.clear();
          ViterbiRecurse(trees[n]->tree, entropies, &word_losses, seg);
          const double freq = static_cast<double>(trees[n]->freq);
          for (const ParseNode* tok : seg) {
            auto it = word_losses.find(tok->token);
            const double loss = it == word_losses.end() ? 0.0 : it->second;
            losses[tok->token] += loss * freq;
          }
        }
      },
      [](DeltaLossTable& into, const DeltaLossTable& from) {
        for (const auto& [tok, d] : from) into[tok] += d;
      });
}

}  // namespace

PairCandidates CountTreePairs(std::span<const WeightedTree> trees,
                              const Vocabulary& vocab) {
  PairCandidates candidates;
  for (const auto& t : trees) RecurCount(t.tree, t.freq, vocab, candidates);
  return candidates;
}

Vocabulary InitVocab(std::span<const WeightedTree> trees, std::uint64_t pair_threshold) {
  Vocabulary vocab;
  for (const auto& t : trees) AddCharacters(t.tree, t.freq, vocab);
  while (true) {
    const PairCandidates candidates = CountTreePairs(trees, vocab);
    std::size_t added = 0;
    for (const auto& [token, freq] : candidates) {
      if (freq > pair_threshold) {
        vocab.Set(token, freq);
        ++added;
      }
    }
    if (added == 0) break;
  }
  return vocab;
}

ViterbiResult TreeViterbi(const ParseNode& root, const EntropyTable& entropies,
                          DeltaLossTable* delta) {
  std::vector<const ParseNode*> seg;
  ViterbiResult result;
  result.entropy = ViterbiRecurse(root, entropies, delta, seg);
  result.tokens.reserve(seg.size());
  for (const ParseNode* n : seg) result.tokens.push_back(n->token);
  return result;
}

Vocabulary EStep(std::span<const WeightedTree> trees, const Vocabulary& vocab,
                 std::size_t threads) {
  return EStepImpl(InputOrder(trees), vocab, threads, /*keep_all=*/false);
}

DeltaLossTable MStep(std::span<const WeightedTree> trees, const Vocabulary& vocab,
                     std::size_t threads) {
  return MStepImpl(InputOrder(trees), PruningEntropies(vocab), threads);
}

DeltaLossTable MStep(std::span<const WeightedTree> trees, const EntropyTable& entropies,
                     std::size_t threads) {
  return MStepImpl(InputOrder(trees), entropies, threads);
}

Vocabulary PruneVocab(std::span<const WeightedTree> trees, Vocabulary vocab,
                      std::size_t target_size, double prune_rate,
                      std::size_t threads, PruneTrace* trace) {
  if (!(prune_rate > 0.0 && prune_rate < 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "prune_rate must lie in (0, 1)");
  }
  const std::size_t floor = vocab.CharacterCount();
  if (target_size < floor) {
    throw Error(ErrorCode::kTargetBelowCharacterFloor,
                "target " + std::to_string(target_size) + " is below the " +
                    std::to_string(floor) + " base characters");
  }
  if (vocab.size() < target_size) {
    throw Error(ErrorCode::kInsufficientVocabulary,
                "initial vocabulary has " + std::to_string(vocab.size()) +
                    " entries, fewer than the target " + std::to_string(target_size));
  }
  const TreeView order = CanonicalOrder(trees);

  while (vocab.size() > target_size) {
    if (trace) trace->sizes.push_back(vocab.size());
    vocab = EStepImpl(order, vocab, threads, /*keep_all=*/true);
    const DeltaLossTable losses = MStepImpl(order, PruningEntropies(vocab), threads);

    struct Candidate {
      double loss;
      std::uint64_t count;
      const std::string* token;
    };
    std::vector<Candidate> candidates;
    for (const auto& [tok, count] : vocab.counts()) {
      if (IsSingleCharacter(tok)) continue;
      auto it = losses.find(tok);
      candidates.push_back({it == losses.end() ? 0.0 : it->second, count, &tok});
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& a, const Candidate& b) {
                if (a.loss != b.loss) return a.loss < b.loss;
                if (a.count != b.count) return a.count < b.count;
                return *a.token < *b.token;
              });

    const auto by_rate = static_cast<std::size_t>(
        std::floor(prune_rate * static_cast<double>(vocab.size())));
    std::size_t remove = std::min(vocab.size() - target_size, std::max<std::size_t>(1, by_rate));
    remove = std::min(remove, candidates.size());
    if (remove == 0) break;

    std::vector<std::string> doomed;
    doomed.reserve(remove);
    for (std::size_t n = 0; n < remove; ++n) doomed.push_back(*candidates[n].token);
    for (const auto& tok : doomed) vocab.Remove(tok);
  }
  if (trace) trace->sizes.push_back(vocab.size());
  return vocab;
}

Vocabulary BuildVocabulary(std::span<const WeightedTree> trees, const ToolConfig& config,
                           PruneTrace* trace) {
  ValidateConfig(config);
  Vocabulary vocab = InitVocab(trees, config.pair_threshold);
  return PruneVocab(trees, std::move(vocab), config.target_vocab_size, config.prune_rate,
                    config.threads, trace);
}

}  // namespace treetok
