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

#ifndef TREETOK_PARSE_TREE_H_
#define TREETOK_PARSE_TREE_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace treetok {

// Binary character-level parse of one word. Span indices are 0-based and
// inclusive, counted in Unicode scalar values. `token` is the UTF-8 text the
// node covers.
struct ParseNode {
  std::size_t i = 0;
  std::size_t j = 0;
  std::string token;
  std::unique_ptr<ParseNode> left;
  std::unique_ptr<ParseNode> right;

  ParseNode() = default;
  ParseNode(const ParseNode& other);
  ParseNode& operator=(const ParseNode& other);
  ParseNode(ParseNode&&) noexcept = default;
  ParseNode& operator=(ParseNode&&) noexcept = default;

  bool is_leaf() const { return !left && !right; }
  std::size_t width() const { return j - i + 1; }

  friend bool operator==(const ParseNode& a, const ParseNode& b);
};

ParseNode MakeLeaf(std::size_t index, std::string ch);

// Joins two adjacent subtrees; the result spans [left.i, right.j].
ParseNode MakeInternal(ParseNode left, ParseNode right);

enum class TreeViolationKind { kNonBinary, kSpanMismatch, kTokenMismatch };

struct TreeViolation {
  TreeViolationKind kind;
  std::size_t i = 0;  // offending node span
  std::size_t j = 0;
  std::string detail;

  std::string ToString() const;
};

// Checks every structural invariant and that the leaves spell `word`.
std::optional<TreeViolation> ValidateTree(const ParseNode& root,
                                          std::string_view word);

// Throws treetok::Error with the matching code on violation.
void RequireValidTree(const ParseNode& root, std::string_view word);

// All (i, j) spans of the tree in pre-order.
std::vector<std::pair<std::size_t, std::size_t>> TreeSpans(const ParseNode& root);

std::size_t CountInternalNodes(const ParseNode& root);

// Pre-order sequence of split points (the last index of each left child).
// Two valid trees over the same word are equal iff their signatures are.
void AppendSplitSignature(const ParseNode& root, std::string& out);

}  // namespace treetok

#endif  // TREETOK_PARSE_TREE_H_
