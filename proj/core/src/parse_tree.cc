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

#include "treetok/parse_tree.h"

#include <string>

#include "treetok/error.h"
#include "treetok/utf8.h"

namespace treetok {

ParseNode::ParseNode(const ParseNode& other)
    : i(other.i),
      j(other.j),
      token(other.token),
      left(other.left ? std::make_unique<ParseNode>(*other.left) : nullptr),
      right(other.right ? std::make_unique<ParseNode>(*other.right) : nullptr) {}

ParseNode& ParseNode::operator=(const ParseNode& other) {
  if (this != &other) {
    ParseNode copy(other);
    *this = std::move(copy);
  }
  return *this;
}

bool operator==(const ParseNode& a, const ParseNode& b) {
  if (a.i != b.i || a.j != b.j || a.token != b.token) return false;
  if (static_cast<bool>(a.left) != static_cast<bool>(b.left)) return false;
  if (static_cast<bool>(a.right) != static_cast<bool>(b.right)) return false;
  if (a.left && !(*a.left == *b.left)) return false;
  if (a.right && !(*a.right == *b.right)) return false;
  return true;
}

ParseNode MakeLeaf(std::size_t index, std::string ch) {
  ParseNode leaf;
  leaf.i = index;
  leaf.j = index;
  leaf.token = std::move(ch);
  return leaf;
}

ParseNode MakeInternal(ParseNode left, ParseNode right) {
  ParseNode node;
  node.i = left.i;
  node.j = right.j;
  node.token = left.token + right.token;
  node.left = std::make_unique<ParseNode>(std::move(left));
  node.right = std::make_unique<ParseNode>(std::move(right));
  return node;
}

std::string TreeViolation::ToString() const {
  std::string kind_name;
  switch (kind) {
    case TreeViolationKind::kNonBinary: kind_name = "NonBinary"; break;
    case TreeViolationKind::kSpanMismatch: kind_name = "SpanMismatch"; break;
    case TreeViolationKind::kTokenMismatch: kind_name = "TokenMismatch"; break;
  }
  return kind_name + " at node (" + std::to_string(i) + "," + std::to_string(j) +
         "): " + detail;
}

namespace {

std::optional<TreeViolation> Violation(TreeViolationKind kind,
                                       const ParseNode& node,
                                       std::string detail) {
  return TreeViolation{kind, node.i, node.j, std::move(detail)};
}

std::optional<TreeViolation> CheckNode(
    const ParseNode& node, const std::vector<std::string_view>& chars) {
  if (static_cast<bool>(node.left) != static_cast<bool>(node.right)) {
    return Violation(TreeViolationKind::kNonBinary, node,
                     "node has exactly one child");
  }
  if (node.is_leaf()) {
    if (node.i != node.j) {
      return Violation(TreeViolationKind::kSpanMismatch, node,
                       "leaf spans more than one character");
    }
    if (node.i >= chars.size()) {
      return Violation(TreeViolationKind::kSpanMismatch, node,
                       "leaf index beyond end of word");
    }
    if (node.token != chars[node.i]) {
      return Violation(TreeViolationKind::kTokenMismatch, node,
                       "leaf '" + node.token + "' but word has '" +
                           std::string(chars[node.i]) + "'");
    }
    return std::nullopt;
  }
  const ParseNode& l = *node.left;
  const ParseNode& r = *node.right;
  if (node.i >= node.j || l.i != node.i || r.j != node.j || l.j + 1 != r.i ||
      l.i > l.j || r.i > r.j) {
    return Violation(TreeViolationKind::kSpanMismatch, node,
                     "children do not partition the span");
  }
  if (auto v = CheckNode(l, chars)) return v;
  if (auto v = CheckNode(r, chars)) return v;
  const std::string_view tok = node.token;
  if (tok.size() != l.token.size() + r.token.size() ||
      tok.substr(0, l.token.size()) != l.token ||
      tok.substr(l.token.size()) != r.token) {
    return Violation(TreeViolationKind::kTokenMismatch, node,
                     "token '" + node.token + "' is not '" + l.token + "' + '" +
                         r.token + "'");
  }
  return std::nullopt;
}

void CollectSpans(const ParseNode& node,
                  std::vector<std::pair<std::size_t, std::size_t>>& out) {
  out.emplace_back(node.i, node.j);
  if (node.left) CollectSpans(*node.left, out);
  if (node.right) CollectSpans(*node.right, out);
}

}  // namespace

std::optional<TreeViolation> ValidateTree(const ParseNode& root,
                                          std::string_view word) {
  const auto chars = utf8::SplitChars(word);
  if (chars.empty() || root.i != 0 || root.j + 1 != chars.size()) {
    return Violation(TreeViolationKind::kSpanMismatch, root,
                     "root does not cover the word '" + std::string(word) + "'");
  }
  return CheckNode(root, chars);
}

void RequireValidTree(const ParseNode& root, std::string_view word) {
  if (auto v = ValidateTree(root, word)) {
    ErrorCode code = ErrorCode::kSpanMismatch;
    if (v->kind == TreeViolationKind::kNonBinary) code = ErrorCode::kNonBinary;
    if (v->kind == TreeViolationKind::kTokenMismatch) code = ErrorCode::kTokenMismatch;
    throw Error(code, "word '" + std::string(word) + "': " + v->ToString());
  }
}

std::vector<std::pair<std::size_t, std::size_t>> TreeSpans(const ParseNode& root) {
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  CollectSpans(root, spans);
  return spans;
}

std::size_t CountInternalNodes(const ParseNode& root) {
  if (root.is_leaf()) return 0;
  std::size_t n = 1;
  if (root.left) n += CountInternalNodes(*root.left);
  if (root.right) n += CountInternalNodes(*root.right);
  return n;
}

void AppendSplitSignature(const ParseNode& root, std::string& out) {
  if (root.is_leaf() || !root.left) return;
  const auto k = static_cast<std::uint32_t>(root.left->j);
  out.push_back(static_cast<char>(k & 0xFF));
  out.push_back(static_cast<char>((k >> 8) & 0xFF));
  AppendSplitSignature(*root.left, out);
  if (root.right) AppendSplitSignature(*root.right, out);
}

}  // namespace treetok
