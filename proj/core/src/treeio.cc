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

#include "treetok/treeio.h"

#include <charconv>
#include <fstream>
#include <iostream>
#include <random>
#include <system_error>
#include <unordered_set>

#include "treetok/error.h"
#include "treetok/utf8.h"

namespace treetok {

namespace {

// Strips one trailing '\r' so CRLF files behave like LF files.
std::string_view StripCr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

class TreeTextParser {
 public:
  explicit TreeTextParser(std::string_view text) : text_(text) {}

  ParseNode Parse() {
    SkipSpaces();
    if (AtEnd()) Fail(ErrorCode::kMalformedLine, "empty tree");
    ParseNode root = ParseSubtree();
    SkipSpaces();
    if (!AtEnd()) {
      Fail(ErrorCode::kMalformedLine, "trailing input after tree");
    }
    return root;
  }

 private:
  bool AtEnd() const { return pos_ >= text_.size(); }
  char Peek() const { return text_[pos_]; }

  void SkipSpaces() {
    while (!AtEnd() && Peek() == ' ') ++pos_;
  }

  [[noreturn]] void Fail(ErrorCode code, const std::string& what) const {
    throw Error(code, what + " at byte " + std::to_string(pos_) + " of '" +
                          std::string(text_) + "'");
  }

  ParseNode ParseSubtree() {
    if (AtEnd()) Fail(ErrorCode::kMalformedLine, "unexpected end of tree");
    const char c = Peek();
    if (c == '(') {
      ++pos_;
      SkipSpaces();
      ParseNode left = ParseSubtree();
      const std::size_t before = pos_;
      SkipSpaces();
      if (AtEnd()) Fail(ErrorCode::kMalformedLine, "unclosed '('");
      if (Peek() == ')') {
        Fail(ErrorCode::kNonBinary, "bracket with a single child");
      }
      if (pos_ == before) Fail(ErrorCode::kMalformedLine, "missing space");
      ParseNode right = ParseSubtree();
      SkipSpaces();
      if (AtEnd()) Fail(ErrorCode::kMalformedLine, "unclosed '('");
      if (Peek() != ')') {
        Fail(ErrorCode::kNonBinary, "bracket with more than two children");
      }
      ++pos_;
      return MakeInternal(std::move(left), std::move(right));
    }
    if (c == ')') Fail(ErrorCode::kMalformedLine, "unbalanced ')'");
    if (c == '\\') {
      ++pos_;
      if (AtEnd()) Fail(ErrorCode::kMalformedLine, "dangling escape");
      const char e = Peek();
      if (e != '(' && e != ')' && e != '\\') {
        Fail(ErrorCode::kMalformedLine, "unknown escape");
      }
      ++pos_;
      return MakeLeaf(next_leaf_++, std::string(1, e));
    }
    std::size_t len = utf8::SequenceLength(static_cast<unsigned char>(c));
    if (pos_ + len > text_.size()) len = text_.size() - pos_;
    std::string ch(text_.substr(pos_, len));
    if (utf8::IsSpace(utf8::Decode(ch))) {
      Fail(ErrorCode::kMalformedLine, "whitespace leaf");
    }
    pos_ += len;
    return MakeLeaf(next_leaf_++, std::move(ch));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t next_leaf_ = 0;
};

void AppendTreeText(const ParseNode& node, std::string& out) {
  if (node.is_leaf()) {
    if (node.token == "(" || node.token == ")" || node.token == "\\") {
      out.push_back('\\');
    }
    out += node.token;
    return;
  }
  out.push_back('(');
  AppendTreeText(*node.left, out);
  out.push_back(' ');
  AppendTreeText(*node.right, out);
  out.push_back(')');
}

void CheckUtf8(std::string_view text, std::uint64_t base_offset) {
  if (auto bad = utf8::FindInvalid(text)) {
    throw Error(ErrorCode::kInvalidUtf8,
                "invalid UTF-8 at byte offset " + std::to_string(base_offset + *bad));
  }
}

template <typename Fn>
void ForEachLine(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  std::uint64_t offset = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::uint64_t line_offset = offset;
    offset += line.size() + 1;
    fn(StripCr(line), line_no, line_offset);
  }
  if (in.bad()) throw Error(ErrorCode::kIoFailure, "read error");
}

std::string WithLine(const Error& e, std::size_t line_no) {
  return "line " + std::to_string(line_no) + ": " + e.what();
}

}  // namespace

ParseNode ParseTreeText(std::string_view text) {
  return TreeTextParser(text).Parse();
}

std::string SerializeTreeText(const ParseNode& root) {
  std::string out;
  out.reserve(root.token.size() * 4);
  AppendTreeText(root, out);
  return out;
}

TreeRecord ParseTreeRecord(std::string_view line) {
  line = StripCr(line);
  CheckUtf8(line, 0);
  const auto tab = line.find('\t');
  if (tab == std::string_view::npos) {
    throw Error(ErrorCode::kMalformedLine, "no tab in '" + std::string(line) + "'");
  }
  const std::string_view word = line.substr(0, tab);
  if (word.empty() || utf8::ContainsSpace(word)) {
    throw Error(ErrorCode::kMalformedLine,
                "word is empty or contains whitespace: '" + std::string(word) + "'");
  }
  TreeRecord rec{std::string(word), ParseTreeText(line.substr(tab + 1))};
  RequireValidTree(rec.tree, rec.word);
  return rec;
}

std::string SerializeTree(const TreeRecord& record) {
  return record.word + "\t" + SerializeTreeText(record.tree);
}

std::vector<TreeRecord> ReadTrees(std::istream& in) {
  std::vector<TreeRecord> records;
  ForEachLine(in, [&](std::string_view line, std::size_t line_no, std::uint64_t) {
    if (line.empty()) return;
    try {
      records.push_back(ParseTreeRecord(line));
    } catch (const Error& e) {
      throw Error(e.code(), WithLine(e, line_no));
    }
  });
  return records;
}

std::vector<TreeRecord> LoadTrees(const std::filesystem::path& path) {
  InputFile file(path);
  return ReadTrees(file.stream());
}

void WriteTrees(std::ostream& out, const std::vector<TreeRecord>& records) {
  for (const auto& rec : records) out << SerializeTree(rec) << '\n';
}

CorpusStats ReadCorpus(std::istream& in, bool lowercase) {
  CorpusStats stats;
  ForEachLine(in, [&](std::string_view line, std::size_t, std::uint64_t offset) {
    CheckUtf8(line, offset);
    const auto words = utf8::SplitWhitespace(line);
    if (words.empty()) return;
    ++stats.sentences;
    for (std::string_view w : words) {
      if (lowercase) {
        ++stats.word_freq[utf8::ToLower(w)];
      } else {
        auto it = stats.word_freq.find(w);
        if (it == stats.word_freq.end()) {
          stats.word_freq.emplace(std::string(w), 1);
        } else {
          ++it->second;
        }
      }
      ++stats.total_words;
    }
  });
  return stats;
}

CorpusStats LoadCorpus(const std::filesystem::path& path, bool lowercase) {
  InputFile file(path);
  return ReadCorpus(file.stream(), lowercase);
}

GoldSegmentation ParseGoldLine(std::string_view line) {
  line = StripCr(line);
  CheckUtf8(line, 0);
  const auto tab = line.find('\t');
  if (tab == std::string_view::npos) {
    throw Error(ErrorCode::kMalformedLine, "no tab in '" + std::string(line) + "'");
  }
  GoldSegmentation gold;
  gold.word = std::string(line.substr(0, tab));
  if (gold.word.empty() || utf8::ContainsSpace(gold.word)) {
    throw Error(ErrorCode::kMalformedLine, "bad gold word '" + gold.word + "'");
  }
  std::string_view analysis = line.substr(tab + 1);
  if (const auto comma = analysis.find(','); comma != std::string_view::npos) {
    analysis = analysis.substr(0, comma);
  }
  std::string joined;
  for (std::string_view m : utf8::SplitWhitespace(analysis)) {
    gold.morphs.emplace_back(m);
    joined += m;
  }
  if (gold.morphs.empty()) {
    throw Error(ErrorCode::kMalformedLine, "no morphs for '" + gold.word + "'");
  }
  if (joined != gold.word) {
    throw Error(ErrorCode::kConcatMismatch,
                "morphs spell '" + joined + "' but word is '" + gold.word + "'");
  }
  return gold;
}

std::vector<GoldSegmentation> ReadGold(std::istream& in) {
  std::vector<GoldSegmentation> golds;
  ForEachLine(in, [&](std::string_view line, std::size_t line_no, std::uint64_t) {
    if (line.empty()) return;
    try {
      golds.push_back(ParseGoldLine(line));
    } catch (const Error& e) {
      throw Error(e.code(), WithLine(e, line_no));
    }
  });
  return golds;
}

std::vector<GoldSegmentation> LoadGold(const std::filesystem::path& path) {
  InputFile file(path);
  return ReadGold(file.stream());
}

void WriteVocabulary(std::ostream& out, const Vocabulary& vocab) {
  for (const auto& [token, count] : vocab.SortedEntries()) {
    out << token << '\t' << count << '\n';
  }
}

Vocabulary ReadVocabulary(std::istream& in) {
  Vocabulary vocab;
  ForEachLine(in, [&](std::string_view line, std::size_t line_no, std::uint64_t offset) {
    if (line.empty()) return;
    CheckUtf8(line, offset);
    const auto tab = line.find('\t');
    const auto fail = [&](const std::string& what) {
      throw Error(ErrorCode::kMalformedLine,
                  "line " + std::to_string(line_no) + ": " + what);
    };
    if (tab == std::string_view::npos || tab == 0) fail("expected token<TAB>count");
    const std::string_view token = line.substr(0, tab);
    const std::string_view count_text = line.substr(tab + 1);
    std::uint64_t count = 0;
    const auto [end, ec] =
        std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
    if (ec != std::errc() || end != count_text.data() + count_text.size()) {
      fail("bad count '" + std::string(count_text) + "'");
    }
    if (vocab.Contains(token)) fail("duplicate token '" + std::string(token) + "'");
    vocab.Set(token, count);
  });
  return vocab;
}

Vocabulary LoadVocabulary(const std::filesystem::path& path) {
  InputFile file(path);
  return ReadVocabulary(file.stream());
}

InputFile::InputFile(const std::filesystem::path& path) {
  if (path == "-") {
    stream_ = &std::cin;
    return;
  }
  auto file = std::make_unique<std::ifstream>(path, std::ios::binary);
  if (!*file) {
    throw Error(ErrorCode::kIoFailure, "cannot open '" + path.string() + "'");
  }
  owned_ = std::move(file);
  stream_ = owned_.get();
}

AtomicOutputFile::AtomicOutputFile(const std::filesystem::path& path) : path_(path) {
  if (path == "-") {
    stream_ = &std::cout;
    return;
  }
  std::random_device rd;
  temp_path_ = path;
  temp_path_ += ".tmp." + std::to_string(rd());
  auto file = std::make_unique<std::ofstream>(temp_path_, std::ios::binary | std::ios::trunc);
  if (!*file) {
    throw Error(ErrorCode::kIoFailure, "cannot write '" + temp_path_.string() + "'");
  }
  owned_ = std::move(file);
  stream_ = owned_.get();
}

AtomicOutputFile::~AtomicOutputFile() {
  if (!committed_ && owned_) {
    owned_.reset();
    std::error_code ec;
    std::filesystem::remove(temp_path_, ec);
  }
}

void AtomicOutputFile::Commit() {
  if (committed_) return;
  stream_->flush();
  if (!*stream_) throw Error(ErrorCode::kIoFailure, "write failed for '" + path_.string() + "'");
  committed_ = true;
  if (!owned_) return;
  owned_.reset();
  std::error_code ec;
  std::filesystem::rename(temp_path_, path_, ec);
  if (ec) {
    std::filesystem::remove(temp_path_, ec);
    throw Error(ErrorCode::kIoFailure, "cannot rename onto '" + path_.string() + "'");
  }
}

}  // namespace treetok
