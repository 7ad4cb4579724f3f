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

#ifndef TREETOK_TREEIO_H_
#define TREETOK_TREEIO_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "treetok/parse_tree.h"
#include "treetok/vocabulary.h"

namespace treetok {

// One line of a trees file: `word<TAB>tree`.
struct TreeRecord {
  std::string word;
  ParseNode tree;
};

struct CorpusStats {
  StringMap<std::uint64_t> word_freq;
  std::size_t sentences = 0;
  std::uint64_t total_words = 0;
};

// Surface segmentation: morphs concatenate to the word.
struct GoldSegmentation {
  std::string word;
  std::vector<std::string> morphs;
};

// Tree grammar: TREE := CHAR | "(" TREE " " TREE ")". Leaves are single
// Unicode scalar values; `(`, `)` and `\` are written `\(`, `\)`, `\\`.
// Runs of spaces between subtrees are accepted on input.
ParseNode ParseTreeText(std::string_view text);
std::string SerializeTreeText(const ParseNode& root);

TreeRecord ParseTreeRecord(std::string_view line);
std::string SerializeTree(const TreeRecord& record);

std::vector<TreeRecord> ReadTrees(std::istream& in);
std::vector<TreeRecord> LoadTrees(const std::filesystem::path& path);
void WriteTrees(std::ostream& out, const std::vector<TreeRecord>& records);

CorpusStats ReadCorpus(std::istream& in, bool lowercase);
CorpusStats LoadCorpus(const std::filesystem::path& path, bool lowercase);

// `word<TAB>morph1 morph2 ...`; comma-separated alternative analyses are
// reduced to the first.
GoldSegmentation ParseGoldLine(std::string_view line);
std::vector<GoldSegmentation> ReadGold(std::istream& in);
std::vector<GoldSegmentation> LoadGold(const std::filesystem::path& path);

// `token<TAB>count`, descending count, ties lexicographic.
void WriteVocabulary(std::ostream& out, const Vocabulary& vocab);
Vocabulary ReadVocabulary(std::istream& in);
Vocabulary LoadVocabulary(const std::filesystem::path& path);

// Opens `path` for reading, "-" meaning standard input. Throws kIoFailure.
class InputFile {
 public:
  explicit InputFile(const std::filesystem::path& path);
  std::istream& stream() { return *stream_; }

 private:
  std::unique_ptr<std::istream> owned_;
  std::istream* stream_ = nullptr;
};

// Writes to a sibling temporary and renames onto `path` on Commit(); an
// uncommitted file is removed on destruction. "-" writes to standard output.
class AtomicOutputFile {
 public:
  explicit AtomicOutputFile(const std::filesystem::path& path);
  ~AtomicOutputFile();
  AtomicOutputFile(const AtomicOutputFile&) = delete;
  AtomicOutputFile& operator=(const AtomicOutputFile&) = delete;

  std::ostream& stream() { return *stream_; }
  void Commit();

 private:
  std::filesystem::path path_;
  std::filesystem::path temp_path_;
  std::unique_ptr<std::ostream> owned_;
  std::ostream* stream_ = nullptr;
  bool committed_ = false;
};

}  // namespace treetok

#endif  // TREETOK_TREEIO_H_
