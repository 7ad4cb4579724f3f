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

#ifndef TREETOK_UTF8_H_
#define TREETOK_UTF8_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace treetok::utf8 {

// Byte offset of the first ill-formed sequence, or nullopt if `text` is valid.
std::optional<std::size_t> FindInvalid(std::string_view text);

// Length in bytes of the sequence starting with lead byte `c` (1 for
// anything that is not a valid lead byte).
std::size_t SequenceLength(unsigned char c);

// Splits valid UTF-8 into one view per Unicode scalar value.
std::vector<std::string_view> SplitChars(std::string_view text);

std::size_t CharCount(std::string_view text);

char32_t Decode(std::string_view one_char);
std::string Encode(char32_t cp);

bool IsSpace(char32_t cp);

// Splits on runs of Unicode whitespace; no empty pieces are returned.
std::vector<std::string_view> SplitWhitespace(std::string_view text);

bool ContainsSpace(std::string_view text);

// Simple case folding: ASCII, Latin-1, Latin Extended-A, Greek and Cyrillic.
std::string ToLower(std::string_view text);

}  // namespace treetok::utf8

#endif  // TREETOK_UTF8_H_
