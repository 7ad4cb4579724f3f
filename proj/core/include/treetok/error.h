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

#ifndef TREETOK_ERROR_H_
#define TREETOK_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace treetok {

enum class ErrorCode {
  kMalformedLine,
  kNonBinary,
  kSpanMismatch,
  kTokenMismatch,
  kIoFailure,
  kInvalidUtf8,
  kConcatMismatch,
  kTargetBelowCharacterFloor,
  kInsufficientVocabulary,
  kMissingTree,
  kLengthMismatch,
  kCoverageMismatch,
  kInvalidAlpha,
  kInvalidConfig,
};

std::string_view ErrorCodeName(ErrorCode code);

// All domain failures surface as this exception; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace treetok

#endif  // TREETOK_ERROR_H_
