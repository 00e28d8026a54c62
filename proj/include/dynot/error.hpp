// Copyright 2026 The dynot Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace dynot {

enum class ErrorCode {
  kMetricViolation,
  kUnknownAtom,
  kEmptySet,
  kNotProbability,
  kSpaceMismatch,
  kTooLarge,
  kUnsupportedP,
  kTooManySets,
  kInfeasibleInstance,
  kCasePreconditionViolated,
  kSupportTooLarge,
  kEpsilonTooLarge,
  kNotInvariant,
  kNotInvariantMeasure,
  kMalformedInput,
};

const char* error_code_name(ErrorCode code);

/// The single exception type thrown by the library. Callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dynot
