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

#include "dynot/rational.hpp"

#include "dynot/error.hpp"

namespace dynot {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMetricViolation: return "MetricViolation";
    case ErrorCode::kUnknownAtom: return "UnknownAtom";
    case ErrorCode::kEmptySet: return "EmptySet";
    case ErrorCode::kNotProbability: return "NotProbability";
    case ErrorCode::kSpaceMismatch: return "SpaceMismatch";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kUnsupportedP: return "UnsupportedP";
    case ErrorCode::kTooManySets: return "TooManySets";
    case ErrorCode::kInfeasibleInstance: return "InfeasibleInstance";
    case ErrorCode::kCasePreconditionViolated: return "CasePreconditionViolated";
    case ErrorCode::kSupportTooLarge: return "SupportTooLarge";
    case ErrorCode::kEpsilonTooLarge: return "EpsilonTooLarge";
    case ErrorCode::kNotInvariant: return "NotInvariant";
    case ErrorCode::kNotInvariantMeasure: return "NotInvariantMeasure";
    case ErrorCode::kMalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den <= 0) {
    throw Error(ErrorCode::kMalformedInput, "denominator must be positive, got " + std::to_string(den));
  }
  Rational r(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  Rational r;
  const std::string s(text);
  if (s.empty() || r.set_str(s, 10) != 0) {
    throw Error(ErrorCode::kMalformedInput, "not a rational: '" + s + "'");
  }
  if (r.get_den() == 0) throw Error(ErrorCode::kMalformedInput, "zero denominator: '" + s + "'");
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

double to_double(const Rational& value) { return value.get_d(); }

}  // namespace dynot
