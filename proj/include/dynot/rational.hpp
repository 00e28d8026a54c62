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

// Exact masses. Weights, plan entries and decomposition components are all
// rationals; only distances are floating point.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace dynot {

using Rational = mpq_class;

/// num/den in canonical form. Throws Error(kMalformedInput) when den <= 0.
Rational make_rational(std::int64_t num, std::int64_t den);

/// Accepts "p/q", "p" or a decimal-free integer string.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

}  // namespace dynot
