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

#include <iosfwd>

namespace dynot::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kMalformed = 2;
inline constexpr int kSpaceMismatch = 3;
inline constexpr int kInfeasible = 4;
inline constexpr int kNotDConvergent = 5;
inline constexpr int kInconclusive = 6;
inline constexpr int kUnstable = 7;

/// Runs one command line; reports go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dynot::cli
