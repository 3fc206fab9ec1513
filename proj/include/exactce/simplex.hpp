// Copyright 2026 The exactce Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <vector>

#include "exactce/rational.hpp"

namespace exactce::simplex {

/// minimize c^T x  subject to  A x = b, x >= 0. An empty `c` asks for any
/// feasible basic solution.
struct Problem {
  std::vector<std::vector<Rational>> a;  // row-major, rows x vars
  std::vector<Rational> b;
  std::vector<Rational> c;
  size_t num_vars = 0;
};

enum class Status { kOptimal, kInfeasible, kUnbounded };

struct Solution {
  Status status = Status::kInfeasible;
  std::vector<Rational> x;   // basic feasible solution, length num_vars
  Rational objective;
  std::vector<size_t> basis;  // indices >= num_vars are leftover artificials
  size_t pivots = 0;
};

/// Two-phase tableau simplex in exact arithmetic with Bland's anti-cycling
/// rule, so the result is deterministic and always a vertex.
Solution solve(const Problem& problem);

}  // namespace exactce::simplex
