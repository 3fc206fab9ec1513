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
#include <optional>
#include <vector>

#include "exactce/incentive.hpp"
#include "exactce/rational.hpp"

namespace exactce {

/// The restricted program: U' x' >= 0, x' >= 0, 1^T x' = 1, where the
/// columns of U' are the incentive columns of the collected profiles.
struct CutLP {
  size_t n_rows = 0;
  std::vector<ColumnSlice> columns;

  /// Adds the column unless its profile is already present.
  bool add(ColumnSlice c);
};

bool is_feasible(const CutLP& lp);

/// A vertex of the restricted program as a distribution over the collected profiles. Atoms are
/// listed in column order and only positive weights are kept. Throws
/// InvalidArgument if the restricted program is infeasible.
SparseCE feasible_bfs(const CutLP& lp);

/// Dense-column version shared by the product-mixture program: finds a vertex
/// weight vector a >= 0, sum a = 1, sum_l a_l col_l >= 0, or nothing.
std::optional<std::vector<Rational>> convex_feasible_point(const std::vector<std::vector<Rational>>& columns,
                                                           size_t n_rows);

struct MinViolation {
  std::vector<Rational> weights;
  Rational epsilon;  // max(0, -min_r sum_l a_l col_l[r]) at the optimum
};

/// Minimizes the worst-row violation over convex weights on the columns.
MinViolation min_violation_mixture(const std::vector<std::vector<Rational>>& columns, size_t n_rows);

}  // namespace exactce
