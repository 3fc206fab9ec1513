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

#include "exactce/lp.hpp"

#include <algorithm>
#include <set>

#include "exactce/error.hpp"
#include "exactce/simplex.hpp"

namespace exactce {
namespace {

// Rows where every column is zero are trivially satisfied and dropped.
std::vector<size_t> live_rows(const std::vector<std::vector<Rational>>& columns, size_t n_rows) {
  std::vector<size_t> rows;
  for (size_t r = 0; r < n_rows; ++r) {
    for (const auto& col : columns) {
      if (sgn(col[r]) != 0) {
        rows.push_back(r);
        break;
      }
    }
  }
  return rows;
}

// Positive factor c with c * col a primitive integer vector.
Rational integer_scale(const std::vector<Rational>& col) {
  Integer lcm = 1;
  for (const auto& v : col) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
  Integer content = 0;
  for (const auto& v : col) {
    if (sgn(v) == 0) continue;
    const Integer e = v.get_num() * (lcm / v.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), e.get_mpz_t());
  }
  if (content == 0) content = 1;
  Rational c(lcm, content);
  c.canonicalize();
  return c;
}

// Variables: b_l = a_l / c_l for the L columns, then one surplus per live row.
// Rows: sum_l (c_l col_l[r]) b_l - w_r = 0 per live row, then sum_l c_l b_l = 1.
// Scaling columns to integers keeps every tableau row free of mixed
// denominators; the diagonal change of variables maps vertices to vertices.
simplex::Problem build_program(const std::vector<std::vector<Rational>>& columns, const std::vector<size_t>& rows,
                               std::vector<Rational>& scale) {
  const size_t L = columns.size();
  scale.clear();
  for (const auto& col : columns) scale.push_back(integer_scale(col));
  simplex::Problem prob;
  prob.num_vars = L + rows.size();
  for (size_t k = 0; k < rows.size(); ++k) {
    std::vector<Rational> a(prob.num_vars, Rational(0));
    for (size_t l = 0; l < L; ++l) a[l] = scale[l] * columns[l][rows[k]];
    a[L + k] = -1;
    prob.a.push_back(std::move(a));
    prob.b.emplace_back(0);
  }
  std::vector<Rational> sum(prob.num_vars, Rational(0));
  for (size_t l = 0; l < L; ++l) sum[l] = scale[l];
  prob.a.push_back(std::move(sum));
  prob.b.emplace_back(1);
  return prob;
}

std::vector<Rational> unscale(const std::vector<Rational>& x, const std::vector<Rational>& scale) {
  std::vector<Rational> out;
  out.reserve(scale.size());
  for (size_t l = 0; l < scale.size(); ++l) out.push_back(x[l] * scale[l]);
  return out;
}

std::vector<std::vector<Rational>> densify(const CutLP& lp, std::vector<size_t>* kept = nullptr) {
  std::vector<std::vector<Rational>> cols;
  std::set<PureProfile> seen;
  for (size_t l = 0; l < lp.columns.size(); ++l) {
    if (!seen.insert(lp.columns[l].profile).second) continue;
    cols.push_back(lp.columns[l].dense(lp.n_rows));
    if (kept) kept->push_back(l);
  }
  return cols;
}

}  // namespace

bool CutLP::add(ColumnSlice c) {
  for (const auto& existing : columns) {
    if (existing.profile == c.profile) return false;
  }
  columns.push_back(std::move(c));
  return true;
}

std::optional<std::vector<Rational>> convex_feasible_point(const std::vector<std::vector<Rational>>& columns,
                                                           size_t n_rows) {
  if (columns.empty()) return std::nullopt;
  for (const auto& c : columns) {
    if (c.size() != n_rows) throw InvalidArgument("column length does not match row count");
  }
  const auto rows = live_rows(columns, n_rows);
  std::vector<Rational> scale;
  const auto sol = simplex::solve(build_program(columns, rows, scale));
  if (sol.status != simplex::Status::kOptimal) return std::nullopt;
  return unscale(sol.x, scale);
}

bool is_feasible(const CutLP& lp) { return convex_feasible_point(densify(lp), lp.n_rows).has_value(); }

SparseCE feasible_bfs(const CutLP& lp) {
  std::vector<size_t> kept;
  const auto cols = densify(lp, &kept);
  const auto weights = convex_feasible_point(cols, lp.n_rows);
  if (!weights) throw InvalidArgument("restricted CE program is infeasible");
  SparseCE ce;
  for (size_t k = 0; k < kept.size(); ++k) {
    if (sgn((*weights)[k]) > 0) ce.atoms.push_back({lp.columns[kept[k]].profile, (*weights)[k]});
  }
  return ce;
}

MinViolation min_violation_mixture(const std::vector<std::vector<Rational>>& columns, size_t n_rows) {
  if (columns.empty()) throw InvalidArgument("no columns to mix");
  for (const auto& c : columns) {
    if (c.size() != n_rows) throw InvalidArgument("column length does not match row count");
  }
  const auto rows = live_rows(columns, n_rows);
  // Add t >= 0 so that each live row reads sum_l col_l[r] a_l + t - w_r = 0.
  std::vector<Rational> scale;
  simplex::Problem prob = build_program(columns, rows, scale);
  const size_t t = prob.num_vars++;
  for (size_t k = 0; k < prob.a.size(); ++k) prob.a[k].push_back(k < rows.size() ? Rational(1) : Rational(0));
  prob.c.assign(prob.num_vars, Rational(0));
  prob.c[t] = 1;
  const auto sol = simplex::solve(prob);
  if (sol.status != simplex::Status::kOptimal) throw InternalError("min-violation mixture program failed");
  MinViolation out;
  out.weights = unscale(sol.x, scale);
  out.epsilon = sol.x[t];
  return out;
}

}  // namespace exactce
