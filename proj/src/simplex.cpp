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

#include "exactce/simplex.hpp"

#include "exactce/error.hpp"

namespace exactce::simplex {
namespace {

// Multiplies a rational row by the least common denominator, then divides by
// the content, so the row spans the same constraint with integer entries.
std::vector<Integer> integer_row(const std::vector<Rational>& row) {
  Integer lcm = 1;
  for (const auto& v : row) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
  std::vector<Integer> out;
  out.reserve(row.size());
  Integer content = 0;
  for (const auto& v : row) {
    Integer e = v.get_num() * (lcm / v.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), e.get_mpz_t());
    out.push_back(std::move(e));
  }
  if (content > 1) {
    for (auto& e : out) mpz_divexact(e.get_mpz_t(), e.get_mpz_t(), content.get_mpz_t());
  }
  return out;
}

// Fraction-free tableau: the true tableau is rows_ / det_, with det_ > 0 the
// determinant of the current basis. Pivots use exact integer division, which
// keeps entries as basis minors and avoids rational gcd work.
class Tableau {
 public:
  // Columns: [0, n) structural, [n, n + m) artificial, last one is the RHS.
  explicit Tableau(const Problem& p) : m_(p.b.size()), n_(p.num_vars), width_(p.num_vars + p.b.size() + 1) {
    rows_.assign(m_ + 1, std::vector<Integer>(width_, Integer(0)));
    basis_.resize(m_);
    for (size_t r = 0; r < m_; ++r) {
      if (p.a[r].size() != n_) throw InvalidArgument("constraint row has wrong width");
      std::vector<Rational> full(p.a[r]);
      full.push_back(p.b[r]);
      auto ints = integer_row(full);
      const bool flip = sgn(ints.back()) < 0;
      for (size_t k = 0; k < n_; ++k) rows_[r][k] = flip ? Integer(-ints[k]) : ints[k];
      rows_[r][n_ + r] = 1;
      rows_[r][width_ - 1] = flip ? Integer(-ints.back()) : ints.back();
      basis_[r] = n_ + r;
    }
  }

  // Installs reduced costs det * (c - c_B B^-1 A); `cost` must be integral.
  void set_objective(const std::vector<Integer>& cost) {
    auto& obj = rows_[m_];
    for (size_t k = 0; k < width_; ++k) obj[k] = k < cost.size() ? Integer(det_ * cost[k]) : Integer(0);
    for (size_t r = 0; r < m_; ++r) {
      const size_t b = basis_[r];
      if (b >= cost.size() || sgn(cost[b]) == 0) continue;
      for (size_t k = 0; k < width_; ++k) {
        if (sgn(rows_[r][k]) != 0) obj[k] -= cost[b] * rows_[r][k];
      }
    }
  }

  // Bland's rule. Returns false when unbounded; `allowed` bounds entering columns.
  bool optimize(size_t allowed, size_t& pivots) {
    while (true) {
      const auto& obj = rows_[m_];
      size_t enter = allowed;
      for (size_t k = 0; k < allowed; ++k) {
        if (sgn(obj[k]) < 0) {
          enter = k;
          break;
        }
      }
      if (enter == allowed) return true;
      size_t leave = m_;
      for (size_t r = 0; r < m_; ++r) {
        if (sgn(rows_[r][enter]) <= 0) continue;
        if (leave == m_) {
          leave = r;
          continue;
        }
        // rhs_r / a_r versus rhs_leave / a_leave, denominators positive.
        const int cmp = ::cmp(rows_[r][width_ - 1] * rows_[leave][enter], rows_[leave][width_ - 1] * rows_[r][enter]);
        if (cmp < 0 || (cmp == 0 && basis_[r] < basis_[leave])) leave = r;
      }
      if (leave == m_) return false;
      pivot(leave, enter);
      ++pivots;
    }
  }

  void pivot(size_t r, size_t k) {
    const Integer piv = rows_[r][k];
    Integer tmp;
    for (size_t o = 0; o <= m_; ++o) {
      if (o == r) continue;
      auto& row = rows_[o];
      const Integer f = row[k];
      for (size_t c = 0; c < width_; ++c) {
        // row[c] = (piv * row[c] - f * pivot_row[c]) / det
        mpz_mul(row[c].get_mpz_t(), row[c].get_mpz_t(), piv.get_mpz_t());
        if (sgn(f) != 0 && sgn(rows_[r][c]) != 0) {
          mpz_mul(tmp.get_mpz_t(), f.get_mpz_t(), rows_[r][c].get_mpz_t());
          mpz_sub(row[c].get_mpz_t(), row[c].get_mpz_t(), tmp.get_mpz_t());
        }
        if (det_ != 1) mpz_divexact(row[c].get_mpz_t(), row[c].get_mpz_t(), det_.get_mpz_t());
      }
    }
    det_ = piv;
    if (sgn(det_) < 0) {
      for (auto& row : rows_) {
        for (auto& v : row) v = -v;
      }
      det_ = -det_;
    }
    basis_[r] = k;
  }

  // Pivots basic artificials out wherever a structural column allows it.
  void expel_artificials(size_t& pivots) {
    for (size_t r = 0; r < m_; ++r) {
      if (basis_[r] < n_) continue;
      for (size_t k = 0; k < n_; ++k) {
        if (sgn(rows_[r][k]) != 0) {
          pivot(r, k);
          ++pivots;
          break;
        }
      }
    }
  }

  bool objective_is_zero() const { return sgn(rows_[m_][width_ - 1]) == 0; }

  std::vector<Rational> primal() const {
    std::vector<Rational> x(n_, Rational(0));
    for (size_t r = 0; r < m_; ++r) {
      if (basis_[r] < n_) {
        x[basis_[r]] = Rational(rows_[r][width_ - 1], det_);
        x[basis_[r]].canonicalize();
      }
    }
    return x;
  }

  const std::vector<size_t>& basis() const { return basis_; }

 private:
  size_t m_, n_, width_;
  std::vector<std::vector<Integer>> rows_;
  std::vector<size_t> basis_;
  Integer det_ = 1;
};

}  // namespace

Solution solve(const Problem& problem) {
  if (problem.a.size() != problem.b.size()) throw InvalidArgument("row count mismatch between A and b");
  if (!problem.c.empty() && problem.c.size() != problem.num_vars) throw InvalidArgument("cost vector has wrong length");
  const size_t m = problem.b.size();
  const size_t n = problem.num_vars;
  Tableau t(problem);
  Solution sol;

  std::vector<Integer> phase1(n + m, Integer(0));
  for (size_t r = 0; r < m; ++r) phase1[n + r] = 1;
  t.set_objective(phase1);
  if (!t.optimize(n + m, sol.pivots)) throw InternalError("phase-1 simplex reported unbounded");
  if (!t.objective_is_zero()) {
    sol.status = Status::kInfeasible;
    return sol;
  }
  t.expel_artificials(sol.pivots);

  if (!problem.c.empty()) {
    // A positive rescaling of the cost leaves the optimal vertex unchanged.
    t.set_objective(integer_row(problem.c));
    // Artificials are never allowed to re-enter.
    if (!t.optimize(n, sol.pivots)) {
      sol.status = Status::kUnbounded;
      return sol;
    }
  }
  sol.status = Status::kOptimal;
  sol.x = t.primal();
  sol.basis = t.basis();
  sol.objective = 0;
  if (!problem.c.empty()) {
    for (size_t k = 0; k < n; ++k) sol.objective += problem.c[k] * sol.x[k];
  }
  return sol;
}

}  // namespace exactce::simplex
