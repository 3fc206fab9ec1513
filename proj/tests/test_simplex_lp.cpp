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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>
#include <optional>

#include "exactce/lp.hpp"
#include "exactce/simplex.hpp"
#include "exactce/solver.hpp"
#include "support.hpp"

using namespace exactce;
namespace t = exactce::testing;

namespace {

using Vec = std::vector<Rational>;
using Mat = std::vector<Vec>;

// Solves the square system m z = rhs; nullopt when singular.
std::optional<Vec> solve_square(Mat m, Vec rhs) {
  const size_t n = rhs.size();
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(m[piv], m[c]);
    std::swap(rhs[piv], rhs[c]);
    for (size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[c][c];
      for (size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  Vec z(n);
  for (size_t i = 0; i < n; ++i) z[i] = rhs[i] / m[i][i];
  return z;
}

// Feasibility of {a >= 0, sum a = 1, sum_l a_l col_l >= 0} by trying every
// candidate vertex: sum a = 1 plus L-1 tight inequalities.
bool feasible_by_vertices(const Mat& cols, size_t n_rows) {
  const size_t l = cols.size();
  Mat ineq;
  for (size_t k = 0; k < l; ++k) {
    Vec e(l);
    e[k] = 1;
    ineq.push_back(e);
  }
  for (size_t r = 0; r < n_rows; ++r) {
    Vec row(l);
    for (size_t k = 0; k < l; ++k) row[k] = cols[k][r];
    ineq.push_back(row);
  }
  std::vector<size_t> pick(l - 1);
  std::function<bool(size_t, size_t)> rec = [&](size_t depth, size_t start) -> bool {
    if (depth == l - 1) {
      Mat m{Vec(l, Rational(1))};
      Vec rhs{Rational(1)};
      for (size_t i : pick) {
        m.push_back(ineq[i]);
        rhs.push_back(0);
      }
      const auto z = solve_square(m, rhs);
      if (!z) return false;
      for (const auto& row : ineq) {
        Rational v = 0;
        for (size_t k = 0; k < l; ++k) v += row[k] * (*z)[k];
        if (v < 0) return false;
      }
      return true;
    }
    for (size_t i = start; i < ineq.size(); ++i) {
      pick[depth] = i;
      if (rec(depth + 1, i + 1)) return true;
    }
    return false;
  };
  return rec(0, 0);
}

Rational value(const Vec& c, const Vec& x) {
  Rational v = 0;
  for (size_t i = 0; i < c.size(); ++i) v += c[i] * x[i];
  return v;
}

}  // namespace

TEST_CASE("simplex solves a small program to optimality") {
  // min -x0 - x1 s.t. x0 + 2x1 + s0 = 4, 3x0 + x1 + s1 = 6
  simplex::Problem p;
  p.num_vars = 4;
  p.a = {{1, 2, 1, 0}, {3, 1, 0, 1}};
  p.b = {4, 6};
  p.c = {-1, -1, 0, 0};
  const auto sol = simplex::solve(p);
  REQUIRE(sol.status == simplex::Status::kOptimal);
  CHECK(sol.x[0] == Rational(8, 5));
  CHECK(sol.x[1] == Rational(6, 5));
  CHECK(sol.objective == Rational(-14, 5));
}

TEST_CASE("simplex detects infeasible and unbounded programs") {
  simplex::Problem inf;
  inf.num_vars = 2;
  inf.a = {{1, 1}, {1, 1}};
  inf.b = {1, 2};
  CHECK(simplex::solve(inf).status == simplex::Status::kInfeasible);

  simplex::Problem unb;
  unb.num_vars = 2;
  unb.a = {{1, -1}};
  unb.b = {1};
  unb.c = {0, -1};
  CHECK(simplex::solve(unb).status == simplex::Status::kUnbounded);
}

TEST_CASE("simplex handles redundant rows and rational data") {
  simplex::Problem p;
  p.num_vars = 3;
  p.a = {{Rational(1, 2), Rational(1, 3), 1}, {1, Rational(2, 3), 2}};
  p.b = {Rational(1, 6), Rational(1, 3)};
  const auto sol = simplex::solve(p);
  REQUIRE(sol.status == simplex::Status::kOptimal);
  CHECK(value(p.a[0], sol.x) == p.b[0]);
  for (const auto& v : sol.x) CHECK(v >= 0);
}

TEST_CASE("cut program trivial cases") {
  const Game constant = Game::normal_form({2, 2}, {std::vector<Integer>(4, 0), std::vector<Integer>(4, 0)});
  CutLP lp{8, {}};
  CHECK(lp.add(column(constant, {{1, 1}})));
  CHECK(is_feasible(lp));
  auto ce = feasible_bfs(lp);
  REQUIRE(ce.atoms.size() == 1);
  CHECK(ce.atoms[0].prob == 1);

  CHECK_FALSE(lp.add(column(constant, {{1, 1}})));
  lp.columns.push_back(column(constant, {{0, 0}}));
  ce = feasible_bfs(lp);
  CHECK(ce.support_size() == 1);

  const Game one = Game::normal_form({2}, {{5, 3}});
  CutLP bad{4, {column(one, {{1}})}};
  CHECK_FALSE(is_feasible(bad));
  CHECK_THROWS(feasible_bfs(bad));
}

TEST_CASE("all columns of a game are always feasible") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const auto family = seed % 2 ? GameFamily::kNormalForm : GameFamily::kPolymatrix;
    const Game g = t::random_game_of(family, 2 + static_cast<int>(seed % 3), 2, 10, seed);
    CutLP lp{RowSpace(g.actions()).size(), {}};
    for (const auto& s : all_profiles(g)) lp.add(column(g, s));
    REQUIRE(is_feasible(lp));
    const auto ce = feasible_bfs(lp);
    CHECK(verify_ce(g, ce).verdict);
    CHECK(ce.support_size() <= support_bound(g));
  }
}

TEST_CASE("feasibility agrees with vertex enumeration") {
  std::mt19937_64 rng(99);
  int feasible = 0;
  int infeasible = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const size_t l = 1 + trial % 6;
    const size_t n = 1 + (trial / 6) % 8;
    Mat cols(l, Vec(n));
    std::uniform_int_distribution<int> v(-4, 3);
    for (auto& c : cols) {
      for (auto& e : c) e = v(rng);
    }
    const bool brute = feasible_by_vertices(cols, n);
    const auto point = convex_feasible_point(cols, n);
    CHECK(point.has_value() == brute);
    if (point) {
      ++feasible;
      Rational total = 0;
      for (const auto& a : *point) {
        CHECK(a >= 0);
        total += a;
      }
      CHECK(total == 1);
      for (size_t r = 0; r < n; ++r) {
        Rational acc = 0;
        for (size_t k = 0; k < l; ++k) acc += (*point)[k] * cols[k][r];
        CHECK(acc >= 0);
      }
    } else {
      ++infeasible;
    }
  }
  CHECK(feasible > 0);
  CHECK(infeasible > 0);
}

TEST_CASE("basic solutions are vertices") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Game g = t::random_game_of(GameFamily::kNormalForm, 2, 3, 10, seed);
    const size_t n = RowSpace(g.actions()).size();
    CutLP lp{n, {}};
    for (const auto& s : all_profiles(g)) lp.add(column(g, s));
    const auto ce = feasible_bfs(lp);
    // Active constraints at the solution must pin it down uniquely.
    const size_t l = lp.columns.size();
    Vec x(l);
    for (const auto& a : ce.atoms) {
      for (size_t k = 0; k < l; ++k) {
        if (lp.columns[k].profile == a.profile) x[k] = a.prob;
      }
    }
    Mat active{Vec(l, Rational(1))};
    for (size_t k = 0; k < l; ++k) {
      if (x[k] == 0) {
        Vec e(l);
        e[k] = 1;
        active.push_back(e);
      }
    }
    for (size_t r = 0; r < n; ++r) {
      Vec row(l);
      Rational acc = 0;
      for (size_t k = 0; k < l; ++k) {
        row[k] = lp.columns[k].dense(n)[r];
        acc += row[k] * x[k];
      }
      if (acc == 0) active.push_back(row);
    }
    // Rank of the active set equals l.
    size_t rank = 0;
    for (size_t c = 0; c < l && rank < active.size(); ++c) {
      size_t piv = rank;
      while (piv < active.size() && active[piv][c] == 0) ++piv;
      if (piv == active.size()) continue;
      std::swap(active[piv], active[rank]);
      for (size_t r = 0; r < active.size(); ++r) {
        if (r == rank || active[r][c] == 0) continue;
        const Rational f = active[r][c] / active[rank][c];
        for (size_t k = c; k < l; ++k) active[r][k] -= f * active[rank][k];
      }
      ++rank;
    }
    CHECK(rank == l);
  }
}

TEST_CASE("min-violation mixture reports exact epsilon") {
  const Mat cols{{-2, 1}, {1, -2}};
  const auto mv = min_violation_mixture(cols, 2);
  CHECK(mv.epsilon == Rational(1, 2));
  CHECK(mv.weights[0] == Rational(1, 2));
  const Mat ok{{0, 1}};
  CHECK(min_violation_mixture(ok, 2).epsilon == 0);
}

TEST_CASE("brute-force CE on small games") {
  const Game pennies = Game::normal_form({2, 2}, {{1, 0, 0, 1}, {0, 1, 1, 0}});
  const auto ce = brute_force_ce(pennies);
  CHECK(verify_ce(pennies, ce).verdict);
  CHECK(ce.support_size() == 4);
  for (const auto& a : ce.atoms) CHECK(a.prob == Rational(1, 4));

  const Game one = Game::normal_form({2}, {{5, 3}});
  const auto pm = brute_force_ce(one);
  REQUIRE(pm.atoms.size() == 1);
  CHECK(pm.atoms[0].profile == PureProfile{{0}});
}
