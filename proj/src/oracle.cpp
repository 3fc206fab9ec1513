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

#include "exactce/oracle.hpp"

#include "exactce/error.hpp"
#include "exactce/simplex.hpp"

namespace exactce {
namespace {

void check_dual(const Game& g, const DualVector& y) {
  if (y.size() != RowSpace(g.actions()).size()) throw InvalidArgument("dual vector has wrong length");
}

void check_nonnegative(const DualVector& y) {
  for (const auto& v : y) {
    if (sgn(v) < 0) throw InvalidArgument("dual vector must be nonnegative");
  }
}

Rational social_welfare(const Game& g, const ProductDistribution& x) {
  Rational total = 0;
  for (int p = 0; p < g.num_players(); ++p) total += g.expected_utility(p, x);
  return total;
}

// Stationary distribution of one player's block, or uniform if it is empty.
std::vector<Rational> stationary_block(const RowSpace& rows, int p, int m, const DualVector& y) {
  auto rate = [&](int i, int j) -> const Rational& { return y[rows.index({p, i, j})]; };
  bool any = false;
  for (int i = 0; i < m && !any; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i != j && sgn(rate(i, j)) != 0) {
        any = true;
        break;
      }
    }
  }
  if (!any) {
    std::vector<Rational> u(static_cast<size_t>(m), Rational(1, m));
    for (auto& e : u) e.canonicalize();
    return u;
  }
  // Balance: inflow into j equals outflow from j, plus normalization.
  simplex::Problem prob;
  prob.num_vars = static_cast<size_t>(m);
  for (int j = 0; j < m; ++j) {
    std::vector<Rational> row(static_cast<size_t>(m), Rational(0));
    for (int i = 0; i < m; ++i) {
      if (i == j) continue;
      row[static_cast<size_t>(i)] += rate(i, j);
      row[static_cast<size_t>(j)] -= rate(j, i);
    }
    prob.a.push_back(std::move(row));
    prob.b.emplace_back(0);
  }
  prob.a.emplace_back(static_cast<size_t>(m), Rational(1));
  prob.b.emplace_back(1);
  const auto sol = simplex::solve(prob);
  if (sol.status != simplex::Status::kOptimal) throw InternalError("no stationary distribution found");
  return sol.x;
}

}  // namespace

Rational Halfspace::evaluate(const DualVector& y) const {
  Rational total = 0;
  for (const auto& [row, coef] : normal) total += coef * y.at(row);
  return total;
}

std::string Cut::kind_name() const {
  if (is_profile()) return "profile";
  if (is_nonnegativity()) return "nonnegativity";
  return "product";
}

Cut make_profile_cut(const Game& g, const PureProfile& s) {
  Cut c{ProfileCut{s}, {}};
  for (const auto& e : column(g, s).entries) c.constraint.normal.emplace_back(e.row, Rational(e.value));
  c.constraint.rhs = -1;
  return c;
}

Cut make_nonnegativity_cut(const Game& g, size_t row) {
  const RowSpace rows(g.actions());
  Cut c{NonnegativityCut{rows.row(row)}, {}};
  c.constraint.normal.emplace_back(row, Rational(-1));
  c.constraint.rhs = 0;
  return c;
}

Cut make_product_cut(const Game& g, const ProductDistribution& x) {
  Cut c{ProductCut{x}, {}};
  const auto v = x_dot_UT(g, x);
  for (size_t k = 0; k < v.size(); ++k) {
    if (sgn(v[k]) != 0) c.constraint.normal.emplace_back(k, v[k]);
  }
  c.constraint.rhs = -1;
  return c;
}

ProductDistribution stationary_product(const Game& g, const DualVector& y) {
  check_dual(g, y);
  check_nonnegative(y);
  const RowSpace rows(g.actions());
  ProductDistribution x;
  for (int p = 0; p < g.num_players(); ++p) {
    const int m = g.num_actions(p);
    auto xp = stationary_block(rows, p, m, y);
    for (int j = 0; j < m; ++j) {
      Rational in = 0;
      Rational out = 0;
      for (int i = 0; i < m; ++i) {
        if (i == j) continue;
        in += xp[static_cast<size_t>(i)] * y[rows.index({p, i, j})];
        out += y[rows.index({p, j, i})];
      }
      if (in != xp[static_cast<size_t>(j)] * out) throw InternalError("stationary strategy violates balance");
    }
    x.strategies.push_back(std::move(xp));
  }
  if (sgn(dot(x_dot_UT(g, x), y)) != 0) throw InternalError("stationary product does not zero x U^T y");
  return x;
}

PurifyTrace purify_traced(const Game& g, const DualVector& y, const ProductDistribution& x_in,
                          TieBreak tie_break) {
  check_dual(g, y);
  check_nonnegative(y);
  x_in.validate(g.actions());
  ProductDistribution x = x_in;
  Rational current = dot(x_dot_UT(g, x), y);
  if (sgn(current) < 0) throw InvalidArgument("purify needs x U^T y >= 0");

  PurifyTrace trace;
  for (int p = 0; p < g.num_players(); ++p) {
    PurifyStep step;
    step.player = p;
    step.value_before = current;
    const auto& xp = x.strategies[static_cast<size_t>(p)];
    int chosen = -1;
    Rational chosen_value;
    Rational chosen_welfare;
    for (int a = 0; a < g.num_actions(p); ++a) {
      if (sgn(xp[static_cast<size_t>(a)]) == 0) continue;
      const ProductDistribution cond = x.with_override(p, a);
      Rational value = dot(x_dot_UT(g, cond), y);
      step.candidates.push_back(a);
      step.candidate_values.push_back(value);
      if (sgn(value) < 0) continue;
      if (tie_break == TieBreak::kFirst) {
        if (chosen < 0) {
          chosen = a;
          chosen_value = value;
        }
        // The first nonnegative action ends the scan.
        break;
      }
      if (tie_break == TieBreak::kMaxValue) {
        if (chosen < 0 || value > chosen_value) {
          chosen = a;
          chosen_value = value;
        }
      } else {
        Rational welfare = social_welfare(g, cond);
        if (chosen < 0 || welfare > chosen_welfare) {
          chosen = a;
          chosen_value = value;
          chosen_welfare = std::move(welfare);
        }
      }
    }
    if (chosen < 0) throw InvalidArgument("no action keeps the conditional value nonnegative");
    step.chosen = chosen;
    x = x.with_override(p, chosen);
    current = chosen_value;
    trace.steps.push_back(std::move(step));
  }
  for (const auto& v : x.strategies) {
    for (size_t a = 0; a < v.size(); ++a) {
      if (v[a] == 1) trace.profile.actions.push_back(static_cast<int>(a));
    }
  }
  trace.final_value = current;
  return trace;
}

PureProfile purify(const Game& g, const DualVector& y, const ProductDistribution& x, TieBreak tie_break) {
  return purify_traced(g, y, x, tie_break).profile;
}

Cut purified_separation(const Game& g, const DualVector& y, TieBreak tie_break) {
  check_dual(g, y);
  for (size_t k = 0; k < y.size(); ++k) {
    if (sgn(y[k]) < 0) return make_nonnegativity_cut(g, k);
  }
  return make_profile_cut(g, purify(g, y, stationary_product(g, y), tie_break));
}

Cut product_separation(const Game& g, const DualVector& y) {
  check_dual(g, y);
  for (size_t k = 0; k < y.size(); ++k) {
    if (sgn(y[k]) < 0) return make_nonnegativity_cut(g, k);
  }
  return make_product_cut(g, stationary_product(g, y));
}

TieBreak parse_tie_break(const std::string& name) {
  if (name == "first") return TieBreak::kFirst;
  if (name == "max-value") return TieBreak::kMaxValue;
  if (name == "welfare") return TieBreak::kWelfare;
  throw InvalidArgument("unknown tie-break '" + name + "' (first, max-value, welfare)");
}

std::string to_string(TieBreak t) {
  switch (t) {
    case TieBreak::kFirst: return "first";
    case TieBreak::kMaxValue: return "max-value";
    case TieBreak::kWelfare: return "welfare";
  }
  return "first";
}

}  // namespace exactce
