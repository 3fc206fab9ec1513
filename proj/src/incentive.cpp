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

#include "exactce/incentive.hpp"

#include <set>

#include "exactce/error.hpp"

namespace exactce {

RowSpace::RowSpace(const std::vector<int>& actions) : actions_(actions) {
  for (int m : actions_) {
    offsets_.push_back(size_);
    size_ += static_cast<size_t>(m) * static_cast<size_t>(m);
  }
}

size_t RowSpace::index(const RowIndex& r) const {
  if (r.player < 0 || static_cast<size_t>(r.player) >= actions_.size()) throw InvalidArgument("row player out of range");
  const int m = actions_[static_cast<size_t>(r.player)];
  if (r.i < 0 || r.i >= m || r.j < 0 || r.j >= m) throw InvalidArgument("row action out of range");
  return offsets_[static_cast<size_t>(r.player)] + static_cast<size_t>(r.i * m + r.j);
}

RowIndex RowSpace::row(size_t k) const {
  if (k >= size_) throw InvalidArgument("row index out of range");
  size_t p = actions_.size() - 1;
  while (offsets_[p] > k) --p;
  const auto m = static_cast<size_t>(actions_[p]);
  const size_t local = k - offsets_[p];
  return {static_cast<int>(p), static_cast<int>(local / m), static_cast<int>(local % m)};
}

size_t RowSpace::off_diagonal_count() const {
  size_t total = 0;
  for (int m : actions_) total += static_cast<size_t>(m) * static_cast<size_t>(m - 1);
  return total;
}

std::vector<Rational> ColumnSlice::dense(size_t n_rows) const {
  std::vector<Rational> out(n_rows, Rational(0));
  for (const auto& e : entries) out.at(e.row) = e.value;
  return out;
}

ColumnSlice column(const Game& g, const PureProfile& s) {
  g.check_profile(s);
  const RowSpace rows(g.actions());
  ColumnSlice c{s, {}};
  PureProfile dev = s;
  for (int p = 0; p < g.num_players(); ++p) {
    const auto pp = static_cast<size_t>(p);
    const Integer here = g.payoff(p, s);
    const int i = s[pp];
    for (int j = 0; j < g.num_actions(p); ++j) {
      if (j == i) continue;
      dev.actions[pp] = j;
      Integer diff = here - g.payoff(p, dev);
      if (sgn(diff) != 0) c.entries.push_back({rows.index({p, i, j}), std::move(diff)});
    }
    dev.actions[pp] = i;
  }
  return c;
}

std::vector<Rational> x_dot_UT(const Game& g, const ProductDistribution& x) {
  x.validate(g.actions());
  const RowSpace rows(g.actions());
  std::vector<Rational> out(rows.size(), Rational(0));
  for (int p = 0; p < g.num_players(); ++p) {
    const auto& xp = x.strategies[static_cast<size_t>(p)];
    const std::vector<Rational> value = g.deviation_utilities(p, x);
    const int m = g.num_actions(p);
    for (int i = 0; i < m; ++i) {
      if (sgn(xp[static_cast<size_t>(i)]) == 0) continue;
      for (int j = 0; j < m; ++j) {
        if (j == i) continue;
        out[rows.index({p, i, j})] =
            xp[static_cast<size_t>(i)] * (value[static_cast<size_t>(i)] - value[static_cast<size_t>(j)]);
      }
    }
  }
  return out;
}

Rational dot(const ColumnSlice& c, const DualVector& y) {
  Rational total = 0;
  for (const auto& e : c.entries) {
    if (e.row >= y.size()) throw InvalidArgument("dual vector too short for column");
    total += y[e.row] * e.value;
  }
  return total;
}

Rational dot(const std::vector<Rational>& a, const DualVector& y) {
  if (a.size() != y.size()) throw InvalidArgument("dimension mismatch in dot product");
  Rational total = 0;
  for (size_t k = 0; k < a.size(); ++k) {
    if (sgn(a[k]) != 0) total += a[k] * y[k];
  }
  return total;
}

Rational column_dot(const Game& g, const PureProfile& s, const DualVector& y) {
  if (y.size() != RowSpace(g.actions()).size()) throw InvalidArgument("dual vector has wrong length");
  return dot(column(g, s), y);
}

size_t SparseCE::support_size() const {
  size_t k = 0;
  for (const auto& a : atoms) k += sgn(a.prob) > 0 ? 1 : 0;
  return k;
}

size_t support_bound(const Game& g) { return 1 + RowSpace(g.actions()).off_diagonal_count(); }

Integer probability_bit_bound(const Game& g) {
  const Integer n(static_cast<unsigned long>(RowSpace(g.actions()).size()));
  // ceil(log2(u + 2)) is the bit length of u + 1.
  const Integer u1 = g.max_utility() + 1;
  const auto log_bits = static_cast<unsigned long>(mpz_sizeinbase(u1.get_mpz_t(), 2));
  return 4 * n * n * n * log_bits;
}

size_t bit_length(const Rational& r) {
  return mpz_sizeinbase(r.get_num_mpz_t(), 2) + mpz_sizeinbase(r.get_den_mpz_t(), 2);
}

CEVerdict verify_ce(const Game& g, const SparseCE& ce) {
  const RowSpace rows(g.actions());
  CEVerdict v;
  std::vector<Rational> acc(rows.size(), Rational(0));
  Rational total = 0;
  v.nonnegative = true;
  v.distinct = true;
  std::set<PureProfile> seen;
  for (const auto& atom : ce.atoms) {
    g.check_profile(atom.profile);
    if (!seen.insert(atom.profile).second) v.distinct = false;
    if (sgn(atom.prob) < 0) v.nonnegative = false;
    total += atom.prob;
    if (sgn(atom.prob) == 0) continue;
    for (const auto& e : column(g, atom.profile).entries) acc[e.row] += atom.prob * e.value;
  }
  v.normalized = total == 1;

  bool have = false;
  for (size_t k = 0; k < rows.size(); ++k) {
    const RowIndex r = rows.row(k);
    if (r.i == r.j) continue;
    if (!have || acc[k] < v.worst_value) {
      v.worst_row = r;
      v.worst_value = acc[k];
      have = true;
    }
  }
  if (!have) v.worst_value = 0;

  if (!v.normalized) {
    v.reason = "probabilities sum to " + to_string(total) + ", not 1";
  } else if (!v.nonnegative) {
    v.reason = "negative probability";
  } else if (!v.distinct) {
    v.reason = "profile listed more than once";
  } else if (sgn(v.worst_value) < 0) {
    v.reason = "incentive constraint violated";
  }
  v.verdict = v.reason.empty();
  return v;
}

nlohmann::json to_json(const SparseCE& ce) {
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& a : ce.atoms) atoms.push_back({{"profile", a.profile.actions}, {"prob", to_string(a.prob)}});
  return {{"atoms", std::move(atoms)}};
}

SparseCE sparse_ce_from_json(const nlohmann::json& doc) {
  const nlohmann::json* root = &doc;
  if (doc.is_object() && !doc.contains("atoms") && doc.contains("ce")) root = &doc["ce"];
  if (!root->is_object() || !root->contains("atoms") || !(*root)["atoms"].is_array()) {
    throw ParseError("certificate must be an object with an \"atoms\" array");
  }
  SparseCE ce;
  for (const auto& a : (*root)["atoms"]) {
    if (!a.is_object() || !a.contains("profile") || !a.contains("prob")) {
      throw ParseError("each atom needs \"profile\" and \"prob\"");
    }
    Atom atom;
    for (const auto& s : a["profile"]) {
      if (!s.is_number_integer()) throw ParseError("profile entries must be integers");
      atom.profile.actions.push_back(s.get<int>());
    }
    if (a["prob"].is_string()) {
      atom.prob = parse_rational(a["prob"].get<std::string>());
    } else if (a["prob"].is_number_integer()) {
      atom.prob = Rational(a["prob"].get<long>());
    } else {
      throw ParseError("probabilities must be rational strings");
    }
    ce.atoms.push_back(std::move(atom));
  }
  return ce;
}

}  // namespace exactce
