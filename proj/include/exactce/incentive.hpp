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

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"

#include "exactce/game.hpp"
#include "exactce/rational.hpp"

namespace exactce {

/// Incentive-constraint row (p, i, j): player p told to play i considers j.
struct RowIndex {
  int player = 0;
  int i = 0;
  int j = 0;

  auto operator<=>(const RowIndex&) const = default;
};

/// Canonical linear order of the N = sum_p |S_p|^2 rows: players ascending,
/// then i, then j. Diagonal rows (p, i, i) are part of the index space.
class RowSpace {
 public:
  explicit RowSpace(const std::vector<int>& actions);

  size_t size() const { return size_; }
  size_t index(const RowIndex& r) const;
  RowIndex row(size_t k) const;
  size_t offset(int p) const { return offsets_[static_cast<size_t>(p)]; }
  /// sum_p |S_p| (|S_p| - 1), the number of rows that are not identically zero.
  size_t off_diagonal_count() const;
  const std::vector<int>& actions() const { return actions_; }

 private:
  std::vector<int> actions_;
  std::vector<size_t> offsets_;
  size_t size_ = 0;
};

/// Dual vector y over the rows of U; may be negative while the ellipsoid runs.
using DualVector = std::vector<Rational>;

struct ColumnEntry {
  size_t row;
  Integer value;
};

/// Nonzeros of column U_s, ascending by row.
struct ColumnSlice {
  PureProfile profile;
  std::vector<ColumnEntry> entries;

  std::vector<Rational> dense(size_t n_rows) const;
};

ColumnSlice column(const Game& g, const PureProfile& s);

/// Row (p, i, j) of the result is x^p_i (E[u^p | i, x^-p] - E[u^p | j, x^-p]),
/// which equals sum_s x_s U_{(p,i,j),s}.
std::vector<Rational> x_dot_UT(const Game& g, const ProductDistribution& x);

Rational dot(const ColumnSlice& c, const DualVector& y);
Rational dot(const std::vector<Rational>& a, const DualVector& y);
Rational column_dot(const Game& g, const PureProfile& s, const DualVector& y);

struct Atom {
  PureProfile profile;
  Rational prob;

  bool operator==(const Atom&) const = default;
};

/// A correlated distribution with explicit finite support.
struct SparseCE {
  std::vector<Atom> atoms;

  size_t support_size() const;
  bool operator==(const SparseCE&) const = default;
};

/// 1 + sum_p |S_p| (|S_p| - 1).
size_t support_bound(const Game& g);

/// Ceiling on the bits of any vertex probability: 4 N^3 ceil(log2(u + 2)).
Integer probability_bit_bound(const Game& g);
/// Bits needed for numerator plus denominator.
size_t bit_length(const Rational& r);

struct CEVerdict {
  bool verdict = false;
  bool normalized = false;   // probabilities sum to exactly one
  bool nonnegative = false;  // no negative probability
  bool distinct = false;     // no profile listed twice
  RowIndex worst_row;
  Rational worst_value;      // most negative incentive value (or smallest)
  std::string reason;        // empty when verdict is true
};

/// Exact check of every incentive constraint and the distribution constraints.
CEVerdict verify_ce(const Game& g, const SparseCE& ce);

nlohmann::json to_json(const SparseCE& ce);
/// Accepts {"atoms": [...]} or a solve report carrying "ce".
SparseCE sparse_ce_from_json(const nlohmann::json& doc);

}  // namespace exactce
