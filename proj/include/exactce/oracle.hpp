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
#include <string>
#include <variant>
#include <vector>

#include "exactce/game.hpp"
#include "exactce/incentive.hpp"
#include "exactce/rational.hpp"

namespace exactce {

/// Sparse constraint normal . y <= rhs.
struct Halfspace {
  std::vector<std::pair<size_t, Rational>> normal;
  Rational rhs;

  /// a^T y, without the right-hand side.
  Rational evaluate(const DualVector& y) const;
  bool is_zero() const { return normal.empty(); }
};

/// U_s^T y <= -1.
struct ProfileCut {
  PureProfile profile;
};

/// -y_row <= 0.
struct NonnegativityCut {
  RowIndex row;
};

/// (x U^T) y <= -1; a convex combination of profile constraints.
struct ProductCut {
  ProductDistribution x;
};

struct Cut {
  std::variant<ProfileCut, NonnegativityCut, ProductCut> kind;
  Halfspace constraint;

  bool is_profile() const { return std::holds_alternative<ProfileCut>(kind); }
  bool is_nonnegativity() const { return std::holds_alternative<NonnegativityCut>(kind); }
  bool is_product() const { return std::holds_alternative<ProductCut>(kind); }
  std::string kind_name() const;
};

Cut make_profile_cut(const Game& g, const PureProfile& s);
Cut make_nonnegativity_cut(const Game& g, size_t row);
Cut make_product_cut(const Game& g, const ProductDistribution& x);

/// Product distribution with x U^T y = 0 for y >= 0. Each player's strategy is
/// a stationary distribution of the chain whose i -> j rate is y_(p,i,j),
/// picked as the first vertex found by Bland's rule; an all-zero block gives
/// the uniform strategy. The identity is verified exactly before returning.
ProductDistribution stationary_product(const Game& g, const DualVector& y);

enum class TieBreak { kFirst, kMaxValue, kWelfare };

struct PurifyStep {
  int player = 0;
  Rational value_before;                // x U^T y before conditioning on p
  std::vector<int> candidates;          // support of x^p, ascending
  std::vector<Rational> candidate_values;  // x_(p->a) U^T y per candidate
  int chosen = 0;
};

struct PurifyTrace {
  PureProfile profile;
  std::vector<PurifyStep> steps;
  Rational final_value;  // (U_s)^T y
};

/// Method of conditional expectations: fixes players in ascending order, each
/// time keeping the conditional value of (U_s)^T y nonnegative.
PurifyTrace purify_traced(const Game& g, const DualVector& y, const ProductDistribution& x,
                          TieBreak tie_break = TieBreak::kFirst);
PureProfile purify(const Game& g, const DualVector& y, const ProductDistribution& x,
                   TieBreak tie_break = TieBreak::kFirst);

/// Nonnegativity cut on the first negative entry, else the profile cut from
/// purifying the stationary product.
Cut purified_separation(const Game& g, const DualVector& y, TieBreak tie_break = TieBreak::kFirst);

/// Nonnegativity cut on the first negative entry, else the product cut.
Cut product_separation(const Game& g, const DualVector& y);

TieBreak parse_tie_break(const std::string& name);
std::string to_string(TieBreak t);

}  // namespace exactce
