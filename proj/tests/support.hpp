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


// Brute-force helpers shared by the test binaries.

#pragma once

#include <random>
#include <vector>

#include "exactce/game.hpp"
#include "exactce/incentive.hpp"

namespace exactce::testing {

// Dense N x M incentive matrix built straight from payoffs, columns in
// all_profiles order.
inline std::vector<std::vector<Rational>> materialize_u(const Game& g) {
  const RowSpace rows(g.actions());
  const auto profiles = all_profiles(g);
  std::vector<std::vector<Rational>> u(rows.size(), std::vector<Rational>(profiles.size()));
  for (size_t c = 0; c < profiles.size(); ++c) {
    const auto& s = profiles[c];
    for (int p = 0; p < g.num_players(); ++p) {
      for (int j = 0; j < g.num_actions(p); ++j) {
        PureProfile dev = s;
        dev.actions[static_cast<size_t>(p)] = j;
        u[rows.index({p, s[static_cast<size_t>(p)], j})][c] = g.payoff(p, s) - g.payoff(p, dev);
      }
    }
  }
  return u;
}

// Joint probability of s under a product distribution.
inline Rational joint(const ProductDistribution& x, const PureProfile& s) {
  Rational r = 1;
  for (size_t p = 0; p < s.size(); ++p) r *= x.strategies[p][static_cast<size_t>(s[p])];
  return r;
}

inline Rational random_rational(std::mt19937_64& rng, int lo, int hi, int max_den = 7) {
  std::uniform_int_distribution<int> num(lo, hi);
  std::uniform_int_distribution<int> den(1, max_den);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

// Nonnegative dual vector; roughly a third of the entries are zero.
inline DualVector random_nonneg_y(std::mt19937_64& rng, size_t n) {
  DualVector y(n);
  std::uniform_int_distribution<int> zero(0, 2);
  for (auto& v : y) v = zero(rng) == 0 ? Rational(0) : random_rational(rng, 0, 9);
  return y;
}

inline ProductDistribution random_product(std::mt19937_64& rng, const std::vector<int>& actions) {
  ProductDistribution x;
  for (int a : actions) {
    std::vector<Rational> w(static_cast<size_t>(a));
    Rational total = 0;
    for (auto& v : w) {
      v = random_rational(rng, 0, 5);
      total += v;
    }
    if (total == 0) {
      w[0] = 1;
      total = 1;
    }
    for (auto& v : w) v /= total;
    x.strategies.push_back(std::move(w));
  }
  return x;
}

inline Game random_game_of(GameFamily f, int players, int actions, std::int64_t u, std::uint64_t seed) {
  return random_game(RandomGameSpec{f, players, actions, u}, seed);
}

}  // namespace exactce::testing
