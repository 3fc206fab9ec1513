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

#include "exactce/error.hpp"
#include "exactce/incentive.hpp"
#include "support.hpp"

using namespace exactce;
namespace t = exactce::testing;

namespace {

Game one_player(Integer a, Integer b) { return Game::normal_form({2}, {{std::move(a), std::move(b)}}); }

Game matching_pennies() {
  return Game::normal_form({2, 2}, {{1, 0, 0, 1}, {0, 1, 1, 0}});
}

SparseCE uniform_over(const Game& g) {
  SparseCE ce;
  const auto ps = all_profiles(g);
  for (const auto& s : ps) ce.atoms.push_back({s, Rational(1, static_cast<long>(ps.size()))});
  return ce;
}

}  // namespace

TEST_CASE("row space ordering") {
  const RowSpace rows({2, 3});
  CHECK(rows.size() == 4 + 9);
  CHECK(rows.off_diagonal_count() == 2 + 6);
  CHECK(rows.index({0, 0, 0}) == 0);
  CHECK(rows.index({0, 1, 0}) == 2);
  CHECK(rows.index({1, 0, 0}) == 4);
  CHECK(rows.index({1, 2, 1}) == 4 + 7);
  for (size_t k = 0; k < rows.size(); ++k) CHECK(rows.index(rows.row(k)) == k);
}

TEST_CASE("column of a constant game is empty") {
  const Game g = Game::normal_form({2, 2}, {std::vector<Integer>(4, 3), std::vector<Integer>(4, 3)});
  for (const auto& s : all_profiles(g)) CHECK(column(g, s).entries.empty());
}

TEST_CASE("one-player column") {
  const auto c = column(one_player(5, 3), {{0}});
  REQUIRE(c.entries.size() == 1);
  CHECK(c.entries[0].row == RowSpace({2}).index({0, 0, 1}));
  CHECK(c.entries[0].value == 2);
}

TEST_CASE("columns and x U^T match the materialized matrix") {
  std::mt19937_64 rng(3);
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    for (auto family : {GameFamily::kNormalForm, GameFamily::kPolymatrix}) {
      const int players = 2 + static_cast<int>(seed % 2);
      const Game g = t::random_game_of(family, players, 2 + static_cast<int>(seed % 3 == 0), 10, seed);
      const auto u = t::materialize_u(g);
      const auto profiles = all_profiles(g);
      const RowSpace rows(g.actions());
      for (size_t c = 0; c < profiles.size(); ++c) {
        const auto dense = column(g, profiles[c]).dense(rows.size());
        for (size_t r = 0; r < rows.size(); ++r) CHECK(dense[r] == u[r][c]);
      }
      const auto x = seed % 4 == 0 ? ProductDistribution::uniform(g.actions()) : t::random_product(rng, g.actions());
      const auto xu = x_dot_UT(g, x);
      for (size_t r = 0; r < rows.size(); ++r) {
        Rational brute = 0;
        for (size_t c = 0; c < profiles.size(); ++c) brute += t::joint(x, profiles[c]) * u[r][c];
        CHECK(xu[r] == brute);
        const auto ri = rows.row(r);
        if (ri.i == ri.j) CHECK(xu[r] == 0);
      }
      const auto y = t::random_nonneg_y(rng, rows.size());
      for (size_t c = 0; c < profiles.size(); ++c) {
        Rational brute = 0;
        for (size_t r = 0; r < rows.size(); ++r) brute += u[r][c] * y[r];
        CHECK(column_dot(g, profiles[c], y) == brute);
      }
    }
  }
}

TEST_CASE("x U^T at a point mass is the column") {
  const Game g = t::random_game_of(GameFamily::kNormalForm, 3, 2, 10, 8);
  const RowSpace rows(g.actions());
  for (const auto& s : all_profiles(g)) {
    CHECK(x_dot_UT(g, ProductDistribution::point_mass(g.actions(), s)) == column(g, s).dense(rows.size()));
  }
}

TEST_CASE("column_dot trivial cases") {
  const Game g = t::random_game_of(GameFamily::kNormalForm, 2, 2, 10, 1);
  const DualVector zero(RowSpace(g.actions()).size());
  CHECK(column_dot(g, {{1, 0}}, zero) == 0);
  const Game constant = Game::normal_form({2, 2}, {std::vector<Integer>(4, 1), std::vector<Integer>(4, 1)});
  std::mt19937_64 rng(1);
  CHECK(column_dot(constant, {{0, 1}}, t::random_nonneg_y(rng, 8)) == 0);
}

TEST_CASE("mixing identity over one player's actions") {
  std::mt19937_64 rng(17);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Game g = t::random_game_of(seed % 2 ? GameFamily::kNormalForm : GameFamily::kPolymatrix, 3, 3, 10, seed);
    const auto x = t::random_product(rng, g.actions());
    const auto y = t::random_nonneg_y(rng, RowSpace(g.actions()).size());
    const Rational total = dot(x_dot_UT(g, x), y);
    for (int p = 0; p < 3; ++p) {
      Rational mixed = 0;
      for (int a = 0; a < 3; ++a) mixed += dot(x_dot_UT(g, x.with_override(p, a)), y) * x.strategies[p][a];
      CHECK(mixed == total);
    }
  }
}

TEST_CASE("verify_ce on simple games") {
  const Game constant = Game::normal_form({2, 2}, {std::vector<Integer>(4, 2), std::vector<Integer>(4, 2)});
  CHECK(verify_ce(constant, uniform_over(constant)).verdict);

  const auto bad = verify_ce(one_player(5, 3), SparseCE{{{{{1}}, Rational(1)}}});
  CHECK_FALSE(bad.verdict);
  CHECK(bad.normalized);
  CHECK(bad.worst_row == RowIndex{0, 1, 0});
  CHECK(bad.worst_value == -2);
  CHECK(verify_ce(one_player(5, 3), SparseCE{{{{{0}}, Rational(1)}}}).verdict);

  CHECK(verify_ce(matching_pennies(), uniform_over(matching_pennies())).verdict);
}

TEST_CASE("verify_ce rejects malformed distributions") {
  const Game g = matching_pennies();
  auto ce = uniform_over(g);
  ce.atoms[0].prob = Rational(1, 3);
  auto v = verify_ce(g, ce);
  CHECK_FALSE(v.verdict);
  CHECK_FALSE(v.normalized);
  CHECK(v.reason.find("sum") != std::string::npos);

  ce = uniform_over(g);
  ce.atoms[0].prob = Rational(-1, 4);
  ce.atoms[1].prob = Rational(3, 4);
  CHECK_FALSE(verify_ce(g, ce).nonnegative);

  ce = uniform_over(g);
  ce.atoms[1].profile = ce.atoms[0].profile;
  CHECK_FALSE(verify_ce(g, ce).distinct);

  ce = SparseCE{{{{{0, 2}}, Rational(1)}}};
  CHECK_THROWS_AS(verify_ce(g, ce), InvalidArgument);
}

TEST_CASE("verify_ce is invariant under positive affine maps") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Game g = t::random_game_of(GameFamily::kNormalForm, 2, 3, 6, seed);
    std::vector<std::vector<Integer>> scaled = g.table();
    for (size_t p = 0; p < scaled.size(); ++p) {
      for (auto& v : scaled[p]) v = v * static_cast<long>(p + 3) + static_cast<long>(7 * p + 1);
    }
    const Game h = Game::normal_form(g.actions(), scaled);
    std::mt19937_64 rng(seed);
    SparseCE ce;
    Rational total = 0;
    for (const auto& s : all_profiles(g)) {
      ce.atoms.push_back({s, t::random_rational(rng, 0, 4)});
      total += ce.atoms.back().prob;
    }
    if (total == 0) continue;
    for (auto& a : ce.atoms) a.prob /= total;
    CHECK(verify_ce(g, ce).verdict == verify_ce(h, ce).verdict);
  }
}

TEST_CASE("support and bit bounds") {
  const Game g = t::random_game_of(GameFamily::kNormalForm, 3, 2, 10, 1);
  CHECK(support_bound(g) == 7);
  CHECK(bit_length(Rational(3, 4)) == 5);
  CHECK(probability_bit_bound(g) > 0);
}

TEST_CASE("certificate json round trip") {
  SparseCE ce{{{{{0, 1}}, Rational(2, 3)}, {{{1, 0}}, Rational(1, 3)}}};
  const auto doc = to_json(ce);
  CHECK(doc["atoms"][0]["prob"] == "2/3");
  CHECK(sparse_ce_from_json(doc) == ce);
  CHECK(sparse_ce_from_json(nlohmann::json{{"ce", doc}}) == ce);
  CHECK_THROWS(sparse_ce_from_json(nlohmann::json::parse(R"({"atoms":[{"profile":[0],"prob":"x"}]})")));
}
