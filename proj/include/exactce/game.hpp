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
#include <cstdint>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "exactce/rational.hpp"

namespace exactce {

/// One action index per player.
struct PureProfile {
  std::vector<int> actions;

  int operator[](size_t p) const { return actions[p]; }
  size_t size() const { return actions.size(); }
  auto operator<=>(const PureProfile&) const = default;
};

/// Independent mixed strategies, one exact rational vector per player.
struct ProductDistribution {
  std::vector<std::vector<Rational>> strategies;

  static ProductDistribution uniform(const std::vector<int>& actions);
  static ProductDistribution point_mass(const std::vector<int>& actions, const PureProfile& s);

  /// Copy with player p's strategy replaced by a point mass on `action`.
  ProductDistribution with_override(int p, int action) const;

  /// Throws InvalidArgument unless every strategy has the right length, is
  /// nonnegative and sums to exactly one.
  void validate(const std::vector<int>& actions) const;
};

enum class GameFamily { kNormalForm, kPolymatrix };

/// Stored utility = scale * input utility + shift, per player.
struct Integerization {
  Rational scale{1};
  Rational shift{0};
};

/// Integer-valued n-player game in either a full payoff table or a polymatrix
/// representation. Immutable once built.
class Game {
 public:
  using Matrix = std::vector<std::vector<Integer>>;

  /// `payoffs[p]` is the flat row-major table for player p; player 0's action
  /// has the outermost stride.
  static Game normal_form(std::vector<int> actions, std::vector<std::vector<Integer>> payoffs);

  /// `edges[p][q]` is the |S_p| x |S_q| matrix A^{pq}; `edges[p][p]` is ignored.
  static Game polymatrix(std::vector<int> actions, std::vector<std::vector<Matrix>> edges);

  GameFamily family() const { return family_; }
  int num_players() const { return static_cast<int>(actions_.size()); }
  const std::vector<int>& actions() const { return actions_; }
  int num_actions(int p) const { return actions_.at(static_cast<size_t>(p)); }
  /// Largest stored utility over all players and profiles.
  const Integer& max_utility() const { return u_max_; }
  /// Number of pure profiles M.
  Integer num_profiles() const;
  const std::vector<Integerization>& integerization() const { return integerization_; }

  Integer payoff(int p, const PureProfile& s) const;

  /// Exact expected utility of player p when everyone randomizes independently.
  Rational expected_utility(int p, const ProductDistribution& x) const;

  /// Entry a is player p's expected utility under x with p's own strategy
  /// overridden by a point mass on a. x must already be valid.
  std::vector<Rational> deviation_utilities(int p, const ProductDistribution& x) const;

  void check_profile(const PureProfile& s) const;
  void check_player(int p) const;

  const std::vector<std::vector<Integer>>& table() const { return table_; }
  const std::vector<std::vector<Matrix>>& edges() const { return edges_; }

  nlohmann::json to_json() const;

 private:
  friend Game load_game(const nlohmann::json& document);

  Game() = default;
  void finalize();
  size_t flat_index(const PureProfile& s) const;
  Rational normal_form_expectation(int p, const ProductDistribution& x, int forced_action) const;
  Rational polymatrix_expectation(int p, const ProductDistribution& x, int forced_action) const;

  GameFamily family_ = GameFamily::kNormalForm;
  std::vector<int> actions_;
  std::vector<std::vector<Integer>> table_;
  std::vector<std::vector<Matrix>> edges_;
  std::vector<Integerization> integerization_;
  Integer u_max_{0};
};

/// Parses and validates a game document, integerizing rational utilities.
Game load_game(const nlohmann::json& document);
Game load_game(std::string_view text);
inline Game load_game(const char* text) { return load_game(std::string_view(text)); }

struct RandomGameSpec {
  GameFamily family = GameFamily::kNormalForm;
  int players = 2;
  int actions = 2;
  std::int64_t u_max = 10;
};

/// Utilities uniform on {0..u_max}; deterministic in `seed`.
Game random_game(const RandomGameSpec& spec, std::uint64_t seed);

/// Every pure profile in table order. Throws InvalidArgument above `limit`.
std::vector<PureProfile> all_profiles(const Game& g, std::uint64_t limit = 1u << 20);

}  // namespace exactce
