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

#include "exactce/game.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <string>

#include "exactce/error.hpp"

namespace exactce {
namespace {

using json = nlohmann::json;

Rational utility_from_json(const json& v) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) return Rational(Integer(std::to_string(v.get<std::uint64_t>())));
    return Rational(Integer(std::to_string(v.get<std::int64_t>())));
  }
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw ParseError("utility must be an integer or a rational string, got " + v.dump());
}

json integer_to_json(const Integer& v) {
  if (v.fits_slong_p()) return json(v.get_si());
  return json(v.get_str());
}

int as_count(const json& v, const char* what) {
  if (!v.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  const auto c = v.get<std::int64_t>();
  if (c < 1) throw ParseError(std::string(what) + " must be positive, got " + std::to_string(c));
  if (c > (1 << 20)) throw ParseError(std::string(what) + " is unreasonably large");
  return static_cast<int>(c);
}

// Least common multiple of the denominators, so scale * value is integral.
Integer common_denominator(const std::vector<const Rational*>& values) {
  Integer l = 1;
  for (const Rational* v : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v->get_den_mpz_t());
  return l;
}

Integer to_integer(const Rational& r) {
  if (r.get_den() != 1) throw InternalError("integerization left a fraction");
  return r.get_num();
}

}  // namespace

ProductDistribution ProductDistribution::uniform(const std::vector<int>& actions) {
  ProductDistribution x;
  for (int m : actions) x.strategies.emplace_back(static_cast<size_t>(m), Rational(1, m));
  for (auto& v : x.strategies) for (auto& e : v) e.canonicalize();
  return x;
}

ProductDistribution ProductDistribution::point_mass(const std::vector<int>& actions,
                                                    const PureProfile& s) {
  if (s.size() != actions.size()) throw InvalidArgument("profile length does not match player count");
  ProductDistribution x;
  for (size_t p = 0; p < actions.size(); ++p) {
    if (s[p] < 0 || s[p] >= actions[p]) throw InvalidArgument("profile action out of range");
    std::vector<Rational> v(static_cast<size_t>(actions[p]), Rational(0));
    v[static_cast<size_t>(s[p])] = 1;
    x.strategies.push_back(std::move(v));
  }
  return x;
}

ProductDistribution ProductDistribution::with_override(int p, int action) const {
  ProductDistribution x = *this;
  auto& v = x.strategies.at(static_cast<size_t>(p));
  if (action < 0 || static_cast<size_t>(action) >= v.size()) throw InvalidArgument("override action out of range");
  std::fill(v.begin(), v.end(), Rational(0));
  v[static_cast<size_t>(action)] = 1;
  return x;
}

void ProductDistribution::validate(const std::vector<int>& actions) const {
  if (strategies.size() != actions.size()) throw InvalidArgument("product distribution has wrong player count");
  for (size_t p = 0; p < actions.size(); ++p) {
    if (strategies[p].size() != static_cast<size_t>(actions[p])) {
      throw InvalidArgument("strategy of player " + std::to_string(p) + " has wrong length");
    }
    Rational total = 0;
    for (const auto& e : strategies[p]) {
      if (sgn(e) < 0) throw InvalidArgument("negative probability in product distribution");
      total += e;
    }
    if (total != 1) throw InvalidArgument("strategy of player " + std::to_string(p) + " does not sum to 1");
  }
}

Game Game::normal_form(std::vector<int> actions, std::vector<std::vector<Integer>> payoffs) {
  Game g;
  g.family_ = GameFamily::kNormalForm;
  g.actions_ = std::move(actions);
  g.table_ = std::move(payoffs);
  g.integerization_.assign(g.actions_.size(), Integerization{});
  g.finalize();
  return g;
}

Game Game::polymatrix(std::vector<int> actions, std::vector<std::vector<Matrix>> edges) {
  Game g;
  g.family_ = GameFamily::kPolymatrix;
  g.actions_ = std::move(actions);
  g.edges_ = std::move(edges);
  g.integerization_.assign(g.actions_.size(), Integerization{});
  g.finalize();
  return g;
}

void Game::finalize() {
  if (actions_.empty()) throw InvalidArgument("a game needs at least one player");
  for (int m : actions_) {
    if (m < 1) throw InvalidArgument("every player needs at least one action");
  }
  const size_t n = actions_.size();
  u_max_ = 0;
  if (family_ == GameFamily::kNormalForm) {
    Integer m = num_profiles();
    if (!m.fits_ulong_p() || m > Integer(1) << 26) throw InvalidArgument("normal-form table too large");
    if (table_.size() != n) throw InvalidArgument("payoff table needs one row per player");
    for (const auto& row : table_) {
      if (row.size() != m.get_ui()) throw InvalidArgument("payoff table row has " + std::to_string(row.size()) + " entries, expected " + m.get_str());
      for (const auto& v : row) {
        if (sgn(v) < 0) throw InvalidArgument("stored utilities must be nonnegative");
        if (v > u_max_) u_max_ = v;
      }
    }
    return;
  }
  if (edges_.empty()) edges_.resize(n);
  if (edges_.size() != n) throw InvalidArgument("polymatrix needs an edge row per player");
  for (size_t p = 0; p < n; ++p) {
    edges_[p].resize(n);
    for (size_t q = 0; q < n; ++q) {
      auto& a = edges_[p][q];
      if (p == q) {
        a.clear();
        continue;
      }
      if (a.empty()) {
        a.assign(static_cast<size_t>(actions_[p]), std::vector<Integer>(static_cast<size_t>(actions_[q]), Integer(0)));
      }
      if (a.size() != static_cast<size_t>(actions_[p])) throw InvalidArgument("polymatrix edge has wrong row count");
      for (const auto& row : a) {
        if (row.size() != static_cast<size_t>(actions_[q])) throw InvalidArgument("polymatrix edge has wrong column count");
        for (const auto& v : row) {
          if (sgn(v) < 0) throw InvalidArgument("stored utilities must be nonnegative");
        }
      }
    }
  }
  // Other players' actions are independent, so the row-wise maxima add up.
  for (size_t p = 0; p < n; ++p) {
    for (int i = 0; i < actions_[p]; ++i) {
      Integer best = 0;
      for (size_t q = 0; q < n; ++q) {
        if (q == p) continue;
        const auto& row = edges_[p][q][static_cast<size_t>(i)];
        best += *std::max_element(row.begin(), row.end());
      }
      if (best > u_max_) u_max_ = best;
    }
  }
}

Integer Game::num_profiles() const {
  Integer m = 1;
  for (int a : actions_) m *= a;
  return m;
}

void Game::check_player(int p) const {
  if (p < 0 || p >= num_players()) throw InvalidArgument("player index " + std::to_string(p) + " out of range");
}

void Game::check_profile(const PureProfile& s) const {
  if (s.size() != actions_.size()) throw InvalidArgument("profile length does not match player count");
  for (size_t p = 0; p < s.size(); ++p) {
    if (s[p] < 0 || s[p] >= actions_[p]) {
      throw InvalidArgument("action " + std::to_string(s[p]) + " of player " + std::to_string(p) + " out of range");
    }
  }
}

size_t Game::flat_index(const PureProfile& s) const {
  size_t idx = 0;
  for (size_t p = 0; p < actions_.size(); ++p) idx = idx * static_cast<size_t>(actions_[p]) + static_cast<size_t>(s[p]);
  return idx;
}

Integer Game::payoff(int p, const PureProfile& s) const {
  check_player(p);
  check_profile(s);
  const auto pp = static_cast<size_t>(p);
  if (family_ == GameFamily::kNormalForm) return table_[pp][flat_index(s)];
  Integer total = 0;
  for (size_t q = 0; q < actions_.size(); ++q) {
    if (q == pp) continue;
    total += edges_[pp][q][static_cast<size_t>(s[pp])][static_cast<size_t>(s[q])];
  }
  return total;
}

Rational Game::expected_utility(int p, const ProductDistribution& x) const {
  check_player(p);
  x.validate(actions_);
  return family_ == GameFamily::kNormalForm ? normal_form_expectation(p, x, -1) : polymatrix_expectation(p, x, -1);
}

std::vector<Rational> Game::deviation_utilities(int p, const ProductDistribution& x) const {
  check_player(p);
  std::vector<Rational> out;
  out.reserve(static_cast<size_t>(num_actions(p)));
  for (int a = 0; a < num_actions(p); ++a) {
    out.push_back(family_ == GameFamily::kNormalForm ? normal_form_expectation(p, x, a)
                                                     : polymatrix_expectation(p, x, a));
  }
  return out;
}

// forced_action >= 0 replaces player p's strategy by a point mass.
Rational Game::normal_form_expectation(int p, const ProductDistribution& x, int forced_action) const {
  const auto& row = table_[static_cast<size_t>(p)];
  const size_t n = actions_.size();
  const auto pp = static_cast<size_t>(p);
  Rational total = 0;
  // Depth-first over players; zero-probability branches are pruned.
  std::function<void(size_t, size_t, const Rational&)> walk = [&](size_t q, size_t offset, const Rational& prob) {
    if (q == n) {
      total += prob * row[offset];
      return;
    }
    const size_t width = static_cast<size_t>(actions_[q]);
    if (q == pp && forced_action >= 0) {
      walk(q + 1, offset * width + static_cast<size_t>(forced_action), prob);
      return;
    }
    const auto& xq = x.strategies[q];
    for (size_t a = 0; a < width; ++a) {
      if (sgn(xq[a]) == 0) continue;
      walk(q + 1, offset * width + a, prob * xq[a]);
    }
  };
  walk(0, 0, Rational(1));
  return total;
}

Rational Game::polymatrix_expectation(int p, const ProductDistribution& x, int forced_action) const {
  const auto pp = static_cast<size_t>(p);
  Rational total = 0;
  for (size_t q = 0; q < actions_.size(); ++q) {
    if (q == pp) continue;
    const auto& a = edges_[pp][q];
    const auto& xq = x.strategies[q];
    auto row_value = [&](size_t i) {
      Rational inner = 0;
      for (size_t j = 0; j < xq.size(); ++j) {
        if (sgn(xq[j]) != 0) inner += xq[j] * a[i][j];
      }
      return inner;
    };
    if (forced_action >= 0) {
      total += row_value(static_cast<size_t>(forced_action));
      continue;
    }
    const auto& xp = x.strategies[pp];
    for (size_t i = 0; i < xp.size(); ++i) {
      if (sgn(xp[i]) != 0) total += xp[i] * row_value(i);
    }
  }
  return total;
}

nlohmann::json Game::to_json() const {
  json doc;
  doc["players"] = num_players();
  doc["actions"] = actions_;
  if (family_ == GameFamily::kNormalForm) {
    doc["type"] = "nfg";
    json payoffs = json::array();
    for (const auto& row : table_) {
      json r = json::array();
      for (const auto& v : row) r.push_back(integer_to_json(v));
      payoffs.push_back(std::move(r));
    }
    doc["payoffs"] = std::move(payoffs);
    return doc;
  }
  doc["type"] = "polymatrix";
  json edges = json::array();
  for (size_t p = 0; p < actions_.size(); ++p) {
    for (size_t q = 0; q < actions_.size(); ++q) {
      if (p == q) continue;
      json m = json::array();
      for (const auto& row : edges_[p][q]) {
        json r = json::array();
        for (const auto& v : row) r.push_back(integer_to_json(v));
        m.push_back(std::move(r));
      }
      edges.push_back({{"p", p}, {"q", q}, {"matrix", std::move(m)}});
    }
  }
  doc["edges"] = std::move(edges);
  return doc;
}

Game load_game(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("game document must be a JSON object");
  for (const char* key : {"type", "players", "actions"}) {
    if (!doc.contains(key)) throw ParseError(std::string("game document lacks \"") + key + "\"");
  }
  const int n = as_count(doc["players"], "players");
  const auto& acts = doc["actions"];
  if (!acts.is_array() || acts.size() != static_cast<size_t>(n)) {
    throw ParseError("\"actions\" must list one count per player");
  }
  std::vector<int> actions;
  for (const auto& a : acts) actions.push_back(as_count(a, "action count"));

  const std::string type = doc["type"].is_string() ? doc["type"].get<std::string>() : "";
  Game g;
  g.actions_ = actions;
  g.integerization_.assign(static_cast<size_t>(n), Integerization{});

  if (type == "nfg") {
    Integer m = 1;
    for (int a : actions) m *= a;
    if (m > Integer(1) << 26) throw ParseError("normal-form table too large");
    const auto& pay = doc.value("payoffs", json());
    if (!pay.is_array() || pay.size() != static_cast<size_t>(n)) {
      throw ParseError("\"payoffs\" must hold one table per player");
    }
    g.family_ = GameFamily::kNormalForm;
    for (size_t p = 0; p < static_cast<size_t>(n); ++p) {
      if (!pay[p].is_array() || pay[p].size() != m.get_ui()) {
        throw ParseError("ragged payoff table for player " + std::to_string(p) + ": expected " + m.get_str() + " entries");
      }
      std::vector<Rational> raw;
      raw.reserve(pay[p].size());
      for (const auto& v : pay[p]) raw.push_back(utility_from_json(v));
      std::vector<const Rational*> ptrs;
      for (const auto& r : raw) ptrs.push_back(&r);
      const Rational scale(common_denominator(ptrs));
      Rational lo = raw.empty() ? Rational(0) : *std::min_element(raw.begin(), raw.end()) * scale;
      const Rational shift = sgn(lo) < 0 ? Rational(-lo) : Rational(0);
      std::vector<Integer> row;
      row.reserve(raw.size());
      for (const auto& r : raw) row.push_back(to_integer(r * scale + shift));
      g.table_.push_back(std::move(row));
      g.integerization_[p] = {scale, shift};
    }
  } else if (type == "polymatrix") {
    g.family_ = GameFamily::kPolymatrix;
    const auto& edges = doc.value("edges", json::array());
    if (!edges.is_array()) throw ParseError("\"edges\" must be an array");
    std::vector<std::vector<std::vector<std::vector<Rational>>>> raw(static_cast<size_t>(n));
    for (auto& r : raw) r.resize(static_cast<size_t>(n));
    for (const auto& e : edges) {
      if (!e.is_object() || !e.contains("p") || !e.contains("q") || !e.contains("matrix")) {
        throw ParseError("each edge needs \"p\", \"q\" and \"matrix\"");
      }
      if (!e["p"].is_number_integer() || !e["q"].is_number_integer()) throw ParseError("edge endpoints must be integers");
      const auto p = e["p"].get<std::int64_t>();
      const auto q = e["q"].get<std::int64_t>();
      if (p < 0 || q < 0 || p >= n || q >= n || p == q) throw ParseError("edge endpoints out of range");
      auto& slot = raw[static_cast<size_t>(p)][static_cast<size_t>(q)];
      if (!slot.empty()) throw ParseError("duplicate edge");
      const auto& mat = e["matrix"];
      if (!mat.is_array() || mat.size() != static_cast<size_t>(actions[static_cast<size_t>(p)])) {
        throw ParseError("edge matrix must have |S_p| rows");
      }
      for (const auto& row : mat) {
        if (!row.is_array() || row.size() != static_cast<size_t>(actions[static_cast<size_t>(q)])) {
          throw ParseError("ragged edge matrix: rows must have |S_q| entries");
        }
        std::vector<Rational> r;
        for (const auto& v : row) r.push_back(utility_from_json(v));
        slot.push_back(std::move(r));
      }
    }
    g.edges_.assign(static_cast<size_t>(n), std::vector<Game::Matrix>(static_cast<size_t>(n)));
    for (size_t p = 0; p < static_cast<size_t>(n); ++p) {
      std::vector<const Rational*> ptrs;
      for (const auto& m : raw[p]) for (const auto& row : m) for (const auto& v : row) ptrs.push_back(&v);
      const Rational scale(common_denominator(ptrs));
      Rational total_shift = 0;
      for (size_t q = 0; q < static_cast<size_t>(n); ++q) {
        const auto& m = raw[p][q];
        if (m.empty()) continue;
        Rational lo = m[0][0];
        for (const auto& row : m) for (const auto& v : row) lo = std::min(lo, v);
        lo *= scale;
        const Rational shift = sgn(lo) < 0 ? Rational(-lo) : Rational(0);
        total_shift += shift;
        Game::Matrix out;
        for (const auto& row : m) {
          std::vector<Integer> r;
          for (const auto& v : row) r.push_back(to_integer(v * scale + shift));
          out.push_back(std::move(r));
        }
        g.edges_[p][q] = std::move(out);
      }
      g.integerization_[p] = {scale, total_shift};
    }
  } else {
    throw ParseError("unknown game type '" + type + "' (expected \"nfg\" or \"polymatrix\")");
  }
  g.finalize();
  return g;
}

Game load_game(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return load_game(doc);
}

Game random_game(const RandomGameSpec& spec, std::uint64_t seed) {
  if (spec.players < 1 || spec.actions < 1 || spec.u_max < 0) {
    throw InvalidArgument("random game needs players >= 1, actions >= 1, u_max >= 0");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> draw(0, spec.u_max);
  const auto n = static_cast<size_t>(spec.players);
  const auto m = static_cast<size_t>(spec.actions);
  std::vector<int> actions(n, spec.actions);
  if (spec.family == GameFamily::kNormalForm) {
    Integer total = 1;
    for (size_t p = 0; p < n; ++p) total *= spec.actions;
    if (total > Integer(1) << 26) throw InvalidArgument("normal-form table too large");
    std::vector<std::vector<Integer>> table(n);
    for (auto& row : table) {
      row.reserve(total.get_ui());
      for (unsigned long k = 0; k < total.get_ui(); ++k) row.emplace_back(static_cast<long>(draw(rng)));
    }
    return Game::normal_form(std::move(actions), std::move(table));
  }
  std::vector<std::vector<Game::Matrix>> edges(n, std::vector<Game::Matrix>(n));
  for (size_t p = 0; p < n; ++p) {
    for (size_t q = 0; q < n; ++q) {
      if (p == q) continue;
      Game::Matrix a(m, std::vector<Integer>(m));
      for (auto& row : a) for (auto& v : row) v = static_cast<long>(draw(rng));
      edges[p][q] = std::move(a);
    }
  }
  return Game::polymatrix(std::move(actions), std::move(edges));
}

std::vector<PureProfile> all_profiles(const Game& g, std::uint64_t limit) {
  const Integer m = g.num_profiles();
  if (m > Integer(std::to_string(limit))) throw InvalidArgument("too many profiles to enumerate: " + m.get_str());
  std::vector<PureProfile> out;
  out.reserve(m.get_ui());
  PureProfile s{std::vector<int>(static_cast<size_t>(g.num_players()), 0)};
  const auto& acts = g.actions();
  while (true) {
    out.push_back(s);
    int p = g.num_players() - 1;
    while (p >= 0) {
      auto& a = s.actions[static_cast<size_t>(p)];
      if (++a < acts[static_cast<size_t>(p)]) break;
      a = 0;
      --p;
    }
    if (p < 0) break;
  }
  return out;
}

}  // namespace exactce
