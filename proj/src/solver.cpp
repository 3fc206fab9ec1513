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

#include "exactce/solver.hpp"

#include <chrono>
#include <cmath>

#include "exactce/bigfloat.hpp"
#include "exactce/lp.hpp"

namespace exactce {
namespace {

constexpr std::uint64_t kBruteForceLimit = 4096;

std::vector<Rational> dense_normal(const Cut& c, size_t n) {
  std::vector<Rational> v(n, Rational(0));
  for (const auto& [k, coef] : c.constraint.normal) v[k] = coef;
  return v;
}

void finish_purified(const Game& g, SparseCE ce, SolveReport& report) {
  const CEVerdict v = verify_ce(g, ce);
  if (!v.verdict) throw InternalError("solver produced a certificate that fails verification: " + v.reason);
  if (ce.support_size() > support_bound(g)) throw InternalError("certificate exceeds the support bound");
  report.verified = true;
  report.worst_row = v.worst_row;
  report.worst_value = v.worst_value;
  report.epsilon = 0;
  report.support = ce.support_size();
  report.ce = std::move(ce);
}

}  // namespace

void SolveConfig::validate() const {
  if (mode == Mode::kTheoretical && oracle != OracleKind::kPurified) {
    throw InvalidArgument("theoretical mode requires the purified oracle");
  }
  if (precision_bits < 32) throw InvalidArgument("precision must be at least 32 bits");
  if (max_iters < 1) throw InvalidArgument("max_iters must be at least 1");
}

SparseCE brute_force_ce(const Game& g) {
  if (g.num_profiles() > kBruteForceLimit) throw InvalidArgument("brute force is limited to 4096 profiles");
  CutLP lp{RowSpace(g.actions()).size(), {}};
  for (const auto& s : all_profiles(g)) lp.add(column(g, s));
  if (!is_feasible(lp)) throw InternalError("full CE program is infeasible");
  return feasible_bfs(lp);
}

std::vector<Rational> mixture_incentives(const Game& g, const ProductMixture& m) {
  std::vector<Rational> total(RowSpace(g.actions()).size(), Rational(0));
  for (size_t k = 0; k < m.components.size(); ++k) {
    if (sgn(m.weights[k]) == 0) continue;
    const auto v = x_dot_UT(g, m.components[k]);
    for (size_t r = 0; r < v.size(); ++r) total[r] += m.weights[k] * v[r];
  }
  return total;
}

SolveReport compute_exact_ce(const Game& g, const SolveConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const RowSpace rows(g.actions());
  const size_t n = rows.size();

  EllipsoidParams params;
  if (cfg.mode == Mode::kTheoretical) {
    params = theoretical_params(n, g.max_utility(), cfg.max_iters, cfg.precision_bits);
  } else {
    params.r_log2 = cfg.practical_r_log2;
    params.max_iters = cfg.max_iters;
    params.precision_bits = cfg.precision_bits;
  }
  params.track_log_det = cfg.track_log_det;
  params.query_bits = cfg.query_bits;

  SolveReport report;
  report.config = cfg;

  SeparationOracle oracle;
  if (cfg.oracle == OracleKind::kPurified) {
    oracle = [&g, tb = cfg.tie_break](const DualVector& y) { return purified_separation(g, y, tb); };
  } else {
    oracle = [&g](const DualVector& y) { return product_separation(g, y); };
  }

  // Practical mode probes the restricted program after every new cut.
  CutLP lp{n, {}};
  std::vector<std::vector<Rational>> product_columns;
  std::vector<ProductDistribution> product_components;
  std::optional<std::vector<Rational>> product_weights;
  StopCheck stop;
  if (cfg.mode == Mode::kPractical) {
    if (cfg.oracle == OracleKind::kPurified) {
      stop = [&](const Transcript& t) {
        const auto* pc = std::get_if<ProfileCut>(&t.entries.back().cut.kind);
        if (pc == nullptr || !lp.add(column(g, pc->profile))) return false;
        return is_feasible(lp);
      };
    } else {
      stop = [&](const Transcript& t) {
        const auto* xc = std::get_if<ProductCut>(&t.entries.back().cut.kind);
        if (xc == nullptr) return false;
        product_columns.push_back(dense_normal(t.entries.back().cut, n));
        product_components.push_back(xc->x);
        // The mixture program only grows, so probing on a doubling schedule
        // finds feasibility at most a factor two late.
        const size_t count = product_columns.size();
        if ((count & (count - 1)) != 0) return false;
        product_weights = convex_feasible_point(product_columns, n);
        return product_weights.has_value();
      };
    }
  }

  RunResult run_result = run(n, params, oracle, stop);
  report.iterations = run_result.transcript.iterations();
  report.distinct_cuts = cfg.oracle == OracleKind::kPurified ? run_result.transcript.distinct_profiles.size()
                                                             : product_components.size();
  report.stop_reason = run_result.stop_reason;

  if (cfg.oracle == OracleKind::kPurified) {
    CutLP collected{n, {}};
    for (const auto& s : run_result.transcript.distinct_profiles) collected.add(column(g, s));
    if (!collected.columns.empty() && is_feasible(collected)) {
      finish_purified(g, feasible_bfs(collected), report);
    } else if (cfg.brute_force_fallback && g.num_profiles() <= kBruteForceLimit) {
      report.used_fallback = true;
      finish_purified(g, brute_force_ce(g), report);
    } else {
      throw IterationCapError("ellipsoid stopped (" + run_result.stop_reason +
                                  ") before the collected cuts admitted a correlated equilibrium",
                              std::move(run_result.transcript));
    }
  } else {
    if (cfg.mode == Mode::kTheoretical) throw InternalError("theoretical product mode is rejected by validate()");
    if (product_components.empty()) {
      throw IterationCapError("product oracle produced no product cuts", std::move(run_result.transcript));
    }
    ProductMixture mix;
    mix.components = product_components;
    if (product_weights) {
      mix.weights = *product_weights;
    } else {
      mix.weights = min_violation_mixture(product_columns, n).weights;
    }
    // Prune zero-weight components; epsilon is recomputed from scratch.
    ProductMixture pruned;
    for (size_t k = 0; k < mix.weights.size(); ++k) {
      if (sgn(mix.weights[k]) > 0) {
        pruned.weights.push_back(mix.weights[k]);
        pruned.components.push_back(mix.components[k]);
      }
    }
    const auto inc = mixture_incentives(g, pruned);
    report.epsilon = 0;
    bool have = false;
    for (size_t r = 0; r < n; ++r) {
      const RowIndex ri = rows.row(r);
      if (ri.i == ri.j) continue;
      if (!have || inc[r] < report.worst_value) {
        report.worst_value = inc[r];
        report.worst_row = ri;
        have = true;
      }
    }
    if (have && sgn(report.worst_value) < 0) report.epsilon = -report.worst_value;
    report.verified = sgn(report.epsilon) == 0;
    report.support = pruned.components.size();
    report.mixture = std::move(pruned);
  }
  report.transcript = std::move(run_result.transcript);
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

Integer iteration_bound_coefficient(const Integer& n) {
  if (n < 1) throw InvalidArgument("N must be positive");
  const Integer n4 = n * n * n * n;
  return 5 * n * (5 * n4 + 7 * n4 * n);
}

Integer iteration_bound(const Integer& n, const Integer& u) {
  const Integer coef = iteration_bound_coefficient(n);
  const Integer uu = u < 2 ? Integer(2) : u;
  // Enough bits that the rounding error stays far below one unit.
  const auto bits = static_cast<mpfr_prec_t>(mpz_sizeinbase(coef.get_mpz_t(), 2) + mpz_sizeinbase(uu.get_mpz_t(), 2) + 128);
  BigFloat lu(Rational(uu), bits);
  lu = log(lu);
  lu *= BigFloat(Rational(coef), bits);
  Integer out;
  mpfr_get_z(out.get_mpz_t(), lu.get(), MPFR_RNDU);
  return out;
}

nlohmann::json to_json(const SolveReport& r, bool include_transcript) {
  nlohmann::json doc{
      {"oracle", to_string(r.config.oracle)},
      {"mode", to_string(r.config.mode)},
      {"tie_break", to_string(r.config.tie_break)},
      {"precision_bits", r.config.precision_bits},
      {"iterations", r.iterations},
      {"distinct_cuts", r.distinct_cuts},
      {"support", r.support},
      {"epsilon", to_string(r.epsilon)},
      {"verified", r.verified},
      {"used_fallback", r.used_fallback},
      {"worst_row", {r.worst_row.player, r.worst_row.i, r.worst_row.j}},
      {"worst_value", to_string(r.worst_value)},
      {"stop_reason", r.stop_reason},
      {"wall_ms", r.wall_ms},
  };
  if (r.ce) doc["ce"] = to_json(*r.ce);
  if (r.mixture) {
    nlohmann::json mix = nlohmann::json::array();
    for (size_t k = 0; k < r.mixture->components.size(); ++k) {
      nlohmann::json strat = nlohmann::json::array();
      for (const auto& v : r.mixture->components[k].strategies) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& p : v) row.push_back(to_string(p));
        strat.push_back(std::move(row));
      }
      mix.push_back({{"weight", to_string(r.mixture->weights[k])}, {"strategies", std::move(strat)}});
    }
    doc["mixture"] = std::move(mix);
  }
  if (include_transcript) {
    nlohmann::json t = nlohmann::json::array();
    std::string lines = to_jsonl(r.transcript);
    size_t start = 0;
    while (start < lines.size()) {
      const size_t end = lines.find('\n', start);
      t.push_back(nlohmann::json::parse(lines.substr(start, end - start)));
      start = end + 1;
    }
    doc["transcript"] = std::move(t);
  }
  return doc;
}

Mode parse_mode(const std::string& name) {
  if (name == "practical") return Mode::kPractical;
  if (name == "theoretical") return Mode::kTheoretical;
  throw InvalidArgument("unknown mode '" + name + "' (practical, theoretical)");
}

OracleKind parse_oracle(const std::string& name) {
  if (name == "purified") return OracleKind::kPurified;
  if (name == "product") return OracleKind::kProduct;
  throw InvalidArgument("unknown oracle '" + name + "' (purified, product)");
}

std::string to_string(Mode m) { return m == Mode::kPractical ? "practical" : "theoretical"; }
std::string to_string(OracleKind o) { return o == OracleKind::kPurified ? "purified" : "product"; }

}  // namespace exactce
