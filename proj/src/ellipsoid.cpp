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

#include "exactce/ellipsoid.hpp"

#include <cmath>
#include <numbers>

#include "json.hpp"

#include "exactce/error.hpp"

namespace exactce {
namespace {

BigFloat exp2_of(double log2_value, unsigned bits) {
  BigFloat r(static_cast<mpfr_prec_t>(bits));
  mpfr_set_d(r.get(), log2_value, MPFR_RNDN);
  mpfr_exp2(r.get(), r.get(), MPFR_RNDN);
  return r;
}

std::vector<std::pair<size_t, Rational>> sparsify(const std::vector<Rational>& dense) {
  std::vector<std::pair<size_t, Rational>> out;
  for (size_t k = 0; k < dense.size(); ++k) {
    if (sgn(dense[k]) != 0) out.emplace_back(k, dense[k]);
  }
  return out;
}

}  // namespace

double log_unit_ball_volume(size_t n) {
  const double half = static_cast<double>(n) / 2.0;
  return half * std::log(std::numbers::pi) - std::lgamma(half + 1.0);
}

EllipsoidParams theoretical_params(size_t n, const Integer& u_max, size_t max_iters, unsigned precision_bits) {
  const double u = u_max < 2 ? 2.0 : u_max.get_d();
  const double nn = static_cast<double>(n);
  EllipsoidParams p;
  p.r_log2 = 5.0 * nn * nn * nn * std::log2(u);
  p.v_log = log_unit_ball_volume(n) - 7.0 * std::pow(nn, 5) * std::log(u);
  p.max_iters = max_iters;
  p.precision_bits = precision_bits;
  return p;
}

EllipsoidState EllipsoidState::ball(size_t n, double r_log2, unsigned precision_bits) {
  if (n == 0) throw InvalidArgument("ellipsoid dimension must be positive");
  const auto bits = static_cast<mpfr_prec_t>(precision_bits);
  EllipsoidState s;
  s.precision_bits = precision_bits;
  s.center.assign(n, BigFloat(bits));
  s.shape.assign(n, std::vector<BigFloat>(n, BigFloat(bits)));
  const BigFloat r2 = exp2_of(2.0 * r_log2, precision_bits);
  for (size_t i = 0; i < n; ++i) s.shape[i][i] = r2;
  s.log_volume = log_unit_ball_volume(n) + static_cast<double>(n) * r_log2 * std::numbers::ln2;
  return s;
}

DualVector EllipsoidState::snapshot(unsigned bits) const {
  DualVector y;
  y.reserve(center.size());
  for (const auto& c : center) {
    if (bits == 0 || bits >= static_cast<unsigned>(c.precision())) {
      y.push_back(c.to_rational());
      continue;
    }
    BigFloat r(static_cast<mpfr_prec_t>(bits));
    mpfr_set(r.get(), c.get(), MPFR_RNDN);
    y.push_back(r.to_rational());
  }
  return y;
}

BigFloat log_det(const std::vector<std::vector<BigFloat>>& shape) {
  const size_t n = shape.size();
  const auto bits = n ? shape[0][0].precision() : 256;
  std::vector<std::vector<BigFloat>> l(n, std::vector<BigFloat>(n, BigFloat(bits)));
  BigFloat total(bits);
  for (size_t j = 0; j < n; ++j) {
    BigFloat d = shape[j][j];
    for (size_t k = 0; k < j; ++k) d -= l[j][k] * l[j][k];
    if (d.sign() <= 0) throw PrecisionError("ellipsoid shape lost positive definiteness; increase precision");
    l[j][j] = sqrt(d);
    total += log(d);
    for (size_t i = j + 1; i < n; ++i) {
      BigFloat s = shape[i][j];
      for (size_t k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
      l[i][j] = s / l[j][j];
    }
  }
  return total;
}

double analytic_log_volume_ratio(size_t n) {
  if (n == 1) return -std::numbers::ln2;
  const double d = static_cast<double>(n);
  return 0.5 * (d * std::log(d * d / (d * d - 1.0)) + std::log((d - 1.0) / (d + 1.0)));
}

EllipsoidState update(const EllipsoidState& state, const std::vector<std::pair<size_t, Rational>>& normal) {
  const size_t n = state.dimension();
  if (normal.empty()) throw InvalidArgument("cut normal must be nonzero");
  const auto bits = static_cast<mpfr_prec_t>(state.precision_bits);
  std::vector<std::pair<size_t, BigFloat>> a;
  for (const auto& [k, v] : normal) {
    if (k >= n) throw InvalidArgument("cut normal index out of range");
    if (sgn(v) != 0) a.emplace_back(k, BigFloat(v, bits));
  }
  if (a.empty()) throw InvalidArgument("cut normal must be nonzero");

  std::vector<BigFloat> shape_a(n, BigFloat(bits));
  for (size_t i = 0; i < n; ++i) {
    for (const auto& [k, v] : a) shape_a[i] += state.shape[i][k] * v;
  }
  BigFloat quad(bits);
  for (const auto& [k, v] : a) quad += v * shape_a[k];
  if (quad.sign() <= 0) throw PrecisionError("a^T shape a is not positive; increase precision");
  const BigFloat root = sqrt(quad);
  for (auto& e : shape_a) e /= root;  // now b

  EllipsoidState next;
  next.precision_bits = state.precision_bits;
  next.iteration = state.iteration + 1;
  next.log_volume = state.log_volume + analytic_log_volume_ratio(n);
  const BigFloat n1(static_cast<long>(n + 1), bits);
  next.center = state.center;
  for (size_t i = 0; i < n; ++i) next.center[i] -= shape_a[i] / n1;

  next.shape.assign(n, std::vector<BigFloat>(n, BigFloat(bits)));
  if (n == 1) {
    next.shape[0][0] = state.shape[0][0] / BigFloat(4, bits);
    return next;
  }
  const auto nl = static_cast<long>(n);
  const BigFloat scale = BigFloat(nl * nl, bits) / BigFloat(nl * nl - 1, bits);
  const BigFloat two_over = BigFloat(2, bits) / n1;
  for (size_t i = 0; i < n; ++i) {
    const BigFloat bi = two_over * shape_a[i];
    for (size_t j = i; j < n; ++j) {
      BigFloat v = scale * (state.shape[i][j] - bi * shape_a[j]);
      if (j != i) next.shape[j][i] = v;
      next.shape[i][j] = std::move(v);
    }
  }
  return next;
}

EllipsoidState update(const EllipsoidState& state, const std::vector<Rational>& dense_normal) {
  if (dense_normal.size() != state.dimension()) throw InvalidArgument("cut normal has wrong dimension");
  return update(state, sparsify(dense_normal));
}

RunResult run(size_t n, const EllipsoidParams& params, const SeparationOracle& oracle, const StopCheck& stop) {
  if (params.max_iters < 1) throw InvalidArgument("max_iters must be at least 1");
  EllipsoidState state = EllipsoidState::ball(n, params.r_log2, params.precision_bits);
  const auto bits = static_cast<mpfr_prec_t>(params.precision_bits);
  const BigFloat tolerance = exp2_of(-static_cast<double>(params.precision_bits) / 2.0, params.precision_bits);
  BigFloat prev_log_det = params.track_log_det ? log_det(state.shape) : BigFloat(bits);

  RunResult result;
  auto& transcript = result.transcript;
  auto finish = [&](Outcome o, std::string reason) {
    result.outcome = o;
    result.stop_reason = std::move(reason);
    result.final_log_volume = state.log_volume;
    return result;
  };

  for (size_t it = 0; it < params.max_iters; ++it) {
    TranscriptEntry entry;
    entry.iteration = it;
    entry.query = state.snapshot(params.query_bits);
    entry.cut = oracle(entry.query);

    BigFloat violation = -BigFloat(entry.cut.constraint.rhs, bits);
    for (const auto& [k, v] : entry.cut.constraint.normal) {
      if (k >= n) throw InternalError("oracle returned a cut of the wrong dimension");
      violation += BigFloat(v, bits) * state.center[k];
    }
    if (violation < -tolerance) {
      throw InternalError("oracle cut is not violated at the ellipsoid center (value " + violation.to_string() + ")");
    }
    entry.violation = violation.to_string(30);
    if (const auto* pc = std::get_if<ProfileCut>(&entry.cut.kind)) {
      bool seen = false;
      for (const auto& s : transcript.distinct_profiles) seen = seen || s == pc->profile;
      if (!seen) transcript.distinct_profiles.push_back(pc->profile);
    }
    const bool zero_normal = entry.cut.constraint.is_zero();
    const Rational rhs = entry.cut.constraint.rhs;
    transcript.entries.push_back(std::move(entry));

    if (stop && stop(transcript)) return finish(Outcome::kInfeasibleOrShallow, "restricted program feasible");
    if (zero_normal) {
      if (sgn(rhs) < 0) return finish(Outcome::kInfeasibleOrShallow, "cut with zero normal is unsatisfiable");
      throw InternalError("oracle returned a trivially satisfied cut");
    }

    state = update(state, transcript.entries.back().cut.constraint.normal);
    if (params.track_log_det) {
      BigFloat ld = log_det(state.shape);
      transcript.entries.back().log_volume_drop = ((prev_log_det - ld) / BigFloat(2, bits)).to_double();
      prev_log_det = std::move(ld);
    } else {
      transcript.entries.back().log_volume_drop = -analytic_log_volume_ratio(n);
    }
    if (params.v_log && state.log_volume < *params.v_log) {
      return finish(Outcome::kInfeasibleOrShallow, "volume below stopping threshold");
    }
  }
  return finish(Outcome::kIterationCapReached, "iteration cap reached");
}

std::string to_jsonl(const Transcript& t) {
  std::string out;
  for (const auto& e : t.entries) {
    nlohmann::json rec{{"iter", e.iteration}, {"cut", e.cut.kind_name()}, {"violation", e.violation}};
    if (const auto* pc = std::get_if<ProfileCut>(&e.cut.kind)) {
      rec["profile"] = pc->profile.actions;
    } else if (const auto* nc = std::get_if<NonnegativityCut>(&e.cut.kind)) {
      rec["row"] = {nc->row.player, nc->row.i, nc->row.j};
    } else {
      const auto& x = std::get<ProductCut>(e.cut.kind).x;
      nlohmann::json strat = nlohmann::json::array();
      for (const auto& v : x.strategies) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& p : v) row.push_back(to_string(p));
        strat.push_back(std::move(row));
      }
      rec["x"] = std::move(strat);
    }
    out += rec.dump();
    out += '\n';
  }
  return out;
}

}  // namespace exactce
