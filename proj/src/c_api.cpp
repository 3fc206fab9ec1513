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

#include "exactce/exactce.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "exactce/error.hpp"
#include "exactce/game.hpp"
#include "exactce/incentive.hpp"
#include "exactce/solver.hpp"

struct exactce_game {
  exactce::Game game;
};

struct exactce_report {
  exactce::SolveReport report;
};

namespace {

thread_local std::string g_last_error;

exactce_status fail(exactce_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class F>
exactce_status guarded(F&& body) {
  try {
    return body();
  } catch (const exactce::ParseError& e) {
    return fail(EXACTCE_ERR_PARSE, e.what());
  } catch (const exactce::InvalidArgument& e) {
    return fail(EXACTCE_ERR_INVALID_ARGUMENT, e.what());
  } catch (const exactce::PrecisionError& e) {
    return fail(EXACTCE_ERR_PRECISION, e.what());
  } catch (const exactce::IterationCapError& e) {
    return fail(EXACTCE_ERR_ITERATION_CAP, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(EXACTCE_ERR_PARSE, e.what());
  } catch (const std::exception& e) {
    return fail(EXACTCE_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(EXACTCE_ERR_INTERNAL, "unknown error");
  }
}

exactce::SolveConfig to_config(const exactce_solve_config& c) {
  exactce::SolveConfig cfg;
  cfg.mode = c.mode == EXACTCE_MODE_THEORETICAL ? exactce::Mode::kTheoretical : exactce::Mode::kPractical;
  cfg.oracle = c.oracle == EXACTCE_ORACLE_PRODUCT ? exactce::OracleKind::kProduct : exactce::OracleKind::kPurified;
  switch (c.tie_break) {
    case EXACTCE_TIE_MAX_VALUE: cfg.tie_break = exactce::TieBreak::kMaxValue; break;
    case EXACTCE_TIE_WELFARE: cfg.tie_break = exactce::TieBreak::kWelfare; break;
    default: cfg.tie_break = exactce::TieBreak::kFirst; break;
  }
  cfg.precision_bits = c.precision_bits;
  cfg.max_iters = static_cast<size_t>(c.max_iters);
  cfg.seed = c.seed;
  cfg.brute_force_fallback = c.brute_force_fallback != 0;
  return cfg;
}

}  // namespace

extern "C" {

const char* exactce_version(void) { return "0.1.0"; }

const char* exactce_last_error(void) { return g_last_error.c_str(); }

void exactce_string_free(char* s) { std::free(s); }

exactce_status exactce_game_from_json(const char* text, exactce_game** out) {
  if (text == nullptr || out == nullptr) return fail(EXACTCE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new exactce_game{exactce::load_game(std::string_view(text))};
    return EXACTCE_OK;
  });
}

exactce_status exactce_game_from_file(const char* path, exactce_game** out) {
  if (path == nullptr || out == nullptr) return fail(EXACTCE_ERR_INVALID_ARGUMENT, "null argument");
  std::ifstream in(path);
  if (!in) return fail(EXACTCE_ERR_IO, std::string("cannot open ") + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return exactce_game_from_json(buf.str().c_str(), out);
}

exactce_status exactce_game_random(exactce_family family, int players, int actions, int64_t u_max, uint64_t seed,
                                   exactce_game** out) {
  if (out == nullptr) return fail(EXACTCE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    exactce::RandomGameSpec spec;
    spec.family = family == EXACTCE_FAMILY_POLYMATRIX ? exactce::GameFamily::kPolymatrix
                                                      : exactce::GameFamily::kNormalForm;
    spec.players = players;
    spec.actions = actions;
    spec.u_max = u_max;
    *out = new exactce_game{exactce::random_game(spec, seed)};
    return EXACTCE_OK;
  });
}

exactce_status exactce_game_to_json(const exactce_game* game, char** out) {
  if (game == nullptr || out == nullptr) return fail(EXACTCE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = copy_string(game->game.to_json().dump());
    return EXACTCE_OK;
  });
}

int exactce_game_num_players(const exactce_game* game) { return game ? game->game.num_players() : 0; }

int exactce_game_num_actions(const exactce_game* game, int player) {
  if (game == nullptr || player < 0 || player >= game->game.num_players()) return 0;
  return game->game.num_actions(player);
}

exactce_status exactce_game_max_utility(const exactce_game* game, char** out) {
  if (game == nullptr || out == nullptr) return fail(EXACTCE_ERR_INVALID_ARGUMENT, "null argument");
  *out = copy_string(game->game.max_utility().get_str());
  return EXACTCE_OK;
}

void exactce_game_free(exactce_game* game) { delete game; }

void exactce_solve_config_init(exactce_solve_config* cfg) {
  if (cfg == nullptr) return;
  const exactce::SolveConfig d;
  cfg->mode = EXACTCE_MODE_PRACTICAL;
  cfg->oracle = EXACTCE_ORACLE_PURIFIED;
  cfg->tie_break = EXACTCE_TIE_FIRST;
  cfg->precision_bits = d.precision_bits;
  cfg->max_iters = d.max_iters;
  cfg->seed = 0;
  cfg->brute_force_fallback = 0;
}

exactce_status exactce_solve(const exactce_game* game, const exactce_solve_config* cfg, exactce_report** out) {
  if (game == nullptr || cfg == nullptr || out == nullptr) return fail(EXACTCE_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    const exactce::SolveConfig config = to_config(*cfg);
    try {
      *out = new exactce_report{exactce::compute_exact_ce(game->game, config)};
    } catch (const exactce::IterationCapError& e) {
      auto* partial = new exactce_report{};
      partial->report.config = config;
      partial->report.transcript = e.transcript();
      partial->report.iterations = e.transcript().iterations();
      partial->report.distinct_cuts = e.transcript().distinct_profiles.size();
      partial->report.stop_reason = e.what();
      *out = partial;
      throw;
    }
    return EXACTCE_OK;
  });
}

int exactce_report_has_certificate(const exactce_report* r) {
  return r != nullptr && (r->report.ce.has_value() || r->report.mixture.has_value());
}
uint64_t exactce_report_iterations(const exactce_report* r) { return r ? r->report.iterations : 0; }
uint64_t exactce_report_distinct_cuts(const exactce_report* r) { return r ? r->report.distinct_cuts : 0; }
uint64_t exactce_report_support(const exactce_report* r) { return r ? r->report.support : 0; }
int exactce_report_verified(const exactce_report* r) { return r != nullptr && r->report.verified; }
double exactce_report_wall_ms(const exactce_report* r) { return r ? r->report.wall_ms : 0.0; }

exactce_status exactce_report_epsilon(const exactce_report* r, char** out) {
  if (r == nullptr || out == nullptr) return fail(EXACTCE_ERR_INVALID_ARGUMENT, "null argument");
  *out = copy_string(exactce::to_string(r->report.epsilon));
  return EXACTCE_OK;
}

exactce_status exactce_report_to_json(const exactce_report* r, int include_transcript, char** out) {
  if (r == nullptr || out == nullptr) return fail(EXACTCE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = copy_string(exactce::to_json(r->report, include_transcript != 0).dump(2));
    return EXACTCE_OK;
  });
}

exactce_status exactce_report_certificate_json(const exactce_report* r, char** out) {
  if (r == nullptr || out == nullptr) return fail(EXACTCE_ERR_INVALID_ARGUMENT, "null argument");
  if (!r->report.ce) return fail(EXACTCE_ERR_INVALID_ARGUMENT, "report carries no pure-profile certificate");
  return guarded([&] {
    *out = copy_string(exactce::to_json(*r->report.ce).dump(2));
    return EXACTCE_OK;
  });
}

exactce_status exactce_report_transcript_jsonl(const exactce_report* r, char** out) {
  if (r == nullptr || out == nullptr) return fail(EXACTCE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = copy_string(exactce::to_jsonl(r->report.transcript));
    return EXACTCE_OK;
  });
}

void exactce_report_free(exactce_report* r) { delete r; }

exactce_status exactce_verify(const exactce_game* game, const char* certificate_json, exactce_verification* out) {
  if (game == nullptr || certificate_json == nullptr || out == nullptr) {
    return fail(EXACTCE_ERR_INVALID_ARGUMENT, "null argument");
  }
  *out = exactce_verification{};
  return guarded([&] {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(certificate_json);
    } catch (const nlohmann::json::parse_error& e) {
      throw exactce::ParseError(std::string("malformed certificate JSON: ") + e.what());
    }
    const exactce::SparseCE ce = exactce::sparse_ce_from_json(doc);
    for (const auto& a : ce.atoms) {
      if (a.profile.size() != static_cast<size_t>(game->game.num_players())) {
        throw exactce::InvalidArgument("certificate profile length does not match the game");
      }
    }
    const exactce::CEVerdict v = exactce::verify_ce(game->game, ce);
    out->verdict = v.verdict ? 1 : 0;
    out->normalized = v.normalized ? 1 : 0;
    out->worst_player = v.worst_row.player;
    out->worst_i = v.worst_row.i;
    out->worst_j = v.worst_row.j;
    out->worst_value = copy_string(exactce::to_string(v.worst_value));
    out->reason = copy_string(v.reason);
    return EXACTCE_OK;
  });
}

void exactce_verification_clear(exactce_verification* v) {
  if (v == nullptr) return;
  std::free(v->worst_value);
  std::free(v->reason);
  v->worst_value = nullptr;
  v->reason = nullptr;
}

exactce_status exactce_iteration_bound(uint64_t n, uint64_t u, char** out) {
  if (out == nullptr) return fail(EXACTCE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = copy_string(exactce::iteration_bound(exactce::Integer(std::to_string(n)), exactce::Integer(std::to_string(u))).get_str());
    return EXACTCE_OK;
  });
}

}  // extern "C"
