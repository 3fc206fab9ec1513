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

// Command-line front end over the C API: solve, verify, gen, bench.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "exactce/exactce.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitError = 2;

struct GameDeleter {
  void operator()(exactce_game* g) const { exactce_game_free(g); }
};
struct ReportDeleter {
  void operator()(exactce_report* r) const { exactce_report_free(r); }
};
using GamePtr = std::unique_ptr<exactce_game, GameDeleter>;
using ReportPtr = std::unique_ptr<exactce_report, ReportDeleter>;

std::string take(char* s) {
  std::string out = s ? s : "";
  exactce_string_free(s);
  return out;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) return false;
  out << text;
  return static_cast<bool>(out);
}

bool read_file(const std::string& path, std::string& text) {
  std::ifstream in(path);
  if (!in) return false;
  std::stringstream buf;
  buf << in.rdbuf();
  text = buf.str();
  return true;
}

int error(const std::string& what) {
  std::cerr << "error: " << what << "\n";
  return kExitError;
}

unsigned default_precision() {
  if (const char* env = std::getenv("EXACTCE_PRECISION")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 32) return static_cast<unsigned>(v);
  }
  return 256;
}

exactce_family parse_family(const std::string& s) {
  return s == "polymatrix" ? EXACTCE_FAMILY_POLYMATRIX : EXACTCE_FAMILY_NORMAL_FORM;
}

exactce_oracle parse_oracle(const std::string& s) {
  return s == "product" ? EXACTCE_ORACLE_PRODUCT : EXACTCE_ORACLE_PURIFIED;
}

exactce_tie_break parse_tie(const std::string& s) {
  if (s == "max-value") return EXACTCE_TIE_MAX_VALUE;
  if (s == "welfare") return EXACTCE_TIE_WELFARE;
  return EXACTCE_TIE_FIRST;
}

struct SolveArgs {
  std::string input;
  std::string mode = "practical";
  std::string oracle = "purified";
  std::string tie_break = "first";
  unsigned precision = 256;
  uint64_t max_iters = 20000;
  std::string output;
  std::string transcript;
  bool fallback = false;
};

int cmd_solve(const SolveArgs& a) {
  exactce_game* raw = nullptr;
  if (exactce_game_from_file(a.input.c_str(), &raw) != EXACTCE_OK) return error(exactce_last_error());
  GamePtr game(raw);

  exactce_solve_config cfg;
  exactce_solve_config_init(&cfg);
  cfg.mode = a.mode == "theoretical" ? EXACTCE_MODE_THEORETICAL : EXACTCE_MODE_PRACTICAL;
  cfg.oracle = parse_oracle(a.oracle);
  cfg.tie_break = parse_tie(a.tie_break);
  cfg.precision_bits = a.precision;
  cfg.max_iters = a.max_iters;
  cfg.brute_force_fallback = a.fallback ? 1 : 0;

  exactce_report* rep_raw = nullptr;
  const exactce_status st = exactce_solve(game.get(), &cfg, &rep_raw);
  ReportPtr report(rep_raw);
  const std::string message = st == EXACTCE_OK ? "" : exactce_last_error();

  std::string transcript_path = a.transcript;
  if (transcript_path.empty() && st == EXACTCE_ERR_ITERATION_CAP) {
    transcript_path = (a.output.empty() ? std::string("exactce") : a.output) + ".transcript.jsonl";
  }
  if (report && !transcript_path.empty()) {
    char* lines = nullptr;
    if (exactce_report_transcript_jsonl(report.get(), &lines) == EXACTCE_OK &&
        !write_file(transcript_path, take(lines))) {
      return error("cannot write " + transcript_path);
    }
  }
  if (st != EXACTCE_OK) {
    if (st == EXACTCE_ERR_ITERATION_CAP) std::cerr << "transcript written to " << transcript_path << "\n";
    return error(message);
  }

  char* json = nullptr;
  if (exactce_report_to_json(report.get(), 0, &json) != EXACTCE_OK) return error(exactce_last_error());
  const std::string text = take(json) + "\n";
  std::ostream& summary = a.output.empty() ? std::cerr : std::cout;
  if (a.output.empty()) {
    std::cout << text;
  } else if (!write_file(a.output, text)) {
    return error("cannot write " + a.output);
  }
  char* eps = nullptr;
  exactce_report_epsilon(report.get(), &eps);
  summary << "iterations: " << exactce_report_iterations(report.get()) << "\n"
          << "distinct cuts: " << exactce_report_distinct_cuts(report.get()) << "\n"
          << "support: " << exactce_report_support(report.get()) << "\n"
          << "epsilon: " << take(eps) << "\n"
          << "verified: " << (exactce_report_verified(report.get()) ? "yes" : "no") << "\n";
  if (a.oracle == "purified" && !exactce_report_verified(report.get())) return kExitVerifyFailed;
  return kExitOk;
}

int cmd_verify(const std::string& input, const std::string& ce_path) {
  exactce_game* raw = nullptr;
  if (exactce_game_from_file(input.c_str(), &raw) != EXACTCE_OK) return error(exactce_last_error());
  GamePtr game(raw);
  std::string text;
  if (!read_file(ce_path, text)) return error("cannot open " + ce_path);
  exactce_verification v;
  if (exactce_verify(game.get(), text.c_str(), &v) != EXACTCE_OK) return error(exactce_last_error());
  int code = kExitOk;
  if (v.verdict) {
    std::cout << "valid correlated equilibrium\n";
  } else {
    code = kExitVerifyFailed;
    std::cout << "not a correlated equilibrium: " << v.reason << "\n";
    if (!v.normalized) std::cout << "normalization failure\n";
    std::cout << "worst row: player " << v.worst_player << ", recommended " << v.worst_i << " -> deviation "
              << v.worst_j << ", value " << v.worst_value << "\n";
  }
  exactce_verification_clear(&v);
  return code;
}

struct GenArgs {
  std::string family = "nfg";
  int players = 2;
  int actions = 2;
  int64_t umax = 10;
  uint64_t seed = 1;
  std::string output;
};

int cmd_gen(const GenArgs& a) {
  exactce_game* raw = nullptr;
  if (exactce_game_random(parse_family(a.family), a.players, a.actions, a.umax, a.seed, &raw) != EXACTCE_OK) {
    return error(exactce_last_error());
  }
  GamePtr game(raw);
  char* json = nullptr;
  if (exactce_game_to_json(game.get(), &json) != EXACTCE_OK) return error(exactce_last_error());
  const std::string text = take(json) + "\n";
  if (a.output.empty()) {
    std::cout << text;
  } else if (!write_file(a.output, text)) {
    return error("cannot write " + a.output);
  }
  return kExitOk;
}

struct BenchArgs {
  std::string family = "nfg";
  std::vector<std::string> sizes{"2x2"};
  std::string seeds = "1-10";
  std::vector<std::string> oracles{"purified", "product"};
  std::string tie_break = "first";
  int64_t umax = 10;
  unsigned precision = 256;
  uint64_t max_iters = 20000;
  uint64_t product_max_iters = 300;
  std::string csv;
};

// "5" means seeds 1..5; "3-7" is inclusive.
bool parse_seeds(const std::string& s, uint64_t& lo, uint64_t& hi) {
  const auto dash = s.find('-');
  try {
    if (dash == std::string::npos) {
      lo = 1;
      hi = std::stoull(s);
    } else {
      lo = std::stoull(s.substr(0, dash));
      hi = std::stoull(s.substr(dash + 1));
    }
  } catch (const std::exception&) {
    return false;
  }
  return lo <= hi;
}

bool parse_size(const std::string& s, int& players, int& actions) {
  const auto x = s.find('x');
  if (x == std::string::npos) return false;
  try {
    players = std::stoi(s.substr(0, x));
    actions = std::stoi(s.substr(x + 1));
  } catch (const std::exception&) {
    return false;
  }
  return players >= 1 && actions >= 1;
}

int cmd_bench(const BenchArgs& a) {
  uint64_t lo = 0;
  uint64_t hi = 0;
  if (!parse_seeds(a.seeds, lo, hi)) return error("bad --seeds '" + a.seeds + "'");
  std::ostringstream csv;
  csv << "family,n,actions,u,seed,oracle,tie_break,iterations,distinct_cuts,support,exact_epsilon,wall_ms,status\n";
  for (const auto& size : a.sizes) {
    int players = 0;
    int actions = 0;
    if (!parse_size(size, players, actions)) return error("bad size '" + size + "' (expected PLAYERSxACTIONS)");
    for (uint64_t seed = lo; seed <= hi; ++seed) {
      exactce_game* raw = nullptr;
      if (exactce_game_random(parse_family(a.family), players, actions, a.umax, seed, &raw) != EXACTCE_OK) {
        return error(exactce_last_error());
      }
      GamePtr game(raw);
      for (const auto& oracle : a.oracles) {
        exactce_solve_config cfg;
        exactce_solve_config_init(&cfg);
        cfg.oracle = parse_oracle(oracle);
        cfg.tie_break = parse_tie(a.tie_break);
        cfg.precision_bits = a.precision;
        cfg.max_iters = cfg.oracle == EXACTCE_ORACLE_PRODUCT ? a.product_max_iters : a.max_iters;
        cfg.seed = seed;
        exactce_report* rep_raw = nullptr;
        const exactce_status st = exactce_solve(game.get(), &cfg, &rep_raw);
        ReportPtr report(rep_raw);
        csv << a.family << ',' << players << ',' << actions << ',' << a.umax << ',' << seed << ',' << oracle << ','
            << a.tie_break << ',';
        if (st == EXACTCE_OK) {
          char* eps = nullptr;
          exactce_report_epsilon(report.get(), &eps);
          char ms[32];
          std::snprintf(ms, sizeof ms, "%.3f", exactce_report_wall_ms(report.get()));
          csv << exactce_report_iterations(report.get()) << ',' << exactce_report_distinct_cuts(report.get()) << ','
              << exactce_report_support(report.get()) << ',' << take(eps) << ',' << ms << ",ok\n";
        } else {
          csv << (report ? exactce_report_iterations(report.get()) : 0) << ','
              << (report ? exactce_report_distinct_cuts(report.get()) : 0) << ",,,,error-" << static_cast<int>(st)
              << "\n";
        }
      }
    }
  }
  if (a.csv.empty()) {
    std::cout << csv.str();
  } else if (!write_file(a.csv, csv.str())) {
    return error("cannot write " + a.csv);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact correlated equilibria with small support"};
  app.require_subcommand(1);

  SolveArgs solve;
  solve.precision = default_precision();
  auto* s = app.add_subcommand("solve", "Compute an exact correlated equilibrium");
  s->add_option("--input", solve.input, "Game JSON file")->required()->check(CLI::ExistingFile);
  s->add_option("--mode", solve.mode)->check(CLI::IsMember({"practical", "theoretical"}));
  s->add_option("--oracle", solve.oracle)->check(CLI::IsMember({"purified", "product"}));
  s->add_option("--tie-break", solve.tie_break)->check(CLI::IsMember({"first", "max-value", "welfare"}));
  s->add_option("--precision", solve.precision, "Ellipsoid precision in bits (env EXACTCE_PRECISION)")
      ->check(CLI::Range(32u, 1u << 20));
  s->add_option("--max-iters", solve.max_iters)->check(CLI::PositiveNumber);
  s->add_option("--output", solve.output, "Report path (default stdout)");
  s->add_option("--transcript", solve.transcript, "Write the cut transcript as JSON lines");
  s->add_flag("--fallback", solve.fallback, "Enumerate all profiles if the cap is hit (M <= 4096)");

  std::string verify_input;
  std::string verify_ce;
  auto* v = app.add_subcommand("verify", "Check a certificate exactly");
  v->add_option("--input", verify_input, "Game JSON file")->required()->check(CLI::ExistingFile);
  v->add_option("--ce", verify_ce, "Certificate or solve report")->required()->check(CLI::ExistingFile);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a random game");
  g->add_option("--family", gen.family)->check(CLI::IsMember({"nfg", "polymatrix"}));
  g->add_option("--players", gen.players)->check(CLI::PositiveNumber);
  g->add_option("--actions", gen.actions)->check(CLI::PositiveNumber);
  g->add_option("--umax", gen.umax)->check(CLI::NonNegativeNumber);
  g->add_option("--seed", gen.seed);
  g->add_option("--output", gen.output);

  BenchArgs bench;
  bench.precision = default_precision();
  auto* b = app.add_subcommand("bench", "Sweep random games and compare oracles");
  b->add_option("--family", bench.family)->check(CLI::IsMember({"nfg", "polymatrix"}));
  b->add_option("--sizes", bench.sizes, "PLAYERSxACTIONS, repeatable or comma separated")->delimiter(',');
  b->add_option("--seeds", bench.seeds, "N for 1..N, or LO-HI");
  b->add_option("--oracles", bench.oracles)->delimiter(',')->check(CLI::IsMember({"purified", "product"}));
  b->add_option("--tie-break", bench.tie_break)->check(CLI::IsMember({"first", "max-value", "welfare"}));
  b->add_option("--umax", bench.umax)->check(CLI::NonNegativeNumber);
  b->add_option("--precision", bench.precision)->check(CLI::Range(32u, 1u << 20));
  b->add_option("--max-iters", bench.max_iters)->check(CLI::PositiveNumber);
  b->add_option("--product-max-iters", bench.product_max_iters)->check(CLI::PositiveNumber);
  b->add_option("--csv", bench.csv, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitError;
  }

  if (s->parsed()) return cmd_solve(solve);
  if (v->parsed()) return cmd_verify(verify_input, verify_ce);
  if (g->parsed()) return cmd_gen(gen);
  return cmd_bench(bench);
}
