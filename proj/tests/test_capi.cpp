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

#include <string>

#include "exactce/exactce.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  exactce_string_free(s);
  return out;
}

const char* kPennies = R"({"type":"nfg","players":2,"actions":[2,2],"payoffs":[[1,0,0,1],[0,1,1,0]]})";

}  // namespace

TEST_CASE("version and errors") {
  CHECK(std::string(exactce_version()) == "0.1.0");
  exactce_game* g = nullptr;
  CHECK(exactce_game_from_json("{", &g) == EXACTCE_ERR_PARSE);
  CHECK(g == nullptr);
  CHECK(std::string(exactce_last_error()).size() > 0);
  CHECK(exactce_game_from_file("/nonexistent/game.json", &g) == EXACTCE_ERR_IO);
  CHECK(exactce_game_from_json(kPennies, nullptr) == EXACTCE_ERR_INVALID_ARGUMENT);
  CHECK(exactce_game_random(EXACTCE_FAMILY_NORMAL_FORM, 0, 2, 10, 1, &g) == EXACTCE_ERR_INVALID_ARGUMENT);
}

TEST_CASE("game accessors") {
  exactce_game* g = nullptr;
  REQUIRE(exactce_game_from_json(kPennies, &g) == EXACTCE_OK);
  CHECK(exactce_game_num_players(g) == 2);
  CHECK(exactce_game_num_actions(g, 1) == 2);
  CHECK(exactce_game_num_actions(g, 5) == 0);
  char* u = nullptr;
  REQUIRE(exactce_game_max_utility(g, &u) == EXACTCE_OK);
  CHECK(take(u) == "1");
  char* json = nullptr;
  REQUIRE(exactce_game_to_json(g, &json) == EXACTCE_OK);
  exactce_game* h = nullptr;
  CHECK(exactce_game_from_json(take(json).c_str(), &h) == EXACTCE_OK);
  exactce_game_free(h);
  exactce_game_free(g);
  exactce_game_free(nullptr);
}

TEST_CASE("solve, export and verify") {
  exactce_game* g = nullptr;
  REQUIRE(exactce_game_random(EXACTCE_FAMILY_POLYMATRIX, 3, 2, 10, 3, &g) == EXACTCE_OK);
  exactce_solve_config cfg;
  exactce_solve_config_init(&cfg);
  CHECK(cfg.precision_bits == 256);
  exactce_report* r = nullptr;
  REQUIRE(exactce_solve(g, &cfg, &r) == EXACTCE_OK);
  CHECK(exactce_report_has_certificate(r) == 1);
  CHECK(exactce_report_verified(r) == 1);
  CHECK(exactce_report_support(r) <= 7);
  CHECK(exactce_report_iterations(r) >= exactce_report_distinct_cuts(r));
  char* eps = nullptr;
  REQUIRE(exactce_report_epsilon(r, &eps) == EXACTCE_OK);
  CHECK(take(eps) == "0");

  char* cert = nullptr;
  REQUIRE(exactce_report_certificate_json(r, &cert) == EXACTCE_OK);
  const std::string certificate = take(cert);
  exactce_verification v;
  REQUIRE(exactce_verify(g, certificate.c_str(), &v) == EXACTCE_OK);
  CHECK(v.verdict == 1);
  CHECK(std::string(v.reason).empty());
  exactce_verification_clear(&v);

  char* report_json = nullptr;
  REQUIRE(exactce_report_to_json(r, 1, &report_json) == EXACTCE_OK);
  REQUIRE(exactce_verify(g, take(report_json).c_str(), &v) == EXACTCE_OK);
  CHECK(v.verdict == 1);
  exactce_verification_clear(&v);

  char* lines = nullptr;
  REQUIRE(exactce_report_transcript_jsonl(r, &lines) == EXACTCE_OK);
  CHECK(take(lines).find("\"iter\":0") != std::string::npos);
  exactce_report_free(r);
  exactce_game_free(g);
}

TEST_CASE("verification failure details") {
  exactce_game* g = nullptr;
  REQUIRE(exactce_game_from_json(R"({"type":"nfg","players":1,"actions":[2],"payoffs":[[5,3]]})", &g) == EXACTCE_OK);
  exactce_verification v;
  REQUIRE(exactce_verify(g, R"({"atoms":[{"profile":[1],"prob":"1"}]})", &v) == EXACTCE_OK);
  CHECK(v.verdict == 0);
  CHECK(v.normalized == 1);
  CHECK(v.worst_player == 0);
  CHECK(v.worst_i == 1);
  CHECK(v.worst_j == 0);
  CHECK(std::string(v.worst_value) == "-2");
  exactce_verification_clear(&v);

  REQUIRE(exactce_verify(g, R"({"atoms":[{"profile":[0],"prob":"1/2"}]})", &v) == EXACTCE_OK);
  CHECK(v.normalized == 0);
  exactce_verification_clear(&v);
  CHECK(exactce_verify(g, R"({"atoms":[{"profile":[0,1],"prob":"1"}]})", &v) != EXACTCE_OK);
  exactce_game_free(g);
}

TEST_CASE("iteration cap keeps a partial report") {
  exactce_game* g = nullptr;
  REQUIRE(exactce_game_random(EXACTCE_FAMILY_NORMAL_FORM, 3, 3, 10, 2, &g) == EXACTCE_OK);
  exactce_solve_config cfg;
  exactce_solve_config_init(&cfg);
  cfg.max_iters = 2;
  exactce_report* r = nullptr;
  CHECK(exactce_solve(g, &cfg, &r) == EXACTCE_ERR_ITERATION_CAP);
  REQUIRE(r != nullptr);
  CHECK(exactce_report_has_certificate(r) == 0);
  CHECK(exactce_report_iterations(r) == 2);
  char* lines = nullptr;
  CHECK(exactce_report_transcript_jsonl(r, &lines) == EXACTCE_OK);
  exactce_string_free(lines);
  exactce_report_free(r);

  cfg.mode = EXACTCE_MODE_THEORETICAL;
  cfg.oracle = EXACTCE_ORACLE_PRODUCT;
  CHECK(exactce_solve(g, &cfg, &r) == EXACTCE_ERR_INVALID_ARGUMENT);
  exactce_game_free(g);
}

TEST_CASE("iteration bound string") {
  char* out = nullptr;
  REQUIRE(exactce_iteration_bound(1, 2, &out) == EXACTCE_OK);
  CHECK(take(out) == "42");
  CHECK(exactce_iteration_bound(0, 2, &out) == EXACTCE_ERR_INVALID_ARGUMENT);
}
