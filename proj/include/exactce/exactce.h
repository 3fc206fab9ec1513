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

/* C interface to the exactce solver. All objects are opaque handles owned by
 * the caller and released with the matching *_free function. Functions that
 * can fail return an exactce_status; on failure exactce_last_error() describes
 * the problem (per thread, valid until the next failing call). Strings
 * returned through char** are heap allocated; release them with
 * exactce_string_free. Rationals travel as "a/b" strings. */
#ifndef EXACTCE_EXACTCE_H_
#define EXACTCE_EXACTCE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(EXACTCE_BUILDING_LIBRARY)
#define EXACTCE_API __attribute__((visibility("default")))
#else
#define EXACTCE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  EXACTCE_OK = 0,
  EXACTCE_ERR_INVALID_ARGUMENT = 1,
  EXACTCE_ERR_PARSE = 2,
  EXACTCE_ERR_IO = 3,
  EXACTCE_ERR_ITERATION_CAP = 4,
  EXACTCE_ERR_PRECISION = 5,
  EXACTCE_ERR_INTERNAL = 6
} exactce_status;

typedef enum { EXACTCE_FAMILY_NORMAL_FORM = 0, EXACTCE_FAMILY_POLYMATRIX = 1 } exactce_family;
typedef enum { EXACTCE_MODE_PRACTICAL = 0, EXACTCE_MODE_THEORETICAL = 1 } exactce_mode;
typedef enum { EXACTCE_ORACLE_PURIFIED = 0, EXACTCE_ORACLE_PRODUCT = 1 } exactce_oracle;
typedef enum { EXACTCE_TIE_FIRST = 0, EXACTCE_TIE_MAX_VALUE = 1, EXACTCE_TIE_WELFARE = 2 } exactce_tie_break;

typedef struct exactce_game exactce_game;
typedef struct exactce_report exactce_report;

typedef struct {
  exactce_mode mode;
  exactce_oracle oracle;
  exactce_tie_break tie_break;
  unsigned precision_bits;
  uint64_t max_iters;
  uint64_t seed;
  int brute_force_fallback;
} exactce_solve_config;

typedef struct {
  int verdict;      /* 1 iff the certificate is an exact correlated equilibrium */
  int normalized;   /* probabilities sum to exactly 1 */
  int worst_player;
  int worst_i;
  int worst_j;
  char* worst_value;  /* most negative incentive value, "a/b" */
  char* reason;       /* empty string when verdict is 1 */
} exactce_verification;

EXACTCE_API const char* exactce_version(void);
EXACTCE_API const char* exactce_last_error(void);
EXACTCE_API void exactce_string_free(char* s);

EXACTCE_API exactce_status exactce_game_from_json(const char* text, exactce_game** out);
EXACTCE_API exactce_status exactce_game_from_file(const char* path, exactce_game** out);
EXACTCE_API exactce_status exactce_game_random(exactce_family family, int players, int actions, int64_t u_max,
                                               uint64_t seed, exactce_game** out);
EXACTCE_API exactce_status exactce_game_to_json(const exactce_game* game, char** out);
EXACTCE_API int exactce_game_num_players(const exactce_game* game);
EXACTCE_API int exactce_game_num_actions(const exactce_game* game, int player);
EXACTCE_API exactce_status exactce_game_max_utility(const exactce_game* game, char** out);
EXACTCE_API void exactce_game_free(exactce_game* game);

/* Practical mode, purified oracle, first-found tie-break, 256 bits. */
EXACTCE_API void exactce_solve_config_init(exactce_solve_config* cfg);

/* On EXACTCE_ERR_ITERATION_CAP *out still receives a report without a
 * certificate, so the transcript can be exported. */
EXACTCE_API exactce_status exactce_solve(const exactce_game* game, const exactce_solve_config* cfg,
                                         exactce_report** out);
EXACTCE_API int exactce_report_has_certificate(const exactce_report* report);
EXACTCE_API uint64_t exactce_report_iterations(const exactce_report* report);
EXACTCE_API uint64_t exactce_report_distinct_cuts(const exactce_report* report);
EXACTCE_API uint64_t exactce_report_support(const exactce_report* report);
EXACTCE_API int exactce_report_verified(const exactce_report* report);
EXACTCE_API double exactce_report_wall_ms(const exactce_report* report);
EXACTCE_API exactce_status exactce_report_epsilon(const exactce_report* report, char** out);
EXACTCE_API exactce_status exactce_report_to_json(const exactce_report* report, int include_transcript, char** out);
EXACTCE_API exactce_status exactce_report_certificate_json(const exactce_report* report, char** out);
EXACTCE_API exactce_status exactce_report_transcript_jsonl(const exactce_report* report, char** out);
EXACTCE_API void exactce_report_free(exactce_report* report);

/* Accepts a bare certificate {"atoms": [...]} or a solve report. */
EXACTCE_API exactce_status exactce_verify(const exactce_game* game, const char* certificate_json,
                                          exactce_verification* out);
EXACTCE_API void exactce_verification_clear(exactce_verification* v);

/* ceil(5N(5N^4 + 7N^5) ln u), u raised to 2 if smaller, as a decimal string. */
EXACTCE_API exactce_status exactce_iteration_bound(uint64_t n, uint64_t u, char** out);

#ifdef __cplusplus
}
#endif

#endif  /* EXACTCE_EXACTCE_H_ */
