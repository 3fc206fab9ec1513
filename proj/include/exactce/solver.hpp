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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "exactce/ellipsoid.hpp"
#include "exactce/error.hpp"
#include "exactce/game.hpp"
#include "exactce/incentive.hpp"
#include "exactce/oracle.hpp"

namespace exactce {

enum class Mode { kPractical, kTheoretical };
enum class OracleKind { kPurified, kProduct };

struct SolveConfig {
  Mode mode = Mode::kPractical;
  OracleKind oracle = OracleKind::kPurified;
  TieBreak tie_break = TieBreak::kFirst;
  unsigned precision_bits = 256;
  size_t max_iters = 20000;
  /// Significant bits of each center coordinate passed to the oracle.
  unsigned query_bits = 64;
  std::uint64_t seed = 0;
  /// Initial radius in practical mode, as log2 R.
  double practical_r_log2 = 0.0;
  /// Enumerate every column when the iteration cap is hit (M <= 4096 only).
  bool brute_force_fallback = false;
  /// Measure each volume drop by Cholesky instead of the closed form.
  bool track_log_det = false;

  void validate() const;
};

/// Convex combination of product distributions (product-oracle output).
struct ProductMixture {
  std::vector<Rational> weights;
  std::vector<ProductDistribution> components;
};

struct SolveReport {
  SolveConfig config;
  std::optional<SparseCE> ce;              // purified mode
  std::optional<ProductMixture> mixture;   // product mode
  Rational epsilon;                        // exact worst-row violation, >= 0
  size_t iterations = 0;
  size_t distinct_cuts = 0;
  size_t support = 0;
  double wall_ms = 0.0;
  bool verified = false;
  bool used_fallback = false;
  RowIndex worst_row;
  Rational worst_value;
  std::string stop_reason;
  Transcript transcript;
};

/// Thrown when the iteration cap is hit before the restricted program became
/// feasible; carries the transcript so far.
class IterationCapError : public Error {
 public:
  IterationCapError(const std::string& what, Transcript t) : Error(what), transcript_(std::move(t)) {}
  const Transcript& transcript() const { return transcript_; }

 private:
  Transcript transcript_;
};

/// Ellipsoid against the dual with the configured oracle, followed by an exact
/// vertex of the program restricted to the collected cuts.
SolveReport compute_exact_ce(const Game& g, const SolveConfig& cfg);

/// Vertex of the full CE program over all M profiles. Reference oracle.
SparseCE brute_force_ce(const Game& g);

/// 5N(5N^4 + 7N^5), the factor multiplying ln u in the iteration bound.
Integer iteration_bound_coefficient(const Integer& n);
/// ceil(5N(5N^4 + 7N^5) ln u) with u := max(u, 2).
Integer iteration_bound(const Integer& n, const Integer& u);

/// Exact weighted mixture x = sum_k w_k x_k as a dense vector x U^T.
std::vector<Rational> mixture_incentives(const Game& g, const ProductMixture& m);

nlohmann::json to_json(const SolveReport& r, bool include_transcript = false);

Mode parse_mode(const std::string& name);
OracleKind parse_oracle(const std::string& name);
std::string to_string(Mode m);
std::string to_string(OracleKind o);

}  // namespace exactce
