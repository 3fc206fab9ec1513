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

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "exactce/bigfloat.hpp"
#include "exactce/incentive.hpp"
#include "exactce/oracle.hpp"
#include "exactce/rational.hpp"

namespace exactce {

struct EllipsoidParams {
  double r_log2 = 0.0;            // initial radius R = 2^r_log2
  std::optional<double> v_log;    // stop once ln(volume) < v_log; none = never
  size_t max_iters = 20000;
  unsigned precision_bits = 256;
  bool track_log_det = false;     // measure every step by Cholesky (O(N^3))
  /// Significant bits kept per coordinate of the center handed to the oracle;
  /// 0 hands over the full-precision center.
  unsigned query_bits = 64;
};

/// Starting radius u^(5 N^3) and stopping volume alpha_N u^(-7 N^5), with
/// u := 2 whenever the largest utility is below 2.
EllipsoidParams theoretical_params(size_t n, const Integer& u_max, size_t max_iters, unsigned precision_bits);

/// ln of the volume of the unit ball in R^n.
double log_unit_ball_volume(size_t n);

/// E = { z : (z - center)^T shape^-1 (z - center) <= 1 }.
struct EllipsoidState {
  std::vector<BigFloat> center;
  std::vector<std::vector<BigFloat>> shape;  // symmetric positive definite
  unsigned precision_bits = 256;
  size_t iteration = 0;
  double log_volume = 0.0;  // analytic bookkeeping, nats

  size_t dimension() const { return center.size(); }
  static EllipsoidState ball(size_t n, double r_log2, unsigned precision_bits);
  /// Exact rational copy of the center, each coordinate first rounded to
  /// `bits` significant bits (0 keeps full precision). Signs are preserved.
  DualVector snapshot(unsigned bits = 0) const;
};

/// ln det of a symmetric positive-definite matrix via Cholesky. Throws
/// PrecisionError if a pivot is not positive.
BigFloat log_det(const std::vector<std::vector<BigFloat>>& shape);

/// Central-cut update keeping { z in E : a^T z <= a^T center }. Throws
/// InvalidArgument for a zero normal and PrecisionError if a^T shape a <= 0.
EllipsoidState update(const EllipsoidState& state, const std::vector<std::pair<size_t, Rational>>& normal);
EllipsoidState update(const EllipsoidState& state, const std::vector<Rational>& dense_normal);

/// ln(vol E_{k+1} / vol E_k) of the central-cut update in dimension n.
double analytic_log_volume_ratio(size_t n);

struct TranscriptEntry {
  size_t iteration = 0;
  DualVector query;       // rational snapshot of the center
  Cut cut;
  std::string violation;  // a^T c - rhs at the center, decimal
  double log_volume_drop = 0.0;  // ln vol E_k - ln vol E_{k+1}; 0 if no update
};

struct Transcript {
  std::vector<TranscriptEntry> entries;
  std::vector<PureProfile> distinct_profiles;  // first-seen order

  size_t iterations() const { return entries.size(); }
};

enum class Outcome { kInfeasibleOrShallow, kIterationCapReached };

struct RunResult {
  Outcome outcome = Outcome::kIterationCapReached;
  std::string stop_reason;
  Transcript transcript;
  double final_log_volume = 0.0;
};

using SeparationOracle = std::function<Cut(const DualVector&)>;
/// Called after each cut is recorded; returning true ends the run.
using StopCheck = std::function<bool(const Transcript&)>;

/// Drives the oracle from the ball of radius R around 0 until the stop check
/// fires, a cut with zero normal proves emptiness, the volume falls below
/// v_log, or max_iters cuts were taken.
RunResult run(size_t n, const EllipsoidParams& params, const SeparationOracle& oracle,
              const StopCheck& stop = {});

/// One JSON object per line: iter, cut kind, profile or row, violation.
std::string to_jsonl(const Transcript& t);

}  // namespace exactce
