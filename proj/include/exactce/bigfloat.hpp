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

#include <mpfr.h>

#include <string>
#include <utility>

#include "exactce/rational.hpp"

namespace exactce {

/// Owning MPFR value with an explicit precision. Results of binary operators
/// take the larger operand precision; every operation rounds to nearest.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t bits = 256) {
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
  }
  BigFloat(long value, mpfr_prec_t bits) : BigFloat(bits) { mpfr_set_si(v_, value, MPFR_RNDN); }
  BigFloat(const Rational& value, mpfr_prec_t bits) : BigFloat(bits) { mpfr_set_q(v_, value.get_mpq_t(), MPFR_RNDN); }
  BigFloat(const BigFloat& o) : BigFloat(o.precision()) { mpfr_set(v_, o.v_, MPFR_RNDN); }
  BigFloat(BigFloat&& o) noexcept : BigFloat(o.precision()) { mpfr_swap(v_, o.v_); }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, o.precision());
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  /// Exact value as a dyadic rational.
  Rational to_rational() const;
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  std::string to_string(int digits = 20) const;
  int sign() const { return mpfr_sgn(v_); }

  BigFloat& operator+=(const BigFloat& o) { return apply(mpfr_add, o); }
  BigFloat& operator-=(const BigFloat& o) { return apply(mpfr_sub, o); }
  BigFloat& operator*=(const BigFloat& o) { return apply(mpfr_mul, o); }
  BigFloat& operator/=(const BigFloat& o) { return apply(mpfr_div, o); }

  friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
  friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
  friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
  friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }
  friend BigFloat operator-(BigFloat a) {
    mpfr_neg(a.v_, a.v_, MPFR_RNDN);
    return a;
  }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

  friend BigFloat sqrt(BigFloat a) {
    mpfr_sqrt(a.v_, a.v_, MPFR_RNDN);
    return a;
  }
  friend BigFloat log(BigFloat a) {
    mpfr_log(a.v_, a.v_, MPFR_RNDN);
    return a;
  }

 private:
  template <class Op>
  BigFloat& apply(Op op, const BigFloat& o) {
    if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
    op(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }

  mpfr_t v_;
};

}  // namespace exactce
