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

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace exactce {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "a", "-a" or "a/b" into a canonical rational. Throws ParseError.
Rational parse_rational(std::string_view text);

/// Canonical "a/b" form; integers print without a denominator.
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

/// Decimal rendering with `digits` significant digits, for human output only.
std::string to_decimal(const Rational& value, int digits = 12);

}  // namespace exactce
