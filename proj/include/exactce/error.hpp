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

#include <stdexcept>
#include <string>

namespace exactce {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed game, certificate or rational literal.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Out-of-range index, dimension mismatch or violated precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The ellipsoid lost positive-definiteness at the working precision.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed. Always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace exactce
