// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NONSUBMAX_ERRORS_HPP_
#define NONSUBMAX_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace nonsubmax {

// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed data supplied by the caller: bad instance files, unknown
// function kinds, elements outside the ground set, violated preconditions.
// CLI exit code 2.
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

// A supplied set function produced a marginal return below the tolerance,
// i.e. it is not monotone nondecreasing.
class MonotonicityError : public InvalidInputError {
 public:
  using InvalidInputError::InvalidInputError;
};

// Ground set too large for an exhaustive computation. CLI exit code 3.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

// Internal numerical failure. CLI exit code 4.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// A matrix that must be symmetric positive definite failed to factor.
class ConditioningError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace nonsubmax

#endif  // NONSUBMAX_ERRORS_HPP_
