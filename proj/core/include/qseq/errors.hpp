// Copyright 2026 The qseq Authors
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

#ifndef QSEQ_ERRORS_HPP_
#define QSEQ_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace qseq {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree (non-square operator, wrong tensor factor...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A precondition on values failed: parameter out of range, non-Hermitian
/// input, invalid POVM or state, non-stochastic kernel.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The marginal-sum condition of a decomposition problem is violated, so the
/// problem is rejected before any iteration runs.
class NecessaryConditionError : public Error {
 public:
  using Error::Error;
};

/// The first dilation passed to connecting_isometry is not minimal.
class NotMinimalError : public Error {
 public:
  using Error::Error;
};

/// A numerical construction could not reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace qseq

#endif  // QSEQ_ERRORS_HPP_
