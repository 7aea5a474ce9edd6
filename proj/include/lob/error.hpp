// Copyright 2026 The lattice-obstacle Authors
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

#ifndef LOB_ERROR_HPP_
#define LOB_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace lob {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands of mismatched length.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Invalid parameters or data passed to a builder/constructor.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// The energy has no gradient at the requested point (p < 2 with a tied difference).
class NonDifferentiableError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure inside a solver (zero diagonal, stalled line search, no KKT point).
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Problem too large for an enumeration-based routine.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// An internal mathematical invariant failed, e.g. lower obstacle above upper obstacle.
class InvariantError : public Error {
 public:
  using Error::Error;
};

namespace detail {

template <class E = DimensionError>
inline void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw E(std::string(what) + ": length mismatch (" + std::to_string(a) + " vs " +
            std::to_string(b) + ")");
  }
}

}  // namespace detail
}  // namespace lob

#endif  // LOB_ERROR_HPP_
