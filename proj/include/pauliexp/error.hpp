// Copyright 2026 The pauliexp Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace pauliexp {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands act on different numbers of qubits, or a matrix has the wrong
/// shape.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Malformed Pauli string, Hamiltonian file, or scalar literal.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// The composition closure of a term set grew past the configured cap, i.e.
/// the Hamiltonian is not sparse in the Pauli basis.
class ClosureExplosion : public Error {
 public:
  ClosureExplosion(std::size_t cap, std::size_t reached)
      : Error("closure exceeded cap of " + std::to_string(cap) +
              " terms (reached " + std::to_string(reached) + ")"),
        cap_(cap),
        reached_(reached) {}

  std::size_t cap() const noexcept { return cap_; }
  std::size_t reached() const noexcept { return reached_; }

 private:
  std::size_t cap_;
  std::size_t reached_;
};

/// A term set handed to the structure-matrix builder is not closed.
class NotClosed : public Error {
 public:
  using Error::Error;
};

/// zI - A is singular (z sits on the spectrum) or the solve is inaccurate.
class SingularSystem : public Error {
 public:
  using Error::Error;
};

/// The anticommuting closed form was requested for a commuting pair.
class NotAnticommuting : public Error {
 public:
  using Error::Error;
};

/// Eigendecomposition, contour quadrature or another numerical stage failed.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A dense operation was requested above the configured qubit cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Dense input that must be Hermitian is not.
class NotHermitian : public Error {
 public:
  using Error::Error;
};

}  // namespace pauliexp
