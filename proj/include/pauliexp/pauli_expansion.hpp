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

#include <cmath>
#include <complex>
#include <map>
#include <string>

#include "pauliexp/pauli_string.hpp"

namespace pauliexp {

using Complex = std::complex<double>;

/// Complex coefficient map over Pauli codes, identity (code 0) included.
/// Ordered by ascending code so iteration and output are canonical.
class PauliExpansion {
 public:
  explicit PauliExpansion(int n) : n_(n) { PauliString check(n); }

  static PauliExpansion identity(int n, Complex scale = 1.0) {
    PauliExpansion e(n);
    e.coeffs_[0] = scale;
    return e;
  }

  int n() const { return n_; }
  const std::map<PauliCode, Complex>& coeffs() const { return coeffs_; }

  Complex coefficient(PauliCode code) const {
    auto it = coeffs_.find(code);
    return it == coeffs_.end() ? Complex{} : it->second;
  }

  void set(PauliCode code, Complex value) {
    PauliString check(n_, code);
    coeffs_[code] = value;
  }
  void add(PauliCode code, Complex value) {
    PauliString check(n_, code);
    coeffs_[code] += value;
  }

  PauliExpansion& operator*=(Complex s) {
    for (auto& [code, c] : coeffs_) c *= s;
    return *this;
  }
  friend PauliExpansion operator*(Complex s, PauliExpansion e) {
    e *= s;
    return e;
  }

  PauliExpansion& operator+=(const PauliExpansion& other) {
    detail::require_same_n(n_, other.n_);
    for (const auto& [code, c] : other.coeffs_) coeffs_[code] += c;
    return *this;
  }

  /// Hermitian adjoint: Pauli strings are Hermitian, so coefficients are
  /// conjugated.
  PauliExpansion adjoint() const {
    PauliExpansion out(n_);
    for (const auto& [code, c] : coeffs_) out.coeffs_[code] = std::conj(c);
    return out;
  }

  /// Largest |Im c_K|.
  double max_imag() const {
    double m = 0.0;
    for (const auto& [code, c] : coeffs_) m = std::max(m, std::abs(c.imag()));
    return m;
  }

  /// max_K |a_K - b_K| over the union of supports.
  friend double max_abs_diff(const PauliExpansion& a, const PauliExpansion& b) {
    detail::require_same_n(a.n_, b.n_);
    double m = 0.0;
    for (const auto& [code, c] : a.coeffs_) {
      m = std::max(m, std::abs(c - b.coefficient(code)));
    }
    for (const auto& [code, c] : b.coeffs_) {
      if (!a.coeffs_.contains(code)) m = std::max(m, std::abs(c));
    }
    return m;
  }

 private:
  int n_;
  std::map<PauliCode, Complex> coeffs_;
};

/// Operator product a*b carried out in the Pauli basis.
inline PauliExpansion multiply(const PauliExpansion& a, const PauliExpansion& b) {
  detail::require_same_n(a.n(), b.n());
  PauliExpansion out(a.n());
  for (const auto& [ka, ca] : a.coeffs()) {
    for (const auto& [kb, cb] : b.coeffs()) {
      out.add(compose_codes(ka, kb), ca * cb * phase_codes(ka, kb).value());
    }
  }
  return out;
}

}  // namespace pauliexp
