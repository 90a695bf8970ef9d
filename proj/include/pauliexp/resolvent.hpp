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
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "pauliexp/error.hpp"
#include "pauliexp/hamiltonian.hpp"
#include "pauliexp/pauli_string.hpp"

namespace pauliexp {

/**
 * The (1+tau) x (1+tau) Hermitian matrix A with (zI - A) r = e_0 the linear
 * system for the Pauli coefficients r of the resolvent (zI - H)^{-1}.
 *
 * Position 0 is the identity, position i >= 1 the code K_i of the closed set.
 * A is the matrix of right multiplication by H on span{I, sigma_K : K in T}:
 * column K holds the Pauli coefficients of sigma_K H.
 */
class StructureMatrix {
 public:
  StructureMatrix(int n, std::vector<PauliCode> codes, Eigen::MatrixXcd a)
      : n_(n), codes_(std::move(codes)), a_(std::move(a)) {}

  int n() const { return n_; }
  Eigen::Index size() const { return a_.rows(); }
  std::size_t tau() const { return codes_.size(); }
  const Eigen::MatrixXcd& matrix() const { return a_; }

  /// Pauli code at matrix position `pos`; position 0 is the identity.
  PauliCode code_at(Eigen::Index pos) const {
    return pos == 0 ? PauliCode{0} : codes_[static_cast<std::size_t>(pos - 1)];
  }
  const std::vector<PauliCode>& codes() const { return codes_; }

  /// max_i sum_j |A_ij|.
  double norm_inf() const {
    return a_.size() == 0 ? 0.0 : a_.cwiseAbs().rowwise().sum().maxCoeff();
  }

 private:
  int n_;
  std::vector<PauliCode> codes_;
  Eigen::MatrixXcd a_;
};

/**
 * Assembles A from h and its closed term set t.
 *
 * Border: A_{0K} = A_{K0} = h_K. Block: for every column K and every L with
 * h_L != 0, h_L S(K,L) lands in row M = K*L (a_MK). M = identity only occurs
 * for L = K and is already accounted for by the border, so the diagonal stays
 * zero.
 */
inline StructureMatrix build_structure_matrix(const SparseHamiltonian& h,
                                              const ClosedTermSet& t) {
  detail::require_same_n(h.n(), t.n());
  const auto& codes = t.codes();
  const Eigen::Index size = static_cast<Eigen::Index>(codes.size()) + 1;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(size, size);

  // Nonzero terms with their matrix positions, ascending by code.
  std::vector<std::pair<PauliCode, double>> active;
  for (const auto& [code, hl] : h.terms()) {
    auto idx = t.index_of(code);
    if (!idx) {
      throw NotClosed("Hamiltonian term " + format_string(PauliString(h.n(), code)) +
                      " is not in the term set");
    }
    Eigen::Index pos = static_cast<Eigen::Index>(*idx) + 1;
    a(0, pos) = hl;
    a(pos, 0) = hl;
    if (hl != 0.0) active.emplace_back(code, hl);
  }

  for (Eigen::Index col = 1; col < size; ++col) {
    const PauliCode k = codes[static_cast<std::size_t>(col - 1)];
    for (const auto& [l, hl] : active) {
      const PauliCode m = compose_codes(k, l);
      if (m == 0) continue;
      auto row = t.index_of(m);
      if (!row) {
        throw NotClosed("composition " + format_string(PauliString(h.n(), k)) +
                        "*" + format_string(PauliString(h.n(), l)) +
                        " leaves the term set");
      }
      a(static_cast<Eigen::Index>(*row) + 1, col) += hl * phase_codes(k, l).value();
    }
  }

  // Entries are real-times-unit-phase products, each (M,K) fed by exactly one
  // L, so Hermiticity must hold bit for bit.
  for (Eigen::Index i = 0; i < size; ++i) {
    if (a(i, i) != Complex{}) throw NumericalError("structure matrix diagonal is nonzero");
    for (Eigen::Index j = i + 1; j < size; ++j) {
      if (a(i, j) != std::conj(a(j, i))) {
        throw NumericalError("structure matrix is not Hermitian");
      }
    }
  }
  return StructureMatrix(h.n(), codes, std::move(a));
}

struct ResolventCoefficients {
  Complex z;
  /// r[0] = r_0 (identity), r[i] = r_{K_i}.
  Eigen::VectorXcd r;
};

/// Default distance below which z counts as sitting on the spectrum.
inline double default_spectral_gap_tol(const StructureMatrix& a) {
  return 1e-12 * std::max(1.0, a.norm_inf());
}

/**
 * Solves (zI - A) r = e_0 by LU with partial pivoting.
 *
 * Throws SingularSystem when z is within gap_tol of the spectrum (estimated
 * from the reciprocal condition number, which for Hermitian A tracks
 * min_j |z - lambda_j|) or when the residual exceeds 1e-10 (|z| + ||A||).
 */
inline ResolventCoefficients resolvent_at(const StructureMatrix& a, Complex z,
                                          double gap_tol = -1.0) {
  if (gap_tol < 0.0) gap_tol = default_spectral_gap_tol(a);
  const Eigen::Index size = a.size();
  Eigen::MatrixXcd shifted = -a.matrix();
  shifted.diagonal().array() += z;

  Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(size);
  e0(0) = 1.0;

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);
  const double op_norm = shifted.cwiseAbs().colwise().sum().maxCoeff();
  const double distance = lu.rcond() * op_norm;
  if (!(distance > gap_tol)) {
    throw SingularSystem("z = (" + std::to_string(z.real()) + ", " +
                         std::to_string(z.imag()) +
                         ") lies on the spectrum of the structure matrix");
  }
  Eigen::VectorXcd r = lu.solve(e0);
  const double residual = (shifted * r - e0).norm();
  const double tol = 1e-10 * (std::abs(z) + a.norm_inf());
  if (!r.allFinite() || !(residual <= tol)) {
    throw SingularSystem("resolvent solve residual " + std::to_string(residual) +
                         " exceeds tolerance " + std::to_string(tol));
  }
  return {z, std::move(r)};
}

/// det(zI - A) via LU.
inline Complex characteristic_poly_at(const StructureMatrix& a, Complex z) {
  Eigen::MatrixXcd shifted = -a.matrix();
  shifted.diagonal().array() += z;
  return shifted.partialPivLu().determinant();
}

/// det(zI - A) = prod_j (z - lambda_j) from known eigenvalues.
inline Complex characteristic_poly_at(const Eigen::VectorXd& eigenvalues, Complex z) {
  Complex p = 1.0;
  for (double lambda : eigenvalues) p *= z - lambda;
  return p;
}

}  // namespace pauliexp
