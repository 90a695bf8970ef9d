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

// Brute-force 2^n x 2^n reference operators. Everything here is deliberately
// plain: Kronecker products, full Hermitian eigendecomposition, traces.

#pragma once

#include <bit>
#include <cmath>
#include <variant>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "pauliexp/error.hpp"
#include "pauliexp/hamiltonian.hpp"
#include "pauliexp/pauli_expansion.hpp"
#include "pauliexp/pauli_string.hpp"

namespace pauliexp {

inline constexpr int kDefaultDenseCap = 10;
inline constexpr int kMaxDenseCap = 12;

inline constexpr double kHermitianTol = 1e-10;

/// A 2^n x 2^n operator in the computational basis |k1...kn>, ordered by
/// integer value with qubit 1 the most significant bit.
struct DenseOperator {
  int n = 0;
  Eigen::MatrixXcd m;

  DenseOperator() = default;
  DenseOperator(int n_qubits, Eigen::MatrixXcd matrix)
      : n(n_qubits), m(std::move(matrix)) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    if (n < 0 || m.rows() != dim || m.cols() != dim) {
      throw DimensionError("dense operator on " + std::to_string(n) +
                           " qubits must be " + std::to_string(dim) + "x" +
                           std::to_string(dim));
    }
  }

  Eigen::Index dim() const { return m.rows(); }
};

namespace detail {

inline void check_dense_cap(int n, int cap) {
  if (cap > kMaxDenseCap) {
    throw CapExceeded("dense cap " + std::to_string(cap) +
                      " above hard limit " + std::to_string(kMaxDenseCap));
  }
  if (n > cap) {
    throw CapExceeded("dense operation on " + std::to_string(n) +
                      " qubits exceeds dense cap of " + std::to_string(cap));
  }
}

inline Eigen::Matrix2cd single_qubit_pauli(int d) {
  using C = std::complex<double>;
  Eigen::Matrix2cd s;
  switch (d) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, C(0, -1), C(0, 1), 0; break;
    default: s << 1, 0, 0, -1; break;
  }
  return s;
}

// Basis-index masks of a Pauli code: bits where the string flips (X, Y), and
// where it contributes a sign on |1> (Y, Z). Bit n-q belongs to qubit q.
struct PauliMasks {
  std::uint64_t flip = 0;
  std::uint64_t sign = 0;
  int n_y = 0;
};

inline PauliMasks pauli_masks(int n, PauliCode code) {
  PauliMasks out;
  for (int q = 1; q <= n; ++q) {
    int d = static_cast<int>((code >> (2 * (n - q))) & 3u);
    std::uint64_t bit = std::uint64_t{1} << (n - q);
    if (d == 1 || d == 2) out.flip |= bit;
    if (d == 2 || d == 3) out.sign |= bit;
    if (d == 2) ++out.n_y;
  }
  return out;
}

// <col ^ flip| sigma |col> = i^{n_y} (-1)^{popcount(col & sign)}.
inline std::complex<double> pauli_entry(const PauliMasks& pm, std::uint64_t col) {
  std::complex<double> v = Phase(pm.n_y).value();
  return (std::popcount(col & pm.sign) & 1) ? -v : v;
}

}  // namespace detail

/// sigma_{k1} (x) ... (x) sigma_{kn}, leftmost digit outermost.
inline DenseOperator pauli_matrix(const PauliString& p,
                                  int dense_cap = kDefaultDenseCap) {
  detail::check_dense_cap(p.n(), dense_cap);
  Eigen::MatrixXcd acc = detail::single_qubit_pauli(p.digit(1));
  for (int q = 2; q <= p.n(); ++q) {
    Eigen::MatrixXcd next =
        Eigen::kroneckerProduct(acc, detail::single_qubit_pauli(p.digit(q)));
    acc = std::move(next);
  }
  return DenseOperator(p.n(), std::move(acc));
}

/// sum_K c_K sigma_K. Each string is placed through its one-nonzero-per-column
/// structure rather than a full Kronecker product.
inline DenseOperator reconstruct_dense(const PauliExpansion& e,
                                       int dense_cap = kDefaultDenseCap) {
  detail::check_dense_cap(e.n(), dense_cap);
  const Eigen::Index dim = Eigen::Index{1} << e.n();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [code, c] : e.coeffs()) {
    if (c == Complex{}) continue;
    auto pm = detail::pauli_masks(e.n(), code);
    for (Eigen::Index col = 0; col < dim; ++col) {
      auto row = static_cast<Eigen::Index>(static_cast<std::uint64_t>(col) ^ pm.flip);
      m(row, col) += c * detail::pauli_entry(pm, static_cast<std::uint64_t>(col));
    }
  }
  return DenseOperator(e.n(), std::move(m));
}

inline PauliExpansion to_expansion(const SparseHamiltonian& h) {
  PauliExpansion e(h.n());
  if (h.identity_offset() != 0.0) e.set(0, h.identity_offset());
  for (const auto& [code, c] : h.terms()) e.set(code, c);
  return e;
}

inline DenseOperator reconstruct_dense(const SparseHamiltonian& h,
                                       int dense_cap = kDefaultDenseCap) {
  return reconstruct_dense(to_expansion(h), dense_cap);
}

inline double hermiticity_defect(const Eigen::MatrixXcd& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// Eigenvalues of a Hermitian dense operator, ascending.
inline Eigen::VectorXd dense_eigenvalues(const DenseOperator& op) {
  if (hermiticity_defect(op.m) > kHermitianTol) {
    throw NotHermitian("dense operator is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op.m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericalError("dense eigensolver did not converge");
  }
  return es.eigenvalues();
}

/// exp(-beta m) = W diag(exp(-beta lambda)) W^dagger for Hermitian m.
inline DenseOperator dense_exp(const DenseOperator& op, Complex beta,
                               int dense_cap = kDefaultDenseCap) {
  detail::check_dense_cap(op.n, dense_cap);
  if (hermiticity_defect(op.m) > kHermitianTol) {
    throw NotHermitian("dense_exp requires a Hermitian operator");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op.m);
  if (es.info() != Eigen::Success) {
    throw NumericalError("dense eigensolver did not converge");
  }
  Eigen::VectorXcd w = (-beta * es.eigenvalues().cast<Complex>().array()).exp();
  const auto& v = es.eigenvectors();
  Eigen::MatrixXcd out = v * w.asDiagonal() * v.adjoint();
  return DenseOperator(op.n, std::move(out));
}

struct CompareMetrics {
  double max_abs = 0.0;
  double frobenius = 0.0;
};

inline CompareMetrics compare(const DenseOperator& a, const DenseOperator& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("cannot compare operators of dimension " +
                         std::to_string(a.dim()) + " and " +
                         std::to_string(b.dim()));
  }
  if (a.dim() == 0) return {};
  Eigen::MatrixXcd d = a.m - b.m;
  return {d.cwiseAbs().maxCoeff(), d.norm()};
}

/// Places a d x d operator in the top-left block of an n-qubit register via
/// |i~> -> |i>; the rest of the matrix is zero.
inline DenseOperator embed(const Eigen::MatrixXcd& m, int n) {
  if (m.rows() != m.cols()) throw DimensionError("embed requires a square matrix");
  if (n < 1 || n > kMaxDenseCap) {
    throw DimensionError("embedding register of " + std::to_string(n) +
                         " qubits is out of range");
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  if (m.rows() > dim) {
    throw DimensionError("cannot embed dimension " + std::to_string(m.rows()) +
                         " into " + std::to_string(n) + " qubits");
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  out.topLeftCorner(m.rows(), m.cols()) = m;
  return DenseOperator(n, std::move(out));
}

inline constexpr double kDefaultZeroTol = 1e-12;

using Decomposition = std::variant<SparseHamiltonian, PauliExpansion>;

/**
 * Pauli-basis coefficients h_K = tr(sigma_K m) / 2^n, keeping |h_K| > zero_tol.
 *
 * A Hermitian m (max |m - m^dagger| <= 1e-10) yields a SparseHamiltonian with
 * the identity coefficient in the offset; otherwise a complex PauliExpansion.
 */
inline Decomposition pauli_decompose(const Eigen::MatrixXcd& m,
                                     double zero_tol = kDefaultZeroTol,
                                     int dense_cap = kDefaultDenseCap) {
  if (m.rows() != m.cols() || m.rows() < 2 ||
      !std::has_single_bit(static_cast<std::uint64_t>(m.rows()))) {
    throw DimensionError("pauli_decompose needs a square 2^n x 2^n matrix, got " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
  const int n = std::countr_zero(static_cast<std::uint64_t>(m.rows()));
  detail::check_dense_cap(n, dense_cap);
  const Eigen::Index dim = m.rows();
  const bool hermitian = hermiticity_defect(m) <= kHermitianTol;

  PauliExpansion coeffs(n);
  const PauliCode n_codes = PauliCode{1} << (2 * n);
  for (PauliCode code = 0; code < n_codes; ++code) {
    auto pm = detail::pauli_masks(n, code);
    Complex tr{};
    for (Eigen::Index col = 0; col < dim; ++col) {
      auto row = static_cast<Eigen::Index>(static_cast<std::uint64_t>(col) ^ pm.flip);
      // tr(sigma m) = sum_col sigma(row, col) m(col, row)
      tr += detail::pauli_entry(pm, static_cast<std::uint64_t>(col)) * m(col, row);
    }
    tr /= static_cast<double>(dim);
    if (std::abs(tr) > zero_tol) coeffs.set(code, tr);
  }

  if (!hermitian) return coeffs;
  SparseHamiltonian h(n);
  for (const auto& [code, c] : coeffs.coeffs()) {
    if (std::abs(c.real()) > zero_tol) h.add_term(code, c.real());
  }
  return h;
}

inline Decomposition pauli_decompose(const DenseOperator& op,
                                     double zero_tol = kDefaultZeroTol,
                                     int dense_cap = kDefaultDenseCap) {
  return pauli_decompose(op.m, zero_tol, dense_cap);
}

}  // namespace pauliexp
