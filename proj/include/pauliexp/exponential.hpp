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

// Pauli-basis coefficients of exp(-beta H).
//
// The resolvent (zI - H)^{-1} has coefficient vector r(z) = (zI - A)^{-1} e_0,
// so the Dunford-Cauchy integral (1/2 pi i) \oint e^{-beta z} r(z) dz, or
// equivalently the sum of residues of e^{-beta z} r(z) over the poles, is
//
//     c = exp(-beta A) e_0,
//
// the first column of exp(-beta A). The spectral path evaluates this through
// A = V diag(lambda) V^dagger:
//
//     c_K = sum_j exp(-beta lambda_j) V_{Kj} conj(V_{0j}).
//
// Repeated eigenvalues need no special treatment: the weights V_{Kj}
// conj(V_{0j}) summed over a degenerate block are exactly the residue of the
// reduced rational function r_K(z). The contour path evaluates the same
// integral by the trapezoidal rule on a circle and serves as an independent
// check.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "pauliexp/error.hpp"
#include "pauliexp/hamiltonian.hpp"
#include "pauliexp/parallel.hpp"
#include "pauliexp/pauli_expansion.hpp"
#include "pauliexp/resolvent.hpp"

namespace pauliexp {

/// Eigen-decomposition A V = V diag(lambda), lambda ascending, V unitary.
struct SpectralData {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd eigenvectors;
};

inline SpectralData compute_spectrum(const StructureMatrix& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a.matrix());
  if (es.info() != Eigen::Success) {
    throw NumericalError("structure-matrix eigensolver did not converge");
  }
  SpectralData s{es.eigenvalues(), es.eigenvectors()};

  const double scale = std::max(1.0, a.norm_inf());
  const auto& v = s.eigenvectors;
  double residual = 0.0;
  if (a.size() > 0) {
    residual = (a.matrix() * v - v * s.eigenvalues.cast<Complex>().asDiagonal())
                   .cwiseAbs()
                   .rowwise()
                   .sum()
                   .maxCoeff();
  }
  if (!(residual <= 1e-10 * scale)) {
    throw NumericalError("eigen-decomposition residual " + std::to_string(residual) +
                         " above tolerance");
  }
  return s;
}

/// exp(-beta A) e_0 from a spectral decomposition of A.
inline Eigen::VectorXcd coefficient_vector(const SpectralData& s, Complex beta) {
  const auto& v = s.eigenvectors;
  Eigen::VectorXcd weights =
      (-beta * s.eigenvalues.cast<Complex>().array()).exp() *
      v.row(0).transpose().conjugate().array();
  return v * weights;
}

struct EngineOptions {
  std::size_t closure_cap = kDefaultClosureCap;
};

namespace detail {

inline PauliExpansion to_pauli_expansion(const StructureMatrix& a,
                                         const Eigen::VectorXcd& c, Complex scale) {
  PauliExpansion e(a.n());
  for (Eigen::Index pos = 0; pos < c.size(); ++pos) {
    e.set(a.code_at(pos), scale * c(pos));
  }
  return e;
}

inline Complex offset_factor(const SparseHamiltonian& h, Complex beta) {
  return std::exp(-beta * h.identity_offset());
}

}  // namespace detail

/// exp(-beta H) through the eigen-decomposition of the structure matrix.
inline PauliExpansion exp_spectral(const SparseHamiltonian& h, Complex beta,
                                   const EngineOptions& opts = {}) {
  ClosedTermSet t = close(h, opts.closure_cap);
  StructureMatrix a = build_structure_matrix(h, t);
  SpectralData s = compute_spectrum(a);
  return detail::to_pauli_expansion(a, coefficient_vector(s, beta),
                                    detail::offset_factor(h, beta));
}

/// Circle z_m = center + radius e^{2 pi i m / M}, m = 0..M-1.
struct ContourSpec {
  Complex center;
  double radius = 1.0;
  int nodes = 64;
};

/// Real interval [lo, hi] containing the spectrum of A by Gershgorin's
/// theorem (A is Hermitian with zero diagonal).
inline std::pair<double, double> gershgorin_interval(const StructureMatrix& a) {
  if (a.size() == 0) return {0.0, 0.0};
  Eigen::VectorXd row_sums = a.matrix().cwiseAbs().rowwise().sum();
  double lo = 0.0, hi = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    double c = a.matrix()(i, i).real();
    lo = std::min(lo, c - (row_sums(i) - std::abs(a.matrix()(i, i))));
    hi = std::max(hi, c + (row_sums(i) - std::abs(a.matrix()(i, i))));
  }
  return {lo, hi};
}

/// Centered at the Gershgorin midpoint, radius 1.25 x half-spread + 1.
inline ContourSpec default_contour(const StructureMatrix& a, int nodes = 64) {
  auto [lo, hi] = gershgorin_interval(a);
  return {Complex(0.5 * (lo + hi), 0.0), 0.5 * (hi - lo) * 1.25 + 1.0, nodes};
}

/// True when the circle strictly encloses the Gershgorin interval (or, given
/// a spectrum, every eigenvalue).
inline bool contour_encloses(const ContourSpec& c, const StructureMatrix& a,
                             const SpectralData* spectrum = nullptr) {
  if (spectrum != nullptr) {
    for (double lambda : spectrum->eigenvalues) {
      if (!(std::abs(Complex(lambda) - c.center) < c.radius)) return false;
    }
    return true;
  }
  auto [lo, hi] = gershgorin_interval(a);
  return std::abs(Complex(lo) - c.center) < c.radius &&
         std::abs(Complex(hi) - c.center) < c.radius;
}

/// Trapezoidal rule for (1 / 2 pi i) \oint e^{-beta z} (zI - A)^{-1} e_0 dz.
inline Eigen::VectorXcd contour_coefficient_vector(const StructureMatrix& a,
                                                   Complex beta,
                                                   const ContourSpec& spec) {
  if (spec.nodes < 1) throw NumericalError("contour needs at least one node");
  if (!(spec.radius > 0.0)) throw NumericalError("contour radius must be positive");
  const auto m_nodes = static_cast<std::size_t>(spec.nodes);
  std::vector<Eigen::VectorXcd> terms(m_nodes);
  parallel_for(m_nodes, [&](std::size_t m) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(m) /
                         static_cast<double>(spec.nodes);
    const Complex w = spec.radius * Complex(std::cos(theta), std::sin(theta));
    const Complex z = spec.center + w;
    // dz / (2 pi i) = w dtheta / (2 pi), and dtheta = 2 pi / M.
    terms[m] = (w * std::exp(-beta * z)) * resolvent_at(a, z).r;
  });
  Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(a.size());
  for (const auto& t : terms) sum += t;
  return sum / static_cast<double>(spec.nodes);
}

/**
 * exp(-beta H) by direct quadrature of the Dunford-Cauchy integral.
 *
 * Without an explicit spec the circle comes from default_contour. If a node
 * lands on the spectrum the radius is grown by 1% and the rule re-run once.
 */
inline PauliExpansion exp_contour(const SparseHamiltonian& h, Complex beta,
                                  std::optional<ContourSpec> spec = std::nullopt,
                                  const EngineOptions& opts = {}) {
  ClosedTermSet t = close(h, opts.closure_cap);
  StructureMatrix a = build_structure_matrix(h, t);
  ContourSpec c = spec.value_or(default_contour(a));
  if (!contour_encloses(c, a)) {
    throw NumericalError("contour does not enclose the Gershgorin interval of A");
  }
  Eigen::VectorXcd coeffs;
  try {
    coeffs = contour_coefficient_vector(a, beta, c);
  } catch (const SingularSystem&) {
    c.radius *= 1.01;
    try {
      coeffs = contour_coefficient_vector(a, beta, c);
    } catch (const SingularSystem& e) {
      throw NumericalError(std::string("contour node hit the spectrum twice: ") +
                           e.what());
    }
  }
  return detail::to_pauli_expansion(a, coeffs, detail::offset_factor(h, beta));
}

/// True when every pair of support strings anticommutes.
inline bool pairwise_anticommuting(const SparseHamiltonian& h) {
  auto support = h.support();
  for (std::size_t i = 0; i < support.size(); ++i) {
    for (std::size_t j = i + 1; j < support.size(); ++j) {
      if (commutes_codes(support[i], support[j])) return false;
    }
  }
  return true;
}

/**
 * Closed form for pairwise anticommuting terms, where H^2 = |h|^2 I:
 * exp(-beta H) = cosh(|h| beta) I - (sinh(|h| beta) / |h|) H.
 */
inline PauliExpansion exp_anticommuting(const SparseHamiltonian& h, Complex beta) {
  if (!pairwise_anticommuting(h)) {
    throw NotAnticommuting("Hamiltonian terms do not pairwise anticommute");
  }
  const Complex scale = detail::offset_factor(h, beta);
  const double norm = h.norm();
  PauliExpansion e = PauliExpansion::identity(h.n(), scale);
  if (norm == 0.0) return e;
  const Complex x = norm * beta;
  e.set(0, scale * std::cosh(x));
  const Complex s = std::sinh(x) / norm;
  for (const auto& [code, hk] : h.terms()) e.set(code, -scale * hk * s);
  return e;
}

struct PartitionFunction {
  /// tr(exp(-beta H)) / 2^n, the identity coefficient.
  double z_normalized = 0.0;
  /// tr(exp(-beta H)).
  double z_trace = 0.0;
};

inline PartitionFunction partition_function(const SparseHamiltonian& h, double beta,
                                            const EngineOptions& opts = {}) {
  PauliExpansion e = exp_spectral(h, beta, opts);
  const double c0 = e.coefficient(0).real();
  return {c0, std::ldexp(c0, h.n())};
}

/**
 * exp(-beta H) / tr exp(-beta H). The spectrum is shifted by its minimum
 * before exponentiating, which cancels in the ratio and keeps large beta from
 * overflowing.
 */
inline PauliExpansion gibbs_state(const SparseHamiltonian& h, double beta,
                                  const EngineOptions& opts = {}) {
  ClosedTermSet t = close(h, opts.closure_cap);
  StructureMatrix a = build_structure_matrix(h, t);
  SpectralData s = compute_spectrum(a);
  SpectralData shifted = s;
  if (s.eigenvalues.size() > 0) {
    shifted.eigenvalues.array() -= s.eigenvalues.minCoeff();
  }
  Eigen::VectorXcd c = coefficient_vector(shifted, beta);
  const double z_trace = std::ldexp(c(0).real(), h.n());
  if (!(z_trace > 0.0) || !std::isfinite(z_trace)) {
    throw NumericalError("partition function is not a positive finite number");
  }
  PauliExpansion rho = detail::to_pauli_expansion(a, c, 1.0 / z_trace);
  rho.set(0, std::ldexp(1.0, -h.n()));
  return rho;
}

}  // namespace pauliexp
