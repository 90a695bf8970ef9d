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

#include <gtest/gtest.h>

#include <random>

#include "pauliexp/pauliexp.hpp"
#include "test_util.hpp"

using namespace pauliexp;
namespace fx = pauliexp::fixtures;
using C = std::complex<double>;

namespace {

const C kI(0, 1);

PauliExpansion cyclic_closed_form(double a, double b, double c, double t) {
  const double p = std::sqrt(a * a + b * b + c * c);
  PauliExpansion e(3);
  e.set(0, std::cos(p * t));
  e.set(parse_string("123").code(), -kI * a * std::sin(p * t) / p);
  e.set(parse_string("231").code(), -kI * b * std::sin(p * t) / p);
  e.set(parse_string("312").code(), -kI * c * std::sin(p * t) / p);
  return e;
}

double dense_error(const PauliExpansion& e, const SparseHamiltonian& h, C beta) {
  return compare(reconstruct_dense(e), dense_exp(reconstruct_dense(h), beta)).max_abs;
}

}  // namespace

TEST(CoefficientVector, IsFirstColumnOfExponential) {
  std::mt19937_64 rng(fx::kSeed + 40);
  SparseHamiltonian h = fx::random_closed(4, 30, rng);
  StructureMatrix a = build_structure_matrix(h, close(h));
  const C beta(0.7, -0.4);
  Eigen::VectorXcd c = coefficient_vector(compute_spectrum(a), beta);
  // exp(-beta A) e_0 by a truncated Taylor series with scaling and squaring.
  const int squarings = 8;
  Eigen::MatrixXcd x = (-beta / std::pow(2.0, squarings)) * a.matrix();
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(a.size(), a.size());
  Eigen::MatrixXcd sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * x / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  EXPECT_LE((c - sum.col(0)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ExpSpectral, CyclicTripleUnitary) {
  const double a = 0.4, b = -0.9, c = 1.3, t = 2.1;
  PauliExpansion e = exp_spectral(fx::cyclic_triple(a, b, c), C(0, t));
  EXPECT_LE(max_abs_diff(e, cyclic_closed_form(a, b, c, t)), 1e-12);
}

TEST(ExpSpectral, BetaZeroIsIdentity) {
  std::mt19937_64 rng(fx::kSeed + 41);
  SparseHamiltonian h = fx::random_closed(5, 30, rng);
  PauliExpansion e = exp_spectral(h, 0.0);
  EXPECT_LE(max_abs_diff(e, PauliExpansion::identity(5)), 1e-14);
}

TEST(ExpSpectral, ClusterIdentityCoefficient) {
  std::mt19937_64 rng(fx::kSeed + 42);
  for (int trial = 0; trial < 10; ++trial) {
    auto h = fx::uniform_vector(rng, 7);
    const double beta = 0.5 + trial * 0.3;
    double expected = fx::cluster_partition(h, beta);
    double got = exp_spectral(fx::cluster(h), beta).coefficient(0).real();
    EXPECT_LE(std::abs(got - expected), 1e-12 * expected);
  }
}

TEST(ExpSpectral, IdentityOffsetIsAScalarFactor) {
  SparseHamiltonian h = fx::cyclic_triple(0.2, 0.5, -0.1);
  PauliExpansion plain = exp_spectral(h, C(0.3, 0.2));
  h.set_identity_offset(1.5);
  PauliExpansion shifted = exp_spectral(h, C(0.3, 0.2));
  EXPECT_LE(max_abs_diff(shifted, std::exp(-C(0.3, 0.2) * 1.5) * plain), 1e-14);
  EXPECT_LE(dense_error(shifted, h, C(0.3, 0.2)), 1e-12);
}

TEST(ExpSpectral, ClosureExplosionPropagates) {
  EngineOptions opts;
  opts.closure_cap = 100;
  EXPECT_THROW(exp_spectral(fx::heisenberg_xy(6), 1.0, opts), ClosureExplosion);
}

TEST(ExpSpectral, OracleEquivalenceAndRealCoefficients) {
  std::mt19937_64 rng(fx::kSeed + 43);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    SparseHamiltonian h = fx::random_closed(n, 30, rng);
    PauliExpansion real_beta = exp_spectral(h, 1.3);
    EXPECT_LE(real_beta.max_imag(), 1e-10);
    EXPECT_LE(dense_error(real_beta, h, 1.3), 1e-10);
    EXPECT_LE(dense_error(exp_spectral(h, C(0, 1.0)), h, C(0, 1.0)), 1e-10);
  }
}

TEST(ExpSpectral, GroupLawInPauliBasis) {
  std::mt19937_64 rng(fx::kSeed + 44);
  for (int trial = 0; trial < 10; ++trial) {
    SparseHamiltonian h = fx::random_closed(4, 30, rng);
    const C b1(0.3, 0.5), b2(0.4, -1.1);
    PauliExpansion prod = multiply(exp_spectral(h, b1), exp_spectral(h, b2));
    PauliExpansion direct = exp_spectral(h, b1 + b2);
    EXPECT_LE(max_abs_diff(prod, direct), 1e-10);
    // The product stays inside span{I, sigma_T}.
    ClosedTermSet t = close(h);
    for (const auto& [code, c] : prod.coeffs()) {
      if (std::abs(c) > 1e-14) EXPECT_TRUE(t.contains(code));
    }
  }
}

TEST(ExpSpectral, UnitarityInPauliBasis) {
  std::mt19937_64 rng(fx::kSeed + 45);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    SparseHamiltonian h = fx::random_closed(n, 30, rng);
    PauliExpansion u = exp_spectral(h, C(0, 0.9));
    EXPECT_LE(max_abs_diff(multiply(u.adjoint(), u), PauliExpansion::identity(n)), 1e-10);
    Eigen::MatrixXcd um = reconstruct_dense(u).m;
    Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(um.rows(), um.cols());
    EXPECT_LE((um.adjoint() * um - eye).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(ExpSpectral, DegenerateSpectrumNeedsNoSpecialCase) {
  // All eigenvalues of the cluster are doubly degenerate in A.
  auto h = std::vector<double>{0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5};
  SparseHamiltonian ham = fx::cluster(h);
  EXPECT_LE(dense_error(exp_spectral(ham, 2.0), ham, 2.0), 1e-10);
}

TEST(SpectralData, ResidualAndUnitarity) {
  std::mt19937_64 rng(fx::kSeed + 46);
  SparseHamiltonian h = fx::random_closed(5, 30, rng);
  StructureMatrix a = build_structure_matrix(h, close(h));
  SpectralData s = compute_spectrum(a);
  const auto& v = s.eigenvectors;
  EXPECT_LE((a.matrix() * v - v * s.eigenvalues.cast<C>().asDiagonal()).cwiseAbs().maxCoeff(),
            1e-10 * a.norm_inf());
  EXPECT_LE((v.adjoint() * v - Eigen::MatrixXcd::Identity(v.rows(), v.cols())).cwiseAbs().maxCoeff(),
            1e-10);
  for (Eigen::Index j = 1; j < s.eigenvalues.size(); ++j) {
    EXPECT_LE(s.eigenvalues(j - 1), s.eigenvalues(j));
  }
}

TEST(ExpContour, CyclicTripleMatchesSpectral) {
  SparseHamiltonian h = fx::cyclic_triple(0.6, -0.2, 0.9);
  ContourSpec spec = default_contour(build_structure_matrix(h, close(h)), 64);
  PauliExpansion contour = exp_contour(h, C(0, 1.4), spec);
  EXPECT_LE(max_abs_diff(contour, exp_spectral(h, C(0, 1.4))), 1e-8);
}

TEST(ExpContour, BetaZeroIsIdentity) {
  std::mt19937_64 rng(fx::kSeed + 47);
  SparseHamiltonian h = fx::random_closed(3, 30, rng);
  EXPECT_LE(max_abs_diff(exp_contour(h, 0.0), PauliExpansion::identity(3)), 1e-12);
}

TEST(ExpContour, DoublingNodesShrinksError) {
  std::mt19937_64 rng(fx::kSeed + 48);
  SparseHamiltonian h(4);
  // tau = 7: closure of three independent generators.
  h = fx::random_closed(4, 7, rng);
  while (close(h).tau() != 7) h = fx::random_closed(4, 7, rng);
  StructureMatrix a = build_structure_matrix(h, close(h));
  PauliExpansion ref = exp_spectral(h, 1.0);
  double e64 = max_abs_diff(exp_contour(h, 1.0, default_contour(a, 64)), ref);
  double e128 = max_abs_diff(exp_contour(h, 1.0, default_contour(a, 128)), ref);
  EXPECT_TRUE(e128 <= 0.1 * e64 || e128 <= 1e-12) << e64 << " -> " << e128;
}

TEST(ExpContour, RejectsContourMissingSpectrum) {
  SparseHamiltonian h = fx::cyclic_triple(1.0, 1.0, 1.0);
  ContourSpec tiny{C(0, 0), 0.5, 32};
  EXPECT_THROW(exp_contour(h, 1.0, tiny), NumericalError);
}

TEST(ExpContour, NodeOnEigenvalueTriggersRetry) {
  // A = [[0, 1], [1, 0]] has eigenvalues +-1 on the Gershgorin bounds. A
  // circle of radius 1 + 1e-14 encloses them, but node m = 0 sits within the
  // spectral gap tolerance of z = 1; the retry grows the radius by 1%.
  SparseHamiltonian h(1);
  h.add_term(parse_string("X"), 1.0);
  StructureMatrix a = build_structure_matrix(h, close(h));
  // Enough nodes that the 1%-wider circle still converges to 1e-10.
  ContourSpec grazing{C(0, 0), 1.0 + 1e-14, 4096};
  ASSERT_TRUE(contour_encloses(grazing, a));
  EXPECT_THROW(contour_coefficient_vector(a, 1.0, grazing), SingularSystem);
  EXPECT_LE(max_abs_diff(exp_contour(h, 1.0, grazing), exp_spectral(h, 1.0)), 1e-10);

  SpectralData s = compute_spectrum(a);
  EXPECT_FALSE(contour_encloses(ContourSpec{C(0, 0), 0.9, 64}, a, &s));
}

TEST(ExpAnticommuting, SingleTerm) {
  SparseHamiltonian h(2);
  h.add_term(parse_string("XZ"), -0.7);
  const double beta = 1.3;
  PauliExpansion e = exp_anticommuting(h, beta);
  EXPECT_NEAR(std::abs(e.coefficient(0) - std::cosh(-0.7 * beta)), 0, 1e-15);
  EXPECT_NEAR(std::abs(e.coefficient(parse_string("XZ").code()) - (-std::sinh(-0.7 * beta))),
              0, 1e-15);
}

TEST(ExpAnticommuting, CyclicTripleAgreesWithSpectral) {
  SparseHamiltonian h = fx::cyclic_triple(0.4, 0.1, -0.8);
  EXPECT_LE(max_abs_diff(exp_anticommuting(h, C(0, 0.6)),
                         cyclic_closed_form(0.4, 0.1, -0.8, 0.6)),
            1e-14);
  EXPECT_LE(max_abs_diff(exp_anticommuting(h, C(0, 0.6)), exp_spectral(h, C(0, 0.6))), 1e-12);
}

TEST(ExpAnticommuting, ZeroHamiltonianAndPrecondition) {
  SparseHamiltonian zero(2);
  zero.add_term(parse_string("XI"), 0.0);
  zero.add_term(parse_string("ZI"), 0.0);
  EXPECT_LE(max_abs_diff(exp_anticommuting(zero, 3.0), PauliExpansion::identity(2)), 0.0);

  SparseHamiltonian commuting(2);
  commuting.add_term(parse_string("XX"), 1.0);
  commuting.add_term(parse_string("ZZ"), 1.0);
  EXPECT_THROW(exp_anticommuting(commuting, 1.0), NotAnticommuting);
}

TEST(PartitionFunction, ClusterAndConventions) {
  std::mt19937_64 rng(fx::kSeed + 49);
  auto h = fx::uniform_vector(rng, 7);
  PartitionFunction z = partition_function(fx::cluster(h), 1.0);
  EXPECT_LE(std::abs(z.z_normalized - fx::cluster_partition(h, 1.0)),
            1e-10 * z.z_normalized);
  EXPECT_DOUBLE_EQ(z.z_trace, 16 * z.z_normalized);

  PartitionFunction z0 = partition_function(fx::cluster(h), 0.0);
  EXPECT_NEAR(z0.z_normalized, 1.0, 1e-15);
  EXPECT_NEAR(z0.z_trace, 16.0, 1e-14);
}

TEST(PartitionFunction, TraceMatchesDenseOracle) {
  std::mt19937_64 rng(fx::kSeed + 50);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    SparseHamiltonian h = fx::random_closed(n, 30, rng);
    double dense_tr = dense_exp(reconstruct_dense(h), 0.8).m.trace().real();
    EXPECT_LE(std::abs(partition_function(h, 0.8).z_trace - dense_tr), 1e-10 * dense_tr);
  }
}

TEST(PartitionFunction, SymmetryUnderSignFlip) {
  // Negating h3, h5, h7 keeps mu and sends nu -> -nu; with h1 -> -h1, Z is
  // unchanged. Swapping h6 and h7 alone leaves nu untouched.
  std::mt19937_64 rng(fx::kSeed + 51);
  auto h = fx::uniform_vector(rng, 7);
  auto g = h;
  for (std::size_t k : {0, 2, 4, 6}) g[k] = -h[k];
  EXPECT_NEAR(fx::cluster_nu(g), -fx::cluster_nu(h), 1e-15);
  const double z = partition_function(fx::cluster(h), 2.0).z_normalized;
  EXPECT_NEAR(partition_function(fx::cluster(g), 2.0).z_normalized, z, 1e-12 * z);
  auto swapped = h;
  swapped[0] = -h[0];
  std::swap(swapped[5], swapped[6]);
  EXPECT_NEAR(fx::cluster_nu(swapped), fx::cluster_nu(h), 1e-15);
}

TEST(GibbsState, BetaZeroIsMaximallyMixed) {
  std::mt19937_64 rng(fx::kSeed + 52);
  SparseHamiltonian h = fx::random_closed(3, 30, rng);
  PauliExpansion rho = gibbs_state(h, 0.0);
  EXPECT_EQ(rho.coefficient(0), C(1.0 / 8));
  EXPECT_LE(max_abs_diff(rho, PauliExpansion::identity(3, 1.0 / 8)), 1e-15);
}

TEST(GibbsState, DensityOperator) {
  std::mt19937_64 rng(fx::kSeed + 53);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    SparseHamiltonian h = fx::random_closed(n, 30, rng);
    PauliExpansion rho = gibbs_state(h, 1.7);
    EXPECT_EQ(rho.coefficient(0), C(std::ldexp(1.0, -n)));
    Eigen::VectorXd ev = dense_eigenvalues(reconstruct_dense(rho));
    EXPECT_GE(ev.minCoeff(), -1e-12);
    EXPECT_LE(ev.maxCoeff(), 1.0 + 1e-12);
    EXPECT_NEAR(ev.sum(), 1.0, 1e-12);
  }
}

TEST(GibbsState, LowTemperatureApproachesGroundSpace) {
  for (const SparseHamiltonian& h :
       {fx::cyclic_triple(0.3, -0.5, 0.8), fx::cluster({0.2, 0.6, -0.3, 0.4, 0.1, -0.5, 0.7})}) {
    DenseOperator hm = reconstruct_dense(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hm.m);
    const double e0 = es.eigenvalues()(0);
    Eigen::Index g = 0;
    while (g < es.eigenvalues().size() && es.eigenvalues()(g) < e0 + 1e-9) ++g;
    ASSERT_LT(g, es.eigenvalues().size());
    // Excited weight ~ exp(-beta * gap) must sit far below the tolerance.
    const double beta = 40.0 / (es.eigenvalues()(g) - e0);
    PauliExpansion rho = gibbs_state(h, beta);
    Eigen::MatrixXcd ground = es.eigenvectors().leftCols(g);
    double overlap = (ground.adjoint() * reconstruct_dense(rho).m * ground).trace().real();
    EXPECT_GE(overlap, 1.0 - 1e-6);
  }
}

TEST(GibbsState, LargeBetaDoesNotOverflow) {
  SparseHamiltonian h = fx::cyclic_triple(3.0, 4.0, 12.0);  // p = 13
  PauliExpansion rho = gibbs_state(h, 200.0);
  for (const auto& [code, c] : rho.coeffs()) EXPECT_TRUE(std::isfinite(c.real()));
}
