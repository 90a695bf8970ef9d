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

#include "pauliexp/pauli_string.hpp"
#include "test_util.hpp"

using namespace pauliexp;
using pauliexp::fixtures::dense_phase;

namespace {

PauliString P(const char* s) { return parse_string(s); }

PauliString random_string(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<PauliCode> d(0, (PauliCode{1} << (2 * n)) - 1);
  return PauliString(n, d(rng));
}

}  // namespace

TEST(Phase, ExponentArithmeticIsModFour) {
  EXPECT_EQ(Phase::i() * Phase::i(), Phase::minus_one());
  EXPECT_EQ(Phase::i() * Phase::minus_i(), Phase::one());
  EXPECT_EQ(Phase(7), Phase::minus_i());
  EXPECT_EQ(Phase(-1), Phase::minus_i());
  EXPECT_EQ(Phase::i().conj(), Phase::minus_i());
  EXPECT_EQ(Phase::minus_i().value(), std::complex<double>(0, -1));
}

TEST(PauliString, CodeIsBigEndianBase4) {
  EXPECT_EQ(P("312").code(), 54u);
  EXPECT_EQ(P("0123").code(), 27u);
  EXPECT_EQ(P("0123").n(), 4);
  EXPECT_EQ(P("123").digit(1), 1);
  EXPECT_EQ(P("123").digit(3), 3);
  EXPECT_EQ(PauliString::from_digits(std::vector<int>{3, 1, 2}), P("312"));
}

TEST(PauliString, CodeRoundTripsWithDigits) {
  std::mt19937_64 rng(fixtures::kSeed);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + static_cast<int>(rng() % 32);
    PauliString p = random_string(n < 32 ? n : 31, rng);
    auto digits = p.digits();
    EXPECT_EQ(PauliString::from_digits(digits), p);
    EXPECT_EQ(parse_string(format_string(p, Alphabet::Letters)), p);
  }
}

TEST(PauliString, ThirtyTwoQubitsFitInOneWord) {
  std::string s(32, 'Z');
  PauliString p = parse_string(s);
  EXPECT_EQ(p.code(), ~PauliCode{0});
  EXPECT_EQ(format_string(p, Alphabet::Letters), s);
  EXPECT_THROW(parse_string(std::string(33, 'X')), ParseError);
}

TEST(PauliString, RejectsOutOfRangeCode) {
  EXPECT_THROW(PauliString(2, 16), DimensionError);
  EXPECT_THROW(PauliString(0, 0), DimensionError);
}

TEST(ParseString, BothAlphabets) {
  EXPECT_EQ(P("XZY").digits(), (std::vector<int>{1, 3, 2}));
  EXPECT_EQ(P("xzy"), P("132"));
  EXPECT_EQ(P("0123").code(), 27u);
  EXPECT_EQ(format_string(P("0123"), Alphabet::Letters), "IXYZ");
  EXPECT_EQ(format_string(P("IXYZ"), Alphabet::Digits), "0123");
}

TEST(ParseString, Errors) {
  EXPECT_THROW(parse_string("14Q"), ParseError);
  EXPECT_THROW(parse_string(""), ParseError);
  EXPECT_THROW(parse_string("X1"), ParseError);
  EXPECT_THROW(parse_string("4"), ParseError);
}

TEST(Compose, WorkedProducts) {
  auto [m, s] = compose(P("312"), P("210"));
  EXPECT_EQ(format_string(m), "102");
  EXPECT_EQ(s, Phase::minus_i());
  // Independent dense check of the same scalar.
  EXPECT_EQ(*dense_phase(P("312"), P("210"), P("102")), std::complex<double>(0, -1));

  auto [m2, s2] = compose(P("123"), P("312"));
  EXPECT_EQ(format_string(m2), "231");
  EXPECT_EQ(s2, Phase::i());
}

TEST(Compose, IdentityAndSquares) {
  std::mt19937_64 rng(fixtures::kSeed + 1);
  for (int trial = 0; trial < 100; ++trial) {
    PauliString k = random_string(5, rng);
    auto [m, s] = compose(k, PauliString(5));
    EXPECT_EQ(m, k);
    EXPECT_EQ(s, Phase::one());
    auto [sq, s2] = compose(k, k);
    EXPECT_TRUE(sq.is_identity());
    EXPECT_EQ(s2, Phase::one());
  }
}

TEST(Compose, DimensionMismatch) {
  EXPECT_THROW(compose(P("12"), P("123")), DimensionError);
  EXPECT_THROW(phase(P("12"), P("123")), DimensionError);
  EXPECT_THROW(commutes(P("12"), P("123")), DimensionError);
  EXPECT_THROW(structure_constant(P("12"), P("123")), DimensionError);
}

TEST(PhaseOp, Examples) {
  EXPECT_EQ(phase(P("231"), P("312")), Phase::minus_i());
  EXPECT_EQ(*dense_phase(P("231"), P("312"), P("123")), std::complex<double>(0, -1));
  EXPECT_EQ(phase(P("000"), P("213")), Phase::one());
  EXPECT_EQ(phase(P("123"), P("312")), Phase::i());
}

TEST(Commutes, Examples) {
  EXPECT_FALSE(commutes(P("123"), P("231")));
  EXPECT_FALSE(commutes(P("123"), P("312")));
  EXPECT_FALSE(commutes(P("231"), P("312")));
  EXPECT_TRUE(commutes(P("123"), P("123")));
  EXPECT_TRUE(commutes(P("123"), P("000")));
  EXPECT_TRUE(commutes(P("XX"), P("ZZ")));
}

TEST(StructureConstant, Examples) {
  EXPECT_EQ(structure_constant(P("123"), P("123")), 0.0);
  EXPECT_EQ(structure_constant(P("123"), P("312")), -2.0);
  EXPECT_EQ(structure_constant(P("312"), P("123")), 2.0);
  EXPECT_EQ(structure_constant(P("000"), P("231")), 0.0);
}

TEST(PauliAlgebraProperties, Associativity) {
  std::mt19937_64 rng(fixtures::kSeed + 2);
  for (int trial = 0; trial < 500; ++trial) {
    int n = 1 + static_cast<int>(rng() % 31);
    PauliString a = random_string(n, rng), b = random_string(n, rng),
                c = random_string(n, rng);
    auto [ab, s_ab] = compose(a, b);
    auto [ab_c, s_ab_c] = compose(ab, c);
    auto [bc, s_bc] = compose(b, c);
    auto [a_bc, s_a_bc] = compose(a, bc);
    EXPECT_EQ(ab_c, a_bc);
    EXPECT_EQ(s_ab * s_ab_c, s_bc * s_a_bc);
  }
}

TEST(PauliAlgebraProperties, DenseOracleEquivalence) {
  std::mt19937_64 rng(fixtures::kSeed + 3);
  for (int n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 60; ++trial) {
      PauliString a = random_string(n, rng), b = random_string(n, rng);
      auto [m, s] = compose(a, b);
      Eigen::MatrixXcd lhs = pauli_matrix(a).m * pauli_matrix(b).m;
      Eigen::MatrixXcd rhs = s.value() * pauli_matrix(m).m;
      EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-14);
    }
  }
}

TEST(PauliAlgebraProperties, CommutationMatchesPhases) {
  std::mt19937_64 rng(fixtures::kSeed + 4);
  for (int trial = 0; trial < 500; ++trial) {
    int n = 1 + static_cast<int>(rng() % 31);
    PauliString a = random_string(n, rng), b = random_string(n, rng);
    Phase ab = phase(a, b), ba = phase(b, a);
    EXPECT_EQ(commutes(a, b), ab == ba);
    EXPECT_EQ(ab * ab, commutes(a, b) ? Phase::one() : Phase::minus_one());
    EXPECT_EQ(ab * ba, Phase::one());
    double c = structure_constant(a, b);
    EXPECT_TRUE(commutes(a, b) ? c == 0.0 : std::abs(c) == 2.0);
    auto [sq, s] = compose(a, a);
    EXPECT_TRUE(sq.is_identity());
    EXPECT_EQ(s, Phase::one());
  }
}
