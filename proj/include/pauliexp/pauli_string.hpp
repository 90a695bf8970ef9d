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

#include <bit>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pauliexp/error.hpp"

#ifndef PAULIEXP_MAX_QUBITS
#define PAULIEXP_MAX_QUBITS 32
#endif

namespace pauliexp {

/// Largest supported register. Codes use two bits per qubit and must fit in
/// a 64-bit word.
inline constexpr int kMaxQubits = PAULIEXP_MAX_QUBITS;
static_assert(kMaxQubits >= 1 && kMaxQubits <= 32,
              "PAULIEXP_MAX_QUBITS must lie in [1, 32]");

using PauliCode = std::uint64_t;

/**
 * A fourth root of unity i^exponent, exponent in {0, 1, 2, 3}.
 *
 * 0: +1
 * 1: +i
 * 2: -1
 * 3: -i
 *
 * Phases arising in Pauli products are kept in this exact form; conversion to
 * a floating-point complex number happens only at the numerical boundary.
 */
class Phase {
 public:
  constexpr Phase() = default;
  constexpr explicit Phase(int exponent) : exponent_(((exponent % 4) + 4) % 4) {}

  static constexpr Phase one() { return Phase(0); }
  static constexpr Phase i() { return Phase(1); }
  static constexpr Phase minus_one() { return Phase(2); }
  static constexpr Phase minus_i() { return Phase(3); }

  constexpr int exponent() const { return exponent_; }

  constexpr Phase operator*(Phase other) const {
    return Phase(exponent_ + other.exponent_);
  }
  constexpr Phase& operator*=(Phase other) {
    exponent_ = (exponent_ + other.exponent_) & 3;
    return *this;
  }
  constexpr Phase conj() const { return Phase(4 - exponent_); }

  constexpr bool operator==(const Phase&) const = default;

  /// Exact value as a complex double (components are 0 or +-1).
  std::complex<double> value() const {
    constexpr double re[4] = {1.0, 0.0, -1.0, 0.0};
    constexpr double im[4] = {0.0, 1.0, 0.0, -1.0};
    return {re[exponent_], im[exponent_]};
  }

  std::string to_string() const {
    constexpr const char* names[4] = {"+1", "+i", "-1", "-i"};
    return names[exponent_];
  }

 private:
  int exponent_ = 0;
};

/// Text alphabet for Pauli strings.
enum class Alphabet { Digits, Letters };

/**
 * An n-qubit Pauli string sigma_{k1...kn} with k_j in {0=I, 1=X, 2=Y, 3=Z}.
 *
 * The code is the base-4 positional value with k1 the most significant digit,
 * so "312" has code 3*16 + 1*4 + 2 = 54. Internally this is exactly the
 * packed two-bits-per-qubit word, with qubit 1 in the highest occupied pair.
 */
class PauliString {
 public:
  /// Identity on n qubits.
  explicit PauliString(int n) : PauliString(n, 0) {}

  PauliString(int n, PauliCode code) : n_(n), code_(code) {
    if (n < 1 || n > kMaxQubits) {
      throw DimensionError("qubit count " + std::to_string(n) +
                           " outside [1, " + std::to_string(kMaxQubits) + "]");
    }
    if (n < 32 && (code >> (2 * n)) != 0) {
      throw DimensionError("code " + std::to_string(code) +
                           " does not fit in " + std::to_string(n) + " qubits");
    }
  }

  static PauliString from_digits(std::span<const int> digits) {
    if (digits.empty()) throw DimensionError("empty Pauli string");
    PauliCode code = 0;
    for (int d : digits) {
      if (d < 0 || d > 3) {
        throw ParseError("Pauli digit " + std::to_string(d) +
                         " outside {0,1,2,3}");
      }
      code = (code << 2) | static_cast<PauliCode>(d);
    }
    return PauliString(static_cast<int>(digits.size()), code);
  }

  int n() const { return n_; }
  PauliCode code() const { return code_; }
  bool is_identity() const { return code_ == 0; }

  /// Digit of qubit q, 1-based from the left as in sigma_{k1...kn}.
  int digit(int q) const {
    return static_cast<int>((code_ >> (2 * (n_ - q))) & 3u);
  }

  std::vector<int> digits() const {
    std::vector<int> out(static_cast<std::size_t>(n_));
    for (int q = 1; q <= n_; ++q) out[static_cast<std::size_t>(q - 1)] = digit(q);
    return out;
  }

  /// Number of non-identity factors.
  int weight() const {
    PauliCode lo = code_ & 0x5555555555555555ULL;
    PauliCode hi = (code_ >> 1) & 0x5555555555555555ULL;
    return std::popcount(lo | hi);
  }

  bool operator==(const PauliString&) const = default;
  auto operator<=>(const PauliString&) const = default;

 private:
  int n_;
  PauliCode code_;
};

namespace detail {

inline void require_same_n(int a, int b) {
  if (a != b) {
    throw DimensionError("Pauli strings act on " + std::to_string(a) +
                         " and " + std::to_string(b) + " qubits");
  }
}

// Single-qubit phase exponents: sigma_a sigma_b = i^e sigma_{a^b}.
// X Y = iZ, Y Z = iX, Z X = iY; reversed orders give -i.
inline constexpr int kSingleQubitPhase[4][4] = {
    {0, 0, 0, 0},
    {0, 0, 1, 3},
    {0, 3, 0, 1},
    {0, 1, 3, 0},
};

inline constexpr PauliCode kLowBits = 0x5555555555555555ULL;

/// Mask (one bit per qubit, in the low bit of each pair) of positions where
/// both codes are non-identity and differ.
inline PauliCode clash_mask(PauliCode a, PauliCode b) {
  PauliCode nz_a = (a | (a >> 1)) & kLowBits;
  PauliCode nz_b = (b | (b >> 1)) & kLowBits;
  PauliCode x = a ^ b;
  PauliCode differ = (x | (x >> 1)) & kLowBits;
  return nz_a & nz_b & differ;
}

inline int phase_exponent(PauliCode a, PauliCode b) {
  int e = 0;
  for (PauliCode m = clash_mask(a, b); m != 0; m &= m - 1) {
    int shift = std::countr_zero(m);
    e += kSingleQubitPhase[(a >> shift) & 3u][(b >> shift) & 3u];
  }
  return e & 3;
}

}  // namespace detail

/// Code of the product string K*L (phase discarded). Digit-wise this is XOR
/// for the labelling 0=I, 1=X, 2=Y, 3=Z.
inline PauliCode compose_codes(PauliCode a, PauliCode b) { return a ^ b; }

/// Phase S(K,L) of sigma_K sigma_L = S(K,L) sigma_{K*L}, on raw codes.
inline Phase phase_codes(PauliCode a, PauliCode b) {
  return Phase(detail::phase_exponent(a, b));
}

inline bool commutes_codes(PauliCode a, PauliCode b) {
  return (std::popcount(detail::clash_mask(a, b)) & 1) == 0;
}

/// sigma_a sigma_b = S * sigma_{a*b}; returns (a*b, S).
inline std::pair<PauliString, Phase> compose(const PauliString& a,
                                             const PauliString& b) {
  detail::require_same_n(a.n(), b.n());
  return {PauliString(a.n(), compose_codes(a.code(), b.code())),
          phase_codes(a.code(), b.code())};
}

inline Phase phase(const PauliString& a, const PauliString& b) {
  detail::require_same_n(a.n(), b.n());
  return phase_codes(a.code(), b.code());
}

inline bool commutes(const PauliString& a, const PauliString& b) {
  detail::require_same_n(a.n(), b.n());
  return commutes_codes(a.code(), b.code());
}

/// Structure constant C_KL = i S(K,L) - i S(L,K): 0 for commuting strings,
/// +-2 otherwise.
inline double structure_constant(const PauliString& a, const PauliString& b) {
  detail::require_same_n(a.n(), b.n());
  std::complex<double> i(0.0, 1.0);
  std::complex<double> c = i * phase_codes(a.code(), b.code()).value() -
                           i * phase_codes(b.code(), a.code()).value();
  return c.real();
}

/// Parses "0123"-style digits or "IXYZ"-style letters (case-insensitive).
/// The alphabets may not be mixed within one string.
inline PauliString parse_string(std::string_view text) {
  if (text.empty()) throw ParseError("empty Pauli string");
  if (text.size() > static_cast<std::size_t>(kMaxQubits)) {
    throw ParseError("Pauli string '" + std::string(text) + "' longer than " +
                     std::to_string(kMaxQubits) + " qubits");
  }
  bool digits = text[0] >= '0' && text[0] <= '9';
  PauliCode code = 0;
  for (char ch : text) {
    int d = -1;
    if (digits) {
      if (ch >= '0' && ch <= '3') d = ch - '0';
    } else {
      switch (ch) {
        case 'I': case 'i': d = 0; break;
        case 'X': case 'x': d = 1; break;
        case 'Y': case 'y': d = 2; break;
        case 'Z': case 'z': d = 3; break;
        default: break;
      }
    }
    if (d < 0) {
      throw ParseError("invalid character '" + std::string(1, ch) +
                       "' in Pauli string '" + std::string(text) + "'");
    }
    code = (code << 2) | static_cast<PauliCode>(d);
  }
  return PauliString(static_cast<int>(text.size()), code);
}

inline std::string format_string(const PauliString& p,
                                 Alphabet alphabet = Alphabet::Digits) {
  constexpr char digit_chars[4] = {'0', '1', '2', '3'};
  constexpr char letter_chars[4] = {'I', 'X', 'Y', 'Z'};
  const char* table = alphabet == Alphabet::Digits ? digit_chars : letter_chars;
  std::string out(static_cast<std::size_t>(p.n()), '0');
  for (int q = 1; q <= p.n(); ++q) {
    out[static_cast<std::size_t>(q - 1)] = table[p.digit(q)];
  }
  return out;
}

}  // namespace pauliexp
