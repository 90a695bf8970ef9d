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

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "pauliexp/dense.hpp"
#include "pauliexp/error.hpp"
#include "pauliexp/pauli_expansion.hpp"
#include "pauliexp/resolvent.hpp"

namespace pauliexp {

/// %.17g: enough digits to round-trip any double.
inline std::string format_real(double x) {
  std::array<char, 40> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", x);
  return buf.data();
}

/**
 * Parses a complex scalar: "1.5", "-2", "1.5+0.3i", "1e-3-2i", "i", "-2i".
 */
inline Complex parse_complex(std::string_view text) {
  auto fail = [&] {
    return ParseError("'" + std::string(text) + "' is not a complex number");
  };
  std::string s;
  for (char ch : text) {
    if (ch != ' ' && ch != '\t') s.push_back(ch);
  }
  if (s.empty()) throw fail();

  auto parse_num = [&](std::string_view tok) {
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) throw fail();
    return v;
  };
  // Coefficient of a trailing 'i' term: "", "+", "-" mean +-1.
  auto parse_imag = [&](std::string_view tok) {
    if (tok.empty() || tok == "+") return 1.0;
    if (tok == "-") return -1.0;
    return parse_num(tok);
  };

  if (s.back() != 'i' && s.back() != 'I') return {parse_num(s), 0.0};
  std::string_view body(s.data(), s.size() - 1);
  // Split at the last sign that is not part of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' &&
        body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) return {0.0, parse_imag(body)};
  return {parse_num(body.substr(0, split)), parse_imag(body.substr(split))};
}

inline std::string format_complex(Complex z) {
  return format_real(z.real()) + (std::signbit(z.imag()) ? "-" : "+") +
         format_real(std::abs(z.imag())) + "i";
}

/// {"n":..., "beta":{"re":..,"im":..}, "coeffs":[{"pauli":"..","re":..,"im":..}]}
inline nlohmann::ordered_json expansion_to_json(const PauliExpansion& e, Complex beta,
                                                Alphabet alphabet = Alphabet::Digits) {
  nlohmann::ordered_json j;
  j["n"] = e.n();
  j["beta"] = {{"re", beta.real()}, {"im", beta.imag()}};
  auto coeffs = nlohmann::ordered_json::array();
  for (const auto& [code, c] : e.coeffs()) {
    coeffs.push_back({{"pauli", format_string(PauliString(e.n(), code), alphabet)},
                      {"re", c.real()},
                      {"im", c.imag()}});
  }
  j["coeffs"] = std::move(coeffs);
  return j;
}

/// Aligned columns: pauli, re, im.
inline void write_expansion_text(std::ostream& os, const PauliExpansion& e,
                                 Alphabet alphabet = Alphabet::Digits) {
  const int width = std::max(5, e.n());
  char line[128];
  std::snprintf(line, sizeof line, "%-*s  %25s  %25s\n", width, "pauli", "re", "im");
  os << line;
  for (const auto& [code, c] : e.coeffs()) {
    std::snprintf(line, sizeof line, "%-*s  %25s  %25s\n", width,
                  format_string(PauliString(e.n(), code), alphabet).c_str(),
                  format_real(c.real()).c_str(), format_real(c.imag()).c_str());
    os << line;
  }
}

/// Nested rows of [re, im] pairs.
inline nlohmann::json matrix_to_json(const Eigen::MatrixXcd& m) {
  auto rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    auto row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back({m(r, c).real(), m(r, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Accepts nested [re, im] pairs or plain real numbers.
inline Eigen::MatrixXcd matrix_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_array() || j.empty()) throw ParseError("matrix JSON must be a non-empty array");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j.at(0).size());
    Eigen::MatrixXcd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      const auto& row = j.at(static_cast<std::size_t>(r));
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
        throw ParseError("matrix JSON rows have inconsistent length");
      }
      for (Eigen::Index c = 0; c < cols; ++c) {
        const auto& v = row.at(static_cast<std::size_t>(c));
        if (v.is_number()) {
          m(r, c) = v.get<double>();
        } else if (v.is_array() && v.size() == 2) {
          m(r, c) = Complex(v.at(0).get<double>(), v.at(1).get<double>());
        } else {
          throw ParseError("matrix entries must be numbers or [re, im] pairs");
        }
      }
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed matrix JSON: ") + e.what());
  }
}

inline constexpr std::array<char, 4> kDenseMagic = {'P', 'E', 'X', 'P'};

namespace detail {

template <class T>
void write_le(std::ostream& os, T value) {
  static_assert(std::endian::native == std::endian::little ||
                std::endian::native == std::endian::big);
  std::array<char, sizeof(T)> bytes{};
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes.begin(), bytes.end());
  }
  os.write(bytes.data(), bytes.size());
}

template <class T>
T read_le(std::istream& is) {
  std::array<char, sizeof(T)> bytes{};
  if (!is.read(bytes.data(), bytes.size())) {
    throw ParseError("truncated binary dense matrix");
  }
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes.begin(), bytes.end());
  }
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

}  // namespace detail

/// "PEXP", u32 n, then 4^n (re, im) f64 pairs row-major, all little-endian.
inline void write_dense_binary(std::ostream& os, const DenseOperator& op) {
  os.write(kDenseMagic.data(), kDenseMagic.size());
  detail::write_le<std::uint32_t>(os, static_cast<std::uint32_t>(op.n));
  for (Eigen::Index r = 0; r < op.dim(); ++r) {
    for (Eigen::Index c = 0; c < op.dim(); ++c) {
      detail::write_le<double>(os, op.m(r, c).real());
      detail::write_le<double>(os, op.m(r, c).imag());
    }
  }
}

inline DenseOperator read_dense_binary(std::istream& is) {
  std::array<char, 4> magic{};
  if (!is.read(magic.data(), magic.size()) || magic != kDenseMagic) {
    throw ParseError("binary dense matrix lacks the PEXP magic");
  }
  auto n = detail::read_le<std::uint32_t>(is);
  if (n > static_cast<std::uint32_t>(kMaxDenseCap)) {
    throw ParseError("binary dense matrix has " + std::to_string(n) +
                     " qubits, above the dense limit");
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      double re = detail::read_le<double>(is);
      double im = detail::read_le<double>(is);
      m(r, c) = Complex(re, im);
    }
  }
  return DenseOperator(static_cast<int>(n), std::move(m));
}

/// Debug dump of the structure matrix with its index map.
inline nlohmann::ordered_json structure_matrix_to_json(const StructureMatrix& a,
                                                       Alphabet alphabet = Alphabet::Digits) {
  nlohmann::ordered_json j;
  j["n"] = a.n();
  j["tau"] = a.tau();
  auto index = nlohmann::ordered_json::array();
  for (Eigen::Index pos = 0; pos < a.size(); ++pos) {
    index.push_back(format_string(PauliString(a.n(), a.code_at(pos)), alphabet));
  }
  j["index"] = std::move(index);
  j["matrix"] = matrix_to_json(a.matrix());
  return j;
}

}  // namespace pauliexp
