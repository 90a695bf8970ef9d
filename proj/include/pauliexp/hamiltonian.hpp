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
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "pauliexp/error.hpp"
#include "pauliexp/pauli_string.hpp"

namespace pauliexp {

inline constexpr std::size_t kDefaultClosureCap = 4096;

/**
 * H = h_0 I + sum_K h_K sigma_K with real coefficients.
 *
 * The identity contribution is kept apart in identity_offset(); terms() never
 * holds code 0. Terms explicitly given a zero coefficient stay in the support.
 */
class SparseHamiltonian {
 public:
  explicit SparseHamiltonian(int n) : n_(n) { PauliString check(n); }

  int n() const { return n_; }
  const std::map<PauliCode, double>& terms() const { return terms_; }
  double identity_offset() const { return identity_offset_; }

  /// Accumulates h into the coefficient of `code`; code 0 feeds the offset.
  void add_term(PauliCode code, double h) {
    PauliString check(n_, code);
    if (!std::isfinite(h)) {
      throw ParseError("non-finite coefficient for term " +
                       format_string(check));
    }
    if (code == 0) {
      identity_offset_ += h;
    } else {
      terms_[code] += h;
    }
  }
  void add_term(const PauliString& p, double h) {
    detail::require_same_n(n_, p.n());
    add_term(p.code(), h);
  }

  void set_identity_offset(double h0) {
    if (!std::isfinite(h0)) throw ParseError("non-finite identity offset");
    identity_offset_ = h0;
  }

  double coefficient(PauliCode code) const {
    if (code == 0) return identity_offset_;
    auto it = terms_.find(code);
    return it == terms_.end() ? 0.0 : it->second;
  }

  std::vector<PauliCode> support() const {
    std::vector<PauliCode> out;
    out.reserve(terms_.size());
    for (const auto& [code, h] : terms_) out.push_back(code);
    return out;
  }

  /// (sum_K h_K^2)^(1/2) over the traceless part.
  double norm() const {
    double s = 0.0;
    for (const auto& [code, h] : terms_) s += h * h;
    return std::sqrt(s);
  }

 private:
  int n_;
  std::map<PauliCode, double> terms_;
  double identity_offset_ = 0.0;
};

/// Ascending, duplicate-free, composition-closed list of non-identity codes.
/// The identity is implicitly a member.
class ClosedTermSet {
 public:
  ClosedTermSet(int n, std::vector<PauliCode> codes)
      : n_(n), codes_(std::move(codes)) {
    PauliString check(n);
    if (!std::is_sorted(codes_.begin(), codes_.end()) ||
        std::adjacent_find(codes_.begin(), codes_.end()) != codes_.end()) {
      throw NotClosed("term list must be strictly ascending");
    }
    if (!codes_.empty() && codes_.front() == 0) {
      throw NotClosed("identity must not be listed explicitly");
    }
  }

  int n() const { return n_; }
  std::size_t tau() const { return codes_.size(); }
  const std::vector<PauliCode>& codes() const { return codes_; }

  /// Index of `code` in codes(), if present.
  std::optional<std::size_t> index_of(PauliCode code) const {
    auto it = std::lower_bound(codes_.begin(), codes_.end(), code);
    if (it == codes_.end() || *it != code) return std::nullopt;
    return static_cast<std::size_t>(it - codes_.begin());
  }
  bool contains(PauliCode code) const {
    return code == 0 || index_of(code).has_value();
  }

  /// Verifies that K_i * K_j lies in the set for every pair.
  bool is_closed() const {
    for (std::size_t i = 0; i < codes_.size(); ++i) {
      for (std::size_t j = i + 1; j < codes_.size(); ++j) {
        if (!contains(compose_codes(codes_[i], codes_[j]))) return false;
      }
    }
    return true;
  }

 private:
  int n_;
  std::vector<PauliCode> codes_;
};

/// Smallest composition-closed superset of `seeds` (identity implicit).
inline ClosedTermSet close(int n, std::vector<PauliCode> seeds,
                           std::size_t cap = kDefaultClosureCap) {
  for (PauliCode c : seeds) PauliString check(n, c);
  std::erase(seeds, PauliCode{0});
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  if (cap < seeds.size()) {
    throw ClosureExplosion(cap, seeds.size());
  }

  std::unordered_set<PauliCode> seen(seeds.begin(), seeds.end());
  std::vector<PauliCode> members = seeds;
  // Every new member is composed with everything before it; products of
  // earlier pairs are already in `seen`.
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      PauliCode m = compose_codes(members[i], members[j]);
      if (m == 0 || seen.contains(m)) continue;
      seen.insert(m);
      members.push_back(m);
      if (members.size() > cap) throw ClosureExplosion(cap, members.size());
    }
  }
  std::sort(members.begin(), members.end());
  return ClosedTermSet(n, std::move(members));
}

inline ClosedTermSet close(const SparseHamiltonian& h,
                           std::size_t cap = kDefaultClosureCap) {
  return close(h.n(), h.support(), cap);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline double parse_real(std::string_view tok, std::size_t line_no) {
  // std::from_chars rejects a leading '+'.
  std::string_view body = tok;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
  if (ec != std::errc() || ptr != body.data() + body.size() || body.empty()) {
    throw ParseError("line " + std::to_string(line_no) +
                     ": coefficient '" + std::string(tok) +
                     "' is not a real number");
  }
  return v;
}

}  // namespace detail

/**
 * Line format: `<real coefficient> <pauli string>` per line, '#' starts a
 * comment, blank lines are skipped. Repeated strings are summed, identity
 * strings go to the offset, and all strings must have the same length.
 */
inline SparseHamiltonian parse_hamiltonian(std::string_view text) {
  std::vector<std::pair<double, PauliString>> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = detail::trim(line);
    if (line.empty()) continue;

    auto split = line.find_first_of(" \t");
    if (split == std::string_view::npos) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected '<coefficient> <pauli string>'");
    }
    std::string_view coeff_tok = line.substr(0, split);
    std::string_view pauli_tok = detail::trim(line.substr(split));
    if (pauli_tok.find_first_of(" \t") != std::string_view::npos) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": trailing tokens after Pauli string");
    }
    double h = detail::parse_real(coeff_tok, line_no);
    PauliString p = [&] {
      try {
        return parse_string(pauli_tok);
      } catch (const Error& e) {
        throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
      }
    }();
    if (!rows.empty() && rows.front().second.n() != p.n()) {
      throw ParseError("line " + std::to_string(line_no) + ": Pauli string '" +
                       std::string(pauli_tok) + "' has " +
                       std::to_string(p.n()) + " qubits, expected " +
                       std::to_string(rows.front().second.n()));
    }
    rows.emplace_back(h, p);
  }
  if (rows.empty()) throw ParseError("Hamiltonian has no terms");

  SparseHamiltonian out(rows.front().second.n());
  for (const auto& [h, p] : rows) out.add_term(p, h);
  return out;
}

/// JSON form: {"n": int, "terms": [{"coeff": real, "pauli": string}]}.
inline SparseHamiltonian parse_hamiltonian_json(const nlohmann::json& j) {
  try {
    int n = j.at("n").get<int>();
    SparseHamiltonian out(n);
    for (const auto& term : j.at("terms")) {
      const auto& coeff = term.at("coeff");
      if (!coeff.is_number()) {
        throw ParseError("term coefficient must be a real number");
      }
      PauliString p = parse_string(term.at("pauli").get<std::string>());
      if (p.n() != n) {
        throw ParseError("Pauli string '" + term.at("pauli").get<std::string>() +
                         "' does not match n = " + std::to_string(n));
      }
      out.add_term(p, coeff.get<double>());
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed Hamiltonian JSON: ") + e.what());
  } catch (const DimensionError& e) {
    throw ParseError(e.what());
  }
}

/// Reads a Hamiltonian file; content starting with '{' is treated as JSON.
inline SparseHamiltonian load_hamiltonian(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open Hamiltonian file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  if (detail::trim(text).starts_with("{")) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("'" + path + "': " + e.what());
    }
    return parse_hamiltonian_json(j);
  }
  return parse_hamiltonian(text);
}

/// Text form of a Hamiltonian that parse_hamiltonian reads back exactly.
inline std::string format_hamiltonian(const SparseHamiltonian& h,
                                      Alphabet alphabet = Alphabet::Digits) {
  std::ostringstream os;
  os.precision(17);
  if (h.identity_offset() != 0.0) {
    os << h.identity_offset() << ' '
       << format_string(PauliString(h.n()), alphabet) << '\n';
  }
  for (const auto& [code, c] : h.terms()) {
    os << c << ' ' << format_string(PauliString(h.n(), code), alphabet) << '\n';
  }
  return os.str();
}

}  // namespace pauliexp
