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

// Timing harness for the coefficient computation versus the dense method.

#pragma once

#include <algorithm>
#include <chrono>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "pauliexp/dense.hpp"
#include "pauliexp/exponential.hpp"
#include "pauliexp/hamiltonian.hpp"

namespace pauliexp::bench {

/// Tensor power of a pattern: every string K on n0 qubits becomes K (x) ... (x) K
/// on n0 * copies qubits. Products of replicated strings are replicated
/// products, so the closed set keeps the same size tau.
inline SparseHamiltonian replicate(const SparseHamiltonian& pattern, int copies) {
  const int n0 = pattern.n();
  SparseHamiltonian out(n0 * copies);
  for (const auto& [code, h] : pattern.terms()) {
    PauliCode rep = 0;
    for (int c = 0; c < copies; ++c) rep = (rep << (2 * n0)) | code;
    out.add_term(rep, h);
  }
  out.set_identity_offset(pattern.identity_offset());
  return out;
}

/// Seven-term four-qubit cluster whose closure is itself (tau = 7).
inline SparseHamiltonian cluster_pattern(const std::vector<double>& h) {
  static const char* kStrings[7] = {"0123", "0213", "0330", "1023",
                                    "1100", "1230", "1313"};
  SparseHamiltonian out(4);
  for (std::size_t k = 0; k < 7; ++k) {
    out.add_term(parse_string(kStrings[k]), h.at(k));
  }
  return out;
}

/// Random Hamiltonian whose support is the full closure of `generators`
/// random strings: tau = 2^rank - 1 with every closed-set member carrying a
/// coefficient in [-1, 1].
template <class Rng>
SparseHamiltonian random_closed_hamiltonian(int n, int generators, Rng& rng,
                                            std::size_t cap = kDefaultClosureCap) {
  const PauliCode max_code = n >= 32 ? ~PauliCode{0} : (PauliCode{1} << (2 * n)) - 1;
  std::uniform_int_distribution<PauliCode> code_dist(1, max_code);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::vector<PauliCode> seeds;
  for (int g = 0; g < generators; ++g) seeds.push_back(code_dist(rng));
  ClosedTermSet t = close(n, seeds, cap);
  SparseHamiltonian h(n);
  for (PauliCode c : t.codes()) h.add_term(c, coeff(rng));
  return h;
}

/// Minimum over `samples` of the mean wall time of fn() across a batch sized
/// to last at least min_batch_seconds.
template <class Fn>
double time_min(Fn&& fn, int samples = 7, double min_batch_seconds = 0.02) {
  using clock = std::chrono::steady_clock;
  long batch = 1;
  for (;;) {
    auto t0 = clock::now();
    for (long i = 0; i < batch; ++i) fn();
    double dt = std::chrono::duration<double>(clock::now() - t0).count();
    if (dt >= min_batch_seconds || batch > (1L << 24)) break;
    batch *= 2;
  }
  double best = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    auto t0 = clock::now();
    for (long i = 0; i < batch; ++i) fn();
    double dt = std::chrono::duration<double>(clock::now() - t0).count();
    best = std::min(best, dt / static_cast<double>(batch));
  }
  return best;
}

/// Closure, structure matrix, eigen-decomposition and coefficient vector; no
/// dense reconstruction.
inline double time_spectral(const SparseHamiltonian& h, Complex beta, int samples = 7) {
  volatile double sink = 0.0;
  return time_min(
      [&] {
        PauliExpansion e = exp_spectral(h, beta);
        sink = sink + e.coefficient(0).real();
      },
      samples);
}

/// reconstruct_dense followed by dense_exp; a single run when slow.
inline double time_dense(const SparseHamiltonian& h, Complex beta,
                         int dense_cap = kMaxDenseCap, int samples = 3) {
  volatile double sink = 0.0;
  auto run = [&] {
    DenseOperator d = dense_exp(reconstruct_dense(h, dense_cap), beta, dense_cap);
    sink = sink + d.m(0, 0).real();
  };
  using clock = std::chrono::steady_clock;
  auto t0 = clock::now();
  run();
  double first = std::chrono::duration<double>(clock::now() - t0).count();
  if (first > 1.0) return first;
  return std::min(first, time_min(run, samples, 0.05));
}

struct Row {
  std::string series;
  std::string method;
  int n = 0;
  std::size_t tau = 0;
  double wall_time = 0.0;
};

}  // namespace pauliexp::bench
