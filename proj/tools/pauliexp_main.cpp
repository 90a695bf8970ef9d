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

// pauliexp: exponentials of Pauli-sparse Hamiltonians from the command line.
//
// Exit codes:
//   0  success
//   1  input parse error (Hamiltonian, matrix or scalar)
//   2  closure explosion (Hamiltonian not sparse within --closure-cap)
//   3  numerical failure (eigensolver, contour, singular system)
//   4  verification failed (verify subcommand)
//   5  precondition violated (anticommute on commuting terms, dense cap,
//      non-Hermitian input, symmetry check on a foreign support)
//   6  usage or output I/O error

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pauliexp/bench.hpp"
#include "pauliexp/pauliexp.hpp"

namespace {

using namespace pauliexp;

enum ExitCode : int {
  kOk = 0,
  kParseError = 1,
  kClosureExplosion = 2,
  kNumericalFailure = 3,
  kVerifyFailed = 4,
  kPrecondition = 5,
  kUsage = 6,
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string input;
  std::string output;
  std::string beta_text;
  std::optional<double> time;
  std::string method = "auto";
  std::string format = "pauli-json";
  std::string alphabet = "digits";
  std::size_t closure_cap = kDefaultClosureCap;
  int nodes = 64;
  std::string center_text;
  std::optional<double> radius;
  int dense_cap = kDefaultDenseCap;
  double zero_tol = kDefaultZeroTol;
  std::string dump_a;
  bool verbose = false;
};

Alphabet alphabet_of(const RunConfig& cfg) {
  return cfg.alphabet == "letters" ? Alphabet::Letters : Alphabet::Digits;
}

Complex beta_of(const RunConfig& cfg) {
  if (cfg.time && !cfg.beta_text.empty()) {
    throw UsageError("--beta and --time are mutually exclusive");
  }
  if (cfg.time) return {0.0, *cfg.time};
  if (cfg.beta_text.empty()) throw UsageError("one of --beta or --time is required");
  return parse_complex(cfg.beta_text);
}

/// Writes to the configured output path, or stdout.
class Sink {
 public:
  explicit Sink(const std::string& path, bool binary = false) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(
          path, binary ? std::ios::out | std::ios::binary : std::ios::out);
      if (!*file_) throw UsageError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& out() { return file_ ? *file_ : std::cout; }
  void finish() {
    out().flush();
    if (!out()) throw UsageError("failed writing output");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void check_dense_cap(const RunConfig& cfg) {
  if (cfg.dense_cap < 1 || cfg.dense_cap > kMaxDenseCap) {
    throw UsageError("--dense-cap must lie in [1, " + std::to_string(kMaxDenseCap) + "]");
  }
}

EngineOptions engine_options(const RunConfig& cfg) {
  EngineOptions o;
  o.closure_cap = cfg.closure_cap;
  return o;
}

void maybe_dump_structure(const RunConfig& cfg, const SparseHamiltonian& h) {
  if (cfg.dump_a.empty()) return;
  StructureMatrix a = build_structure_matrix(h, close(h, cfg.closure_cap));
  Sink sink(cfg.dump_a);
  sink.out() << structure_matrix_to_json(a, alphabet_of(cfg)).dump(1) << '\n';
  sink.finish();
}

std::string resolve_method(const RunConfig& cfg, const SparseHamiltonian& h) {
  if (cfg.method != "auto") return cfg.method;
  return pairwise_anticommuting(h) ? "anticommute" : "spectral";
}

struct ExpResult {
  PauliExpansion pauli;
  std::optional<DenseOperator> dense;
};

ExpResult run_exp(const RunConfig& cfg, const SparseHamiltonian& h, Complex beta) {
  const std::string method = resolve_method(cfg, h);
  if (cfg.verbose) std::cerr << "pauliexp: method " << method << '\n';
  if (method == "spectral") return {exp_spectral(h, beta, engine_options(cfg)), {}};
  if (method == "anticommute") {
    // Closure still bounds the problem size the same way as the other paths.
    close(h, cfg.closure_cap);
    return {exp_anticommuting(h, beta), {}};
  }
  if (method == "contour") {
    std::optional<ContourSpec> spec;
    if (!cfg.center_text.empty() || cfg.radius || cfg.nodes != 64) {
      StructureMatrix a = build_structure_matrix(h, close(h, cfg.closure_cap));
      ContourSpec c = default_contour(a, cfg.nodes);
      if (!cfg.center_text.empty()) c.center = parse_complex(cfg.center_text);
      if (cfg.radius) c.radius = *cfg.radius;
      spec = c;
    }
    return {exp_contour(h, beta, spec, engine_options(cfg)), {}};
  }
  if (method == "dense") {
    check_dense_cap(cfg);
    DenseOperator d = dense_exp(reconstruct_dense(h, cfg.dense_cap), beta, cfg.dense_cap);
    Decomposition dec = pauli_decompose(d, cfg.zero_tol, cfg.dense_cap);
    PauliExpansion e = std::holds_alternative<PauliExpansion>(dec)
                           ? std::get<PauliExpansion>(dec)
                           : to_expansion(std::get<SparseHamiltonian>(dec));
    return {std::move(e), std::move(d)};
  }
  throw UsageError("unknown method '" + method + "'");
}

void write_expansion(const RunConfig& cfg, const PauliExpansion& e, Complex beta,
                     const std::optional<DenseOperator>& dense) {
  const bool binary = cfg.format == "dense-bin";
  Sink sink(cfg.output, binary);
  if (cfg.format == "pauli-json") {
    sink.out() << expansion_to_json(e, beta, alphabet_of(cfg)).dump() << '\n';
  } else if (cfg.format == "pauli-text") {
    write_expansion_text(sink.out(), e, alphabet_of(cfg));
  } else if (cfg.format == "dense-json" || binary) {
    check_dense_cap(cfg);
    DenseOperator d = dense ? *dense : reconstruct_dense(e, cfg.dense_cap);
    if (binary) {
      write_dense_binary(sink.out(), d);
    } else {
      sink.out() << matrix_to_json(d.m).dump() << '\n';
    }
  } else {
    throw UsageError("unknown format '" + cfg.format + "'");
  }
  sink.finish();
}

int cmd_exp(const RunConfig& cfg) {
  SparseHamiltonian h = load_hamiltonian(cfg.input);
  Complex beta = beta_of(cfg);
  maybe_dump_structure(cfg, h);
  ExpResult r = run_exp(cfg, h, beta);
  write_expansion(cfg, r.pauli, beta, r.dense);
  return kOk;
}

std::vector<double> parse_beta_list(const std::vector<std::string>& items) {
  std::vector<double> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      Complex b = parse_complex(tok);
      if (b.imag() != 0.0) throw ParseError("partition needs real beta, got '" + tok + "'");
      out.push_back(b.real());
    }
  }
  if (out.empty()) throw UsageError("at least one --beta value is required");
  return out;
}

std::string free_energy_text(double beta, double z_trace) {
  if (beta == 0.0) return "n/a";
  return format_real(-std::log(z_trace) / beta);
}

// Z invariance under h1 -> -h1, nu -> -nu on the four-qubit cluster support.
// Negating h3, h5 and h7 flips nu = 2 h2 h3 + 2 h4 h5 - 2 h6 h7 and keeps mu.
struct SymmetryReport {
  double z = 0.0;
  double z_transformed = 0.0;
  bool invariant = false;
};

SymmetryReport symmetry_check(const SparseHamiltonian& h, double beta,
                              const EngineOptions& opts) {
  static const char* kCluster[7] = {"0123", "0213", "0330", "1023",
                                    "1100", "1230", "1313"};
  if (h.n() != 4) throw PreconditionError("symmetry check needs the 4-qubit cluster support");
  std::set<PauliCode> allowed;
  for (const char* s : kCluster) allowed.insert(parse_string(s).code());
  for (const auto& [code, c] : h.terms()) {
    if (!allowed.contains(code)) {
      throw PreconditionError("symmetry check: term " + format_string(PauliString(4, code)) +
                              " is outside the cluster support");
    }
  }
  std::set<PauliCode> negated;
  for (std::size_t k : {0, 2, 4, 6}) negated.insert(parse_string(kCluster[k]).code());
  SparseHamiltonian g(4);
  g.set_identity_offset(h.identity_offset());
  for (const auto& [code, c] : h.terms()) g.add_term(code, negated.contains(code) ? -c : c);
  SymmetryReport r;
  r.z = partition_function(h, beta, opts).z_normalized;
  r.z_transformed = partition_function(g, beta, opts).z_normalized;
  r.invariant = std::abs(r.z - r.z_transformed) <= 1e-10 * std::max(1.0, std::abs(r.z));
  return r;
}

int cmd_partition(const RunConfig& cfg, const std::vector<std::string>& betas, bool gibbs,
                  bool symmetry, const std::string& table_format) {
  SparseHamiltonian h = load_hamiltonian(cfg.input);
  std::vector<double> grid = parse_beta_list(betas);
  const EngineOptions opts = engine_options(cfg);
  Sink sink(cfg.output);
  auto& os = sink.out();

  if (table_format == "json") {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (double beta : grid) {
      PartitionFunction z = partition_function(h, beta, opts);
      nlohmann::ordered_json row;
      row["beta"] = beta;
      row["z_normalized"] = z.z_normalized;
      row["z_trace"] = z.z_trace;
      if (beta == 0.0) {
        row["free_energy"] = nullptr;
      } else {
        row["free_energy"] = -std::log(z.z_trace) / beta;
      }
      if (gibbs) row["gibbs"] = expansion_to_json(gibbs_state(h, beta, opts), beta, alphabet_of(cfg));
      if (symmetry) {
        SymmetryReport s = symmetry_check(h, beta, opts);
        row["symmetry"] = {{"z_transformed", s.z_transformed}, {"invariant", s.invariant}};
      }
      rows.push_back(std::move(row));
    }
    os << rows.dump() << '\n';
  } else {
    os << "# beta,z_normalized,z_trace,free_energy";
    if (symmetry) os << ",z_transformed,invariant";
    os << '\n';
    for (double beta : grid) {
      PartitionFunction z = partition_function(h, beta, opts);
      os << format_real(beta) << ',' << format_real(z.z_normalized) << ','
         << format_real(z.z_trace) << ',' << free_energy_text(beta, z.z_trace);
      if (symmetry) {
        SymmetryReport s = symmetry_check(h, beta, opts);
        os << ',' << format_real(s.z_transformed) << ',' << (s.invariant ? "yes" : "no");
      }
      os << '\n';
      if (gibbs) write_expansion_text(os, gibbs_state(h, beta, opts), alphabet_of(cfg));
    }
  }
  sink.finish();
  return kOk;
}

int cmd_gibbs(const RunConfig& cfg) {
  SparseHamiltonian h = load_hamiltonian(cfg.input);
  Complex beta = beta_of(cfg);
  if (beta.imag() != 0.0) throw ParseError("gibbs needs a real beta");
  PauliExpansion rho = gibbs_state(h, beta.real(), engine_options(cfg));
  write_expansion(cfg, rho, beta, std::nullopt);
  return kOk;
}

int cmd_verify(RunConfig cfg, double tol, bool corrupt) {
  SparseHamiltonian h = load_hamiltonian(cfg.input);
  if (cfg.beta_text.empty() && !cfg.time) cfg.beta_text = "1";
  Complex beta = beta_of(cfg);
  check_dense_cap(cfg);
  if (h.n() > cfg.dense_cap) {
    throw CapExceeded("verify needs n <= dense cap (" + std::to_string(cfg.dense_cap) + ")");
  }
  if (cfg.method == "dense") throw UsageError("verify compares against the dense method");
  PauliExpansion e = run_exp(cfg, h, beta).pauli;
  if (corrupt) {
    // Flip the sign of the largest coefficient.
    PauliCode worst = 0;
    double mag = -1.0;
    for (const auto& [code, c] : e.coeffs()) {
      if (std::abs(c) > mag) {
        mag = std::abs(c);
        worst = code;
      }
    }
    e.set(worst, -e.coefficient(worst));
  }
  DenseOperator oracle = dense_exp(reconstruct_dense(h, cfg.dense_cap), beta, cfg.dense_cap);
  CompareMetrics m = compare(reconstruct_dense(e, cfg.dense_cap), oracle);
  const bool pass = m.max_abs <= tol;
  Sink sink(cfg.output);
  sink.out() << (pass ? "PASS" : "FAIL") << " method=" << resolve_method(cfg, h)
             << " n=" << h.n() << " tau=" << close(h, cfg.closure_cap).tau()
             << " beta=" << format_complex(beta) << " max_abs_error=" << format_real(m.max_abs)
             << " frobenius_error=" << format_real(m.frobenius) << " tol=" << format_real(tol)
             << '\n';
  sink.finish();
  return pass ? kOk : kVerifyFailed;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw UsageError("'" + tok + "' is not an integer");
    }
  }
  return out;
}

int cmd_bench(const RunConfig& cfg, const std::string& n_list, const std::string& tau_n,
              const std::string& generators, const std::string& dense_list, int samples) {
  Sink sink(cfg.output);
  auto& os = sink.out();
  os << "series,method,n,tau,wall_time_s\n";
  auto emit = [&](const char* series, const char* method, int n, std::size_t tau, double t) {
    os << series << ',' << method << ',' << n << ',' << tau << ',' << format_real(t) << '\n';
    os.flush();
  };
  const Complex beta = 1.0;

  // Fixed tau = 7: the cluster pattern replicated over n / 4 blocks.
  SparseHamiltonian pattern =
      bench::cluster_pattern({0.31, -0.52, 0.27, 0.66, -0.18, 0.45, -0.73});
  for (int n : parse_int_list(n_list)) {
    if (n % 4 != 0 || n < 4 || n > kMaxQubits) {
      throw UsageError("fixed-tau series needs n a multiple of 4 in [4, 32], got " +
                       std::to_string(n));
    }
    SparseHamiltonian h = bench::replicate(pattern, n / 4);
    emit("fixed_tau", "spectral", n, close(h).tau(), bench::time_spectral(h, beta, samples));
  }

  // Growing tau at fixed n: closures of g random generators.
  const std::vector<int> gens = parse_int_list(generators);
  const std::vector<int> n_tau_list = parse_int_list(tau_n);
  if (!gens.empty() && n_tau_list.size() != 1) throw UsageError("--tau-n takes one value");
  std::mt19937_64 rng(7);
  for (int g : gens) {
    const int n_tau = n_tau_list.front();
    SparseHamiltonian h = bench::random_closed_hamiltonian(n_tau, g, rng, cfg.closure_cap);
    emit("tau_sweep", "spectral", n_tau, close(h, cfg.closure_cap).tau(),
         bench::time_spectral(h, beta, samples));
  }

  // Dense reference on the same replicated pattern (n padded with identity).
  for (int n : parse_int_list(dense_list)) {
    if (n < 4 || n > kMaxDenseCap) {
      throw UsageError("dense series needs n in [4, " + std::to_string(kMaxDenseCap) + "]");
    }
    SparseHamiltonian h(n);
    for (const auto& [code, c] : pattern.terms()) h.add_term(code, c);
    emit("dense", "dense", n, close(h).tau(), bench::time_dense(h, beta, kMaxDenseCap));
  }
  sink.finish();
  return kOk;
}

int cmd_decompose(const RunConfig& cfg, std::optional<int> embed_n, const std::string& fmt) {
  std::ifstream in(cfg.input, std::ios::binary);
  if (!in) throw ParseError("cannot open matrix file '" + cfg.input + "'");
  char first = 0;
  in.get(first);
  in.unget();
  Eigen::MatrixXcd m;
  if (first == 'P') {
    m = read_dense_binary(in).m;
  } else {
    std::stringstream buf;
    buf << in.rdbuf();
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("matrix file: ") + e.what());
    }
    m = matrix_from_json(j.is_object() ? j.at("matrix") : j);
  }
  if (embed_n) m = embed(m, *embed_n).m;
  check_dense_cap(cfg);
  Decomposition d = pauli_decompose(m, cfg.zero_tol, cfg.dense_cap);
  Sink sink(cfg.output);
  if (auto* h = std::get_if<SparseHamiltonian>(&d)) {
    if (fmt == "json") {
      nlohmann::ordered_json j;
      j["n"] = h->n();
      auto terms = nlohmann::ordered_json::array();
      if (h->identity_offset() != 0.0) {
        terms.push_back({{"coeff", h->identity_offset()},
                         {"pauli", format_string(PauliString(h->n()), alphabet_of(cfg))}});
      }
      for (const auto& [code, c] : h->terms()) {
        terms.push_back({{"coeff", c},
                         {"pauli", format_string(PauliString(h->n(), code), alphabet_of(cfg))}});
      }
      j["terms"] = std::move(terms);
      sink.out() << j.dump() << '\n';
    } else {
      sink.out() << format_hamiltonian(*h, alphabet_of(cfg));
    }
  } else {
    const auto& e = std::get<PauliExpansion>(d);
    if (fmt == "json") {
      sink.out() << expansion_to_json(e, 0.0, alphabet_of(cfg)).dump() << '\n';
    } else {
      write_expansion_text(sink.out(), e, alphabet_of(cfg));
    }
  }
  sink.finish();
  return kOk;
}

int cmd_closure(const RunConfig& cfg, const std::string& fmt) {
  SparseHamiltonian h = load_hamiltonian(cfg.input);
  ClosedTermSet t = close(h, cfg.closure_cap);
  Sink sink(cfg.output);
  if (fmt == "json") {
    nlohmann::ordered_json j;
    j["n"] = t.n();
    j["tau"] = t.tau();
    auto codes = nlohmann::ordered_json::array();
    for (PauliCode c : t.codes()) {
      codes.push_back({{"pauli", format_string(PauliString(t.n(), c), alphabet_of(cfg))},
                       {"coeff", h.coefficient(c)},
                       {"added", !h.terms().contains(c)}});
    }
    j["terms"] = std::move(codes);
    sink.out() << j.dump() << '\n';
  } else {
    sink.out() << "n " << t.n() << "\ntau " << t.tau() << '\n';
    for (PauliCode c : t.codes()) {
      sink.out() << format_string(PauliString(t.n(), c), alphabet_of(cfg)) << ' '
                 << format_real(h.coefficient(c))
                 << (h.terms().contains(c) ? "" : " (added)") << '\n';
    }
  }
  sink.finish();
  return kOk;
}

void add_common(CLI::App* sub, RunConfig& cfg, bool needs_input = true) {
  if (needs_input) {
    sub->add_option("-i,--input", cfg.input, "Input file")->required()->check(CLI::ExistingFile);
  }
  sub->add_option("-o,--output", cfg.output, "Output path (default stdout)");
  sub->add_option("--closure-cap", cfg.closure_cap, "Maximum closed-set size tau")
      ->capture_default_str();
  sub->add_option("--alphabet", cfg.alphabet, "Pauli string alphabet in output")
      ->check(CLI::IsMember({"digits", "letters"}))
      ->capture_default_str();
  sub->add_option("--dense-cap", cfg.dense_cap, "Qubit cap for dense operations")
      ->capture_default_str();
  sub->add_option("--zero-tol", cfg.zero_tol, "Pruning threshold for Pauli decomposition")
      ->capture_default_str();
  sub->add_flag("-v,--verbose", cfg.verbose, "Report the chosen method on stderr");
}

void add_beta(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--beta", cfg.beta_text, "Complex beta, e.g. 1.5, 0.2-1i, i");
  sub->add_option("--time", cfg.time, "Evolution time t, shorthand for beta = i t");
}

void add_exp_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--method", cfg.method, "Computation path")
      ->check(CLI::IsMember({"auto", "spectral", "contour", "anticommute", "dense"}))
      ->capture_default_str();
  sub->add_option("--nodes", cfg.nodes, "Contour quadrature nodes")->capture_default_str();
  sub->add_option("--center", cfg.center_text, "Contour center (complex)");
  sub->add_option("--radius", cfg.radius, "Contour radius");
  sub->add_option("--dump-a", cfg.dump_a, "Write the structure matrix as JSON to this path");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exponentials of Pauli-sparse Hamiltonians"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* exp = app.add_subcommand("exp", "Pauli coefficients of exp(-beta H)");
  add_common(exp, cfg);
  add_beta(exp, cfg);
  add_exp_options(exp, cfg);
  exp->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"pauli-json", "pauli-text", "dense-json", "dense-bin"}))
      ->capture_default_str();

  std::vector<std::string> betas;
  bool with_gibbs = false, symmetry = false;
  std::string table_format = "csv";
  auto* partition = app.add_subcommand("partition", "Partition function over a beta grid");
  add_common(partition, cfg);
  partition->add_option("--beta", betas, "Real beta values (repeatable, comma separated)")
      ->required();
  partition->add_flag("--gibbs", with_gibbs, "Also print Gibbs-state coefficients");
  partition->add_flag("--symmetry-check", symmetry,
                      "Compare Z with h1, h3, h5, h7 negated (four-qubit cluster)");
  partition->add_option("--format", table_format, "Table format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  auto* gibbs = app.add_subcommand("gibbs", "Gibbs state exp(-beta H) / Z");
  add_common(gibbs, cfg);
  gibbs->add_option("--beta", cfg.beta_text, "Real beta")->required();
  gibbs->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"pauli-json", "pauli-text", "dense-json", "dense-bin"}))
      ->capture_default_str();

  double tol = 1e-10;
  bool corrupt = false;
  auto* verify = app.add_subcommand("verify", "Compare against the dense oracle");
  add_common(verify, cfg);
  add_beta(verify, cfg);
  add_exp_options(verify, cfg);
  verify->add_option("--tol", tol, "Maximum entrywise error")->capture_default_str();
  verify->add_flag("--corrupt", corrupt, "Flip one coefficient's sign (negative control)");

  std::string n_list = "4,8,12,16,20,24,28,32", tau_n = "10", generators = "3,4,5,6,7,8",
              dense_list = "4,5,6,7,8,9,10";
  int samples = 7;
  auto* bench_cmd = app.add_subcommand("bench", "Timing of spectral vs dense paths (CSV)");
  add_common(bench_cmd, cfg, false);
  bench_cmd->add_option("--n-list", n_list, "Fixed-tau series register sizes")
      ->capture_default_str();
  bench_cmd->add_option("--tau-n", tau_n, "Register size for the tau sweep")
      ->capture_default_str();
  bench_cmd->add_option("--generators", generators, "Generator counts (tau = 2^g - 1)")
      ->capture_default_str();
  bench_cmd->add_option("--dense-list", dense_list, "Dense series register sizes")
      ->capture_default_str();
  bench_cmd->add_option("--samples", samples, "Timing samples per point")->capture_default_str();

  std::optional<int> embed_n;
  std::string decompose_format = "text";
  auto* decompose = app.add_subcommand("decompose", "Dense matrix to Pauli coefficients");
  add_common(decompose, cfg);
  decompose->add_option("--embed", embed_n, "Embed into this many qubits first");
  decompose->add_option("--format", decompose_format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  std::string closure_format = "text";
  auto* closure = app.add_subcommand("closure", "Report the closed term set and tau");
  add_common(closure, cfg);
  closure->add_option("--format", closure_format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  const char* stage = app.get_subcommands().front()->get_name().c_str();
  try {
    if (exp->parsed()) return cmd_exp(cfg);
    if (partition->parsed()) return cmd_partition(cfg, betas, with_gibbs, symmetry, table_format);
    if (gibbs->parsed()) return cmd_gibbs(cfg);
    if (verify->parsed()) return cmd_verify(cfg, tol, corrupt);
    if (bench_cmd->parsed()) {
      return cmd_bench(cfg, n_list, tau_n, generators, dense_list, samples);
    }
    if (decompose->parsed()) return cmd_decompose(cfg, embed_n, decompose_format);
    if (closure->parsed()) return cmd_closure(cfg, closure_format);
  } catch (const ParseError& e) {
    std::cerr << "pauliexp " << stage << ": parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const DimensionError& e) {
    std::cerr << "pauliexp " << stage << ": parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const ClosureExplosion& e) {
    std::cerr << "pauliexp " << stage << ": closure explosion: " << e.what() << '\n';
    return kClosureExplosion;
  } catch (const NotAnticommuting& e) {
    std::cerr << "pauliexp " << stage << ": precondition: " << e.what() << '\n';
    return kPrecondition;
  } catch (const CapExceeded& e) {
    std::cerr << "pauliexp " << stage << ": precondition: " << e.what() << '\n';
    return kPrecondition;
  } catch (const NotHermitian& e) {
    std::cerr << "pauliexp " << stage << ": precondition: " << e.what() << '\n';
    return kPrecondition;
  } catch (const PreconditionError& e) {
    std::cerr << "pauliexp " << stage << ": precondition: " << e.what() << '\n';
    return kPrecondition;
  } catch (const UsageError& e) {
    std::cerr << "pauliexp " << stage << ": " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "pauliexp " << stage << ": numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
  return kUsage;
}
