#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "cbhd/coeffs.hpp"
#include "cbhd/comparison.hpp"
#include "cbhd/domain.hpp"
#include "cbhd/dynkin.hpp"
#include "cbhd/error.hpp"
#include "cbhd/json_io.hpp"
#include "cbhd/lie_backend.hpp"
#include "cbhd/matrix_functions.hpp"
#include "cbhd/series.hpp"

using namespace cbhd;
using Eigen::MatrixXd;

namespace {

enum ExitCode : int {
  kOk = 0,
  kFailed = 1,       // the contract ran and reported failure
  kUsage = 2,        // bad arguments, unreadable or malformed input
  kDomain = 3,       // input outside the domain of the operation
  kMajorant = 4,
  kIntegration = 5,
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::MajorantViolation: return kMajorant;
    case ErrorCode::IntegrationFailure: return kIntegration;
    case ErrorCode::Parse:
    case ErrorCode::InvalidArgument: return kUsage;
    default: return kDomain;
  }
}

// ---------------------------------------------------------------------------

int run_coeffs(const std::string& kind_name, std::size_t n) {
  const auto kind = parse_coeff_kind(kind_name);
  if (!kind) {
    fmt::print(stderr, "unknown kind '{}' (expected K, T, ALPHA or G_ABS)\n", kind_name);
    return kUsage;
  }
  const auto table = coeff_table(*kind, n);
  for (std::size_t k = 0; k < table.values.size(); ++k) fmt::print("{},{}\n", k, table.values[k].get_str());
  return kOk;
}

int run_bch_term(int i, int j, const std::string& eval_path) {
  if (i < 0 || j < 0) throw Error(ErrorCode::InvalidArgument, "bch-term: bidegree must be nonnegative");
  if (eval_path.empty()) {
    fmt::print("{}\n", dynkin_Z({i, j}).to_string());
    return kOk;
  }
  const auto pair = pair_from_json(read_json_file(eval_path));
  const MatrixAlgebra<double> alg(pair.a.rows());
  fmt::print("{}\n", matrix_to_json(recursive_Z_eval(alg, {i, j}, pair.a, pair.b)).dump(2));
  return kOk;
}

int run_domain(std::optional<double> a_norm, std::optional<double> b_norm, std::optional<std::size_t> table) {
  if (table) {
    fmt::print("norm_a,max_norm_b\n");
    for (const auto& p : gamma_boundary_table(*table)) fmt::print("{:.12g},{:.12g}\n", p.norm_a, p.max_norm_b);
    return kOk;
  }
  if (!a_norm || !b_norm) throw Error(ErrorCode::InvalidArgument, "domain: need --a-norm and --b-norm, or --table");
  const DomainQuery q{*a_norm, *b_norm};
  const auto lb = lifetime_bounds(q);
  const json out{{"query", {{"norm_a", json_number(q.norm_a)}, {"norm_b", json_number(q.norm_b)}}},
                 {"in_delta", in_delta(q)},
                 {"in_gamma", in_gamma(q)},
                 {"in_gamma_swapped", in_gamma_swapped(q)},
                 {"alpha_tilde", json_number(lb.alpha_tilde)},
                 {"beta_tilde", json_number(lb.beta_tilde)}};
  fmt::print("{}\n", out.dump(2));
  return kOk;
}

int run_certify(const std::string& path, int I, int J, double tol) {
  if (I < 0 || J < 0) throw Error(ErrorCode::InvalidArgument, "certify: orders must be nonnegative");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "certify: tolerance must be positive");
  const auto pair = pair_from_json(read_json_file(path));
  const MatrixAlgebra<double> alg(pair.a.rows());
  CertifyOptions opt;
  opt.I = I;
  opt.J = J;
  opt.tol = tol;
  const auto cert = certify(alg, pair.a, pair.b, opt);
  fmt::print("{}\n", certificate_to_json(cert).dump(2));
  return cert.pass ? kOk : kFailed;
}

// ---------------------------------------------------------------------------

struct CompareConfig {
  std::string file;
  std::string builtin;
  std::optional<double> horizon;
  std::uint64_t seed = 1;
  bool backward = false;
  std::string csv_path;
};

template <typename Element>
void write_csv(const std::string& path, const MajorizationReport<Element>& report,
               const MatrixAlgebra<double>& alg) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Parse, "cannot write " + path);
  fmt::print(out, "t,norm_phi,psi\n");
  std::size_t s = 0;
  for (std::size_t k = 0; k < report.vector.grid.size(); ++k) {
    const double t = report.vector.grid[k];
    while (s < report.scalar.grid.size() && report.scalar.grid[s] < t) ++s;
    if (s == report.scalar.grid.size() || report.scalar.grid[s] != t) continue;
    fmt::print(out, "{:.15g},{:.15g},{:.15g}\n", t, alg.norm(report.vector.values[k]), report.scalar.values[s]);
  }
}

template <typename Element>
json report_to_json(const MajorizationReport<Element>& r) {
  return {{"passed", r.passed},
          {"domination_ok", r.domination_ok},
          {"lifetime_ok", r.lifetime_ok},
          {"max_excess", json_number(r.max_excess)},
          {"min_margin", json_number(r.min_margin)},
          {"sampled_max_excess", json_number(r.sampled_max_excess)},
          {"shared_points", r.shared_points},
          {"scalar_exit", json_number(r.scalar_exit)},
          {"vector_exit", json_number(r.vector_exit)},
          {"scalar_exit_reason", std::string(to_string(r.scalar.exit_reason))},
          {"vector_exit_reason", std::string(to_string(r.vector.exit_reason))}};
}

int run_compare_ode(const CompareConfig& cfg) {
  if (cfg.file.empty() == cfg.builtin.empty()) {
    throw Error(ErrorCode::InvalidArgument, "compare-ode: give either a pair file or --builtin");
  }
  MajorizationOptions opt;
  opt.seed = cfg.seed;
  opt.backward = cfg.backward;
  json out;

  if (!cfg.builtin.empty()) {
    if (cfg.builtin != "linear") throw Error(ErrorCode::InvalidArgument, "compare-ode: unknown builtin " + cfg.builtin);
    // y' = A y against z' = |A|/2 z; the matrix norm is twice the operator norm.
    std::mt19937_64 rng(cfg.seed);
    const MatrixAlgebra<double> alg(3);
    const MatrixXd A = alg.random(rng, 1.0);
    const MatrixXd x0 = alg.random(rng, 0.5);
    const double na = alg.norm(A);
    VectorProblem<MatrixAlgebra<double>> vp{alg, [A](double, const MatrixXd& y) -> MatrixXd { return A * y; }, x0, {}};
    vp.domain.b = 10.0;
    const ScalarMajorant sm{[na](double, double z) { return 0.5 * na * z; }, alg.norm(x0), false};
    const double horizon = cfg.horizon.value_or(2.0);
    const auto report = check_majorization(vp, sm, horizon, opt);
    const double sign = cfg.backward ? -1.0 : 1.0;
    const double t_end = report.vector.grid.back();
    const MatrixXd exact = mat_exp(MatrixXd(sign * t_end * A)) * x0;
    out = report_to_json(report);
    out["problem"] = "linear";
    out["horizon"] = json_number(horizon);
    out["oracle_error"] = json_number(alg.norm(report.vector.values.back() - exact));
    if (!cfg.csv_path.empty()) write_csv(cfg.csv_path, report, alg);
    fmt::print("{}\n", out.dump(2));
    return report.passed ? kOk : kFailed;
  }

  const auto pair = pair_from_json(read_json_file(cfg.file));
  const MatrixAlgebra<double> alg(pair.a.rows());
  const DomainQuery q{alg.norm(pair.a), alg.norm(pair.b)};
  const double beta = lifetime_bounds(q).beta_tilde;
  if (!std::isfinite(beta) && !cfg.horizon) {
    throw Error(ErrorCode::DegenerateB, "compare-ode: b = 0 has no finite lifetime; pass --horizon");
  }
  VectorProblem<MatrixAlgebra<double>> vp{alg, cbhd_field(alg, pair.b), pair.a, {}};
  vp.domain.b = kTwoPi;
  const double horizon = cfg.horizon.value_or(std::min(1.25 * beta, beta + 0.5));
  const auto report = check_majorization(vp, cbhd_majorant(q), horizon, opt);
  out = report_to_json(report);
  out["problem"] = "cbhd";
  out["query"] = {{"norm_a", json_number(q.norm_a)}, {"norm_b", json_number(q.norm_b)}};
  out["beta_tilde"] = json_number(beta);
  out["horizon"] = json_number(horizon);
  if (!cfg.csv_path.empty()) write_csv(cfg.csv_path, report, alg);
  fmt::print("{}\n", out.dump(2));
  return report.passed ? kOk : kFailed;
}

// ---------------------------------------------------------------------------

int run_bernoulli_check(std::size_t n_max) {
  bool all = true;
  const auto report = [&](const char* name, bool ok) {
    fmt::print("{} {}\n", ok ? "PASS" : "FAIL", name);
    all = all && ok;
  };

  Integer factorial = 1;
  bool oracle_ok = true;
  for (std::size_t n = 0; n <= n_max; ++n) {
    if (n > 0) factorial *= static_cast<unsigned long>(n);
    oracle_ok = oracle_ok && kn(n) * Rational(factorial) == bernoulli_oracle(n);
  }
  report("kn(n) n! equals the Bernoulli oracle", oracle_ok);

  bool convolution_ok = true;
  for (std::size_t n = 1; n <= n_max; ++n) {
    Rational sum = 0;
    Integer f = 1;  // (n+1-i)!, built from i = n downwards
    for (std::size_t i = n + 1; i-- > 0;) {
      f *= static_cast<unsigned long>(n + 1 - i);
      sum += kn(i) / Rational(f);
    }
    convolution_ok = convolution_ok && sum == 0;
  }
  report("convolution identity", convolution_ok);

  bool odd_ok = true;
  for (std::size_t m = 1; 2 * m + 1 <= n_max; ++m) odd_ok = odd_ok && kn(2 * m + 1) == 0;
  report("odd coefficients vanish", odd_ok);

  bool sign_ok = true;
  for (std::size_t m = 1; 2 * m <= n_max; ++m) sign_ok = sign_ok && sgn(kn(2 * m)) == (m % 2 == 1 ? 1 : -1);
  report("even coefficients alternate in sign", sign_ok);

  const auto k = coeff_table(CoeffKind::K, n_max).values;
  const auto g = coeff_table(CoeffKind::GAbs, n_max).values;
  bool abs_ok = true;
  for (std::size_t n = 0; n <= n_max; ++n) abs_ok = abs_ok && g[n] >= 0 && g[n] == abs(k[n]);
  report("G_ABS equals |K|", abs_ok);

  return all ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CBHD series, convergence domains and ODE comparison"};
  app.require_subcommand(1);

  std::string kind = "K";
  std::size_t coeff_n = 10;
  auto* coeffs = app.add_subcommand("coeffs", "Exact coefficient table, one \"n,num/den\" line per order");
  coeffs->add_option("--kind", kind, "K, T, ALPHA or G_ABS")->capture_default_str();
  coeffs->add_option("--n", coeff_n, "Largest order")->capture_default_str();

  int bi = 0, bj = 0;
  std::string eval_path;
  auto* bch = app.add_subcommand("bch-term", "Dynkin polynomial Z_{i,j}, or its value on a matrix pair");
  bch->add_option("i", bi, "Degree in a")->required();
  bch->add_option("j", bj, "Degree in b")->required();
  bch->add_option("--eval", eval_path, "Pair file {\"a\": ..., \"b\": ...}")->check(CLI::ExistingFile);

  std::optional<double> a_norm, b_norm;
  std::optional<std::size_t> table;
  auto* domain = app.add_subcommand("domain", "Membership in Delta and Gamma, or the Gamma boundary as CSV");
  auto* a_opt = domain->add_option("--a-norm", a_norm, "Norm of a");
  auto* b_opt = domain->add_option("--b-norm", b_norm, "Norm of b");
  auto* t_opt = domain->add_option("--table", table, "Number of boundary rows")->check(CLI::Range(2, 1'000'000));
  t_opt->excludes(a_opt)->excludes(b_opt);

  std::string cert_path;
  int cert_i = 24, cert_j = 24;
  double cert_tol = 1e-6;
  auto* cert = app.add_subcommand("certify", "Convergence certificate for a matrix pair");
  cert->add_option("file", cert_path, "Pair file")->required()->check(CLI::ExistingFile);
  cert->add_option("--I", cert_i, "Largest degree in a")->capture_default_str();
  cert->add_option("--J", cert_j, "Largest degree in b")->capture_default_str();
  cert->add_option("--tol", cert_tol, "Tolerance on the partial sum")->capture_default_str();

  CompareConfig cmp;
  auto* compare = app.add_subcommand("compare-ode", "Compare a vector ODE with its scalar majorant");
  compare->add_option("file", cmp.file, "Pair file; runs the CBHD field against |b| G")->check(CLI::ExistingFile);
  compare->add_option("--builtin", cmp.builtin, "Named test problem: linear");
  compare->add_option("--horizon", cmp.horizon, "Final time");
  compare->add_option("--seed", cmp.seed, "Seed for sampling and builtin problems")->capture_default_str();
  compare->add_flag("--backward", cmp.backward, "Run the time-reflected problem");
  compare->add_option("--csv", cmp.csv_path, "Write the t,norm_phi,psi trajectory here");

  std::size_t check_n = 30;
  auto* bern = app.add_subcommand("bernoulli-check", "Invariant suite for the coefficient tables");
  bern->add_option("--n", check_n, "Largest order")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*coeffs) return run_coeffs(kind, coeff_n);
    if (*bch) return run_bch_term(bi, bj, eval_path);
    if (*domain) return run_domain(a_norm, b_norm, table);
    if (*cert) return run_certify(cert_path, cert_i, cert_j, cert_tol);
    if (*compare) return run_compare_ode(cmp);
    if (*bern) return run_bernoulli_check(check_n);
  } catch (const Error& e) {
    fmt::print("{}\n", error_to_json(e).dump(2));
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kUsage;
  }
  return kUsage;
}
