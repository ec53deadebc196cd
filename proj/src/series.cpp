#include "cbhd/series.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "cbhd/matrix_functions.hpp"

namespace cbhd {

namespace {

// Grows the psi coefficients one order at a time. With
// sigma(t) = (psi(t) - |a|) / (2 pi - |a|) and G(|a| + (2 pi - |a|) sigma) = sum gamma_m sigma^m,
//   d[n+1] = |b| / (n+1) sum_{m<=n} gamma_m [t^n] sigma^m,
// and [t^n] sigma^m is built column by column from the earlier d's.
class PsiBuilder {
 public:
  PsiBuilder(const DomainQuery& q, std::size_t max_order)
      : nb_(q.norm_b), rho_(kTwoPi - q.norm_a), max_order_(max_order) {
    if (!(q.norm_a < kTwoPi)) throw Error(ErrorCode::NormTooLarge, "psi series: norm_a >= 2 pi");
    if (!(q.norm_a >= 0.0 && q.norm_b >= 0.0)) throw Error(ErrorCode::InvalidArgument, "psi series: negative norm");
    d_.push_back(q.norm_a);
    if (nb_ > 0.0 && max_order > 0) gamma_ = g_taylor_scaled(q.norm_a, max_order - 1);
    powers_.assign(max_order + 1, std::vector<double>(max_order + 1, 0.0));
  }

  const std::vector<double>& d() const { return d_; }

  // Appends d[n+1] where n = d().size() - 1.
  double advance() {
    const std::size_t n = d_.size() - 1;
    if (n + 1 > max_order_) throw Error(ErrorCode::InvalidArgument, "psi series: order budget exceeded");
    if (nb_ == 0.0) {
      d_.push_back(0.0);
      return 0.0;
    }
    double coef = n == 0 ? gamma_[0] : 0.0;
    if (n >= 1) {
      powers_[1][n] = d_[n] / rho_;
      for (std::size_t m = 2; m <= n; ++m) {
        double s = 0.0;
        for (std::size_t k = 1; k + m - 1 <= n; ++k) s += powers_[1][k] * powers_[m - 1][n - k];
        powers_[m][n] = s;
      }
      for (std::size_t m = 1; m <= n; ++m) coef += gamma_[m] * powers_[m][n];
    }
    d_.push_back(nb_ / static_cast<double>(n + 1) * coef);
    return d_.back();
  }

 private:
  double nb_;
  double rho_;
  std::size_t max_order_;
  std::vector<double> d_;
  std::vector<double> gamma_;
  std::vector<std::vector<double>> powers_;  // powers_[m][n] = [t^n] sigma^m
};

}  // namespace

PsiCoefficients psi_taylor(const DomainQuery& q, std::size_t N) {
  PsiBuilder builder(q, N);
  for (std::size_t n = 0; n < N; ++n) builder.advance();
  return {builder.d()};
}

PsiSum psi_series_sum(const DomainQuery& q, double t, const PsiSeriesOptions& opt) {
  PsiBuilder builder(q, opt.max_order);
  PsiSum out;
  out.value = q.norm_a;
  double prev_term = q.norm_a;
  double t_pow = 1.0;
  for (std::size_t n = 1; n <= opt.max_order; ++n) {
    const double dn = builder.advance();
    const double d_prev = builder.d()[n - 1];
    if (n > 21 && dn > 10.0 * d_prev) {
      out.refused = true;
      out.terms = n;
      return out;
    }
    t_pow *= t;
    const double term = dn * t_pow;
    out.value += term;
    out.terms = n;
    if (n < opt.min_order) {
      prev_term = term;
      continue;
    }
    if (term == 0.0) {
      out.tail_estimate = 0.0;
      out.converged = true;
      return out;
    }
    const double r = prev_term > 0.0 ? term / prev_term : 1.0;
    out.tail_estimate = r < 1.0 ? term * r / (1.0 - r) : std::numeric_limits<double>::infinity();
    if (out.tail_estimate < opt.tail_tol) {
      out.converged = true;
      return out;
    }
    prev_term = term;
  }
  return out;
}

ScalarMajorant cbhd_majorant(const DomainQuery& q) {
  const double nb = q.norm_b;
  return {[nb](double, double z) { return nb * g_closed(z); }, q.norm_a, false};
}

double psi_rk(const DomainQuery& q, double t, double tol) {
  if (!(q.norm_a < kTwoPi)) throw Error(ErrorCode::NormTooLarge, "psi_rk: norm_a >= 2 pi");
  if (q.norm_b == 0.0) return q.norm_a;
  StripDomain domain;
  domain.b = kTwoPi;
  auto opt = IntegratorOptions::from_tol(tol);
  const auto traj = integrate_scalar(cbhd_majorant(q), domain, t, opt);
  if (traj.exit_reason != ExitReason::Horizon) return std::numeric_limits<double>::infinity();
  return traj.values.back();
}

ConvergenceCertificate certify_from_table(const DomainQuery& q, const Eigen::MatrixXd& norms,
                                          const CertifyOptions& opt) {
  if (!(q.norm_a < kTwoPi)) throw Error(ErrorCode::NormTooLarge, "certify: norm(a) >= 2 pi");
  ConvergenceCertificate cert;
  cert.query = q;
  cert.I = static_cast<int>(norms.rows()) - 1;
  cert.J = static_cast<int>(norms.cols()) - 1;
  cert.beta_tilde = lifetime_bounds(q).beta_tilde;
  cert.in_gamma = q.norm_b == 0.0 || cert.beta_tilde > 1.0;

  cert.psi_rk = psi_rk(q, 1.0);
  if (cert.in_gamma) {
    const auto series = psi_series_sum(q, 1.0, opt.psi);
    cert.psi_series_ok = series.converged;
    cert.psi_series = series.value;
    if (series.refused) {
      cert.diagnostics.push_back("psi series refused by the divergence guard; RK value used");
    } else if (!series.converged) {
      cert.diagnostics.push_back(
          fmt::format("psi series not converged after {} terms (tail estimate {:.3g}); RK value used",
                      series.terms, series.tail_estimate));
    }
  } else {
    cert.diagnostics.push_back("query lies outside Gamma");
  }
  cert.psi_at_1 = cert.psi_series_ok ? cert.psi_series : cert.psi_rk;
  if (cert.psi_series_ok && std::isfinite(cert.psi_rk)) {
    cert.psi_agreement = std::abs(cert.psi_series - cert.psi_rk);
    if (cert.psi_agreement > opt.tol) {
      cert.diagnostics.push_back(fmt::format("psi(1) series and RK differ by {:.3g}", cert.psi_agreement));
    }
  }

  cert.partial_norm_sum = norms.sum();
  cert.column_sums.resize(static_cast<std::size_t>(norms.cols()));
  for (Eigen::Index j = 0; j < norms.cols(); ++j) cert.column_sums[static_cast<std::size_t>(j)] = norms.col(j).sum();
  cert.last_column_sum = cert.column_sums.back();
  if (cert.last_column_sum > opt.tol) {
    cert.diagnostics.push_back(fmt::format("last column sum {:.3g} above {:.1g}", cert.last_column_sum, opt.tol));
  }

  double head = 0.0;
  const auto psi = psi_taylor(q, static_cast<std::size_t>(cert.J));
  for (double dj : psi.d) head += dj;
  cert.tail_bound = cert.psi_at_1 - head;

  cert.pass = cert.in_gamma && cert.partial_norm_sum <= cert.psi_at_1 + opt.tol;
  return cert;
}

double group_residual(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, std::size_t N) {
  const MatrixAlgebra<double> alg(a.rows());
  const auto phi = phi_taylor(alg, a, b, N);
  Eigen::MatrixXd sum = alg.zero();
  for (const auto& c : phi.c) sum += c;
  const Eigen::MatrixXd target = mat_exp(a) * mat_exp(b);
  return alg.norm(mat_exp(sum) - target) / alg.norm(target);
}

}  // namespace cbhd
