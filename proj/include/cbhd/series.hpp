#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "cbhd/ad_series.hpp"
#include "cbhd/coeffs.hpp"
#include "cbhd/comparison.hpp"
#include "cbhd/domain.hpp"
#include "cbhd/dynkin_recursion.hpp"
#include "cbhd/lie_backend.hpp"

namespace cbhd {

// ---------------------------------------------------------------------------
// phi: the Hausdorff function t -> log(exp(a) exp(tb)), solving
//   phi' = sum_n K_n (-ad phi)^n (b),  phi(0) = a.

template <typename Element>
struct PhiCoefficients {
  std::vector<Element> c;           // c[k] = phi^{(k)}(0) / k!
  std::vector<std::size_t> h_used;  // length of the h-sum behind c[k+1]
  std::size_t h_max = 0;
  double eps = 0.0;
};

/// Maclaurin coefficients of phi through order N:
///   c[n+1] = 1/(n+1) sum_{h>=0} (-1)^h K_h  sum_{n_1+...+n_h = n} [c_{n_1}, ...[c_{n_h}, b]...]
/// with n_i >= 0, so c[0] = a fills the zero slots. The nested sums are
///   W_0(m) = b [m = 0],  W_h(m) = sum_{k=0}^{m} [c_k, W_{h-1}(m-k)].
/// The h-sum stops at the first H where |b| |K_H| (sum_{k<=n} |c_k|)^H has
/// stayed below eps for two consecutive H, or at h_max.
template <LieBackend B>
PhiCoefficients<typename B::Element> phi_taylor(const B& backend, const typename B::Element& a,
                                                const typename B::Element& b, std::size_t N,
                                                std::size_t h_max = 200, double eps = 1e-16) {
  using Element = typename B::Element;
  if (!(backend.norm(a) < kTwoPi)) throw Error(ErrorCode::NormTooLarge, "phi_taylor: norm(a) >= 2 pi");
  const auto k = k_scalars(backend, h_max);
  const auto kd = kn_values(h_max);
  const double nb = backend.norm(b);

  PhiCoefficients<Element> out;
  out.h_max = h_max;
  out.eps = eps;
  out.c.push_back(a);
  std::vector<std::vector<Element>> w{{b}};  // w[h][m] = W_h(m)
  double norm_sum = backend.norm(a);

  for (std::size_t n = 0; n < N; ++n) {
    if (w[0].size() <= n) w[0].resize(n + 1, backend.zero());
    Element acc = backend.zero();
    int quiet = 0;
    std::size_t h = 0;
    for (;; ++h) {
      if (h > 0) {
        if (w.size() <= h) w.emplace_back();
        auto& row = w[h];
        const auto& prev = w[h - 1];
        bool row_zero = true;
        for (std::size_t m = row.size(); m <= n; ++m) {
          Element sum = backend.zero();
          for (std::size_t j = 0; j <= m; ++j) {
            if (backend.is_zero(prev[m - j]) || backend.is_zero(out.c[j])) continue;
            sum = backend.add(sum, backend.bracket(out.c[j], prev[m - j]));
          }
          row.push_back(std::move(sum));
        }
        for (const auto& e : row) row_zero = row_zero && backend.is_zero(e);
        if (row_zero) break;  // every higher W_h(m <= n) vanishes too
      }
      if (k[h] != 0 && !backend.is_zero(w[h][n])) {
        typename B::Scalar coef = k[h];
        if (h % 2 == 1) coef = -coef;
        acc = backend.add(acc, backend.scale(coef, w[h][n]));
      }
      if (h >= h_max) break;
      const double bound = nb * std::abs(kd[h]) * std::pow(norm_sum, static_cast<double>(h));
      if (h > 0 && bound < eps) {
        if (++quiet == 2) break;
      } else {
        quiet = 0;
      }
    }
    out.h_used.push_back(h);
    out.c.push_back(backend.scale(backend.scalar(make_rational(1, static_cast<long>(n + 1))), acc));
    norm_sum += backend.norm(out.c.back());
  }
  return out;
}

/// The CBHD field y -> sum_n K_n (-ad y)^n (b).
template <LieBackend B>
std::function<typename B::Element(double, const typename B::Element&)> cbhd_field(
    const B& backend, const typename B::Element& b, std::size_t h_max = 2000, double eps = 1e-16) {
  return [backend, b, h_max, eps](double, const typename B::Element& y) {
    return todd_apply(backend, y, b, h_max, eps).value;
  };
}

// ---------------------------------------------------------------------------
// psi: the scalar majorant z' = |b| G(z), z(0) = |a|.

struct PsiCoefficients {
  std::vector<double> d;  // d[k] = psi^{(k)}(0) / k!, all >= 0
};

/// d[0] = |a|, d[n+1] = |b|/(n+1) [t^n] G(psi(t)), with G expanded around
/// |a| (see g_taylor_scaled) and composed with the partial psi series.
/// Throws NormTooLarge if |a| >= 2 pi.
PsiCoefficients psi_taylor(const DomainQuery& q, std::size_t N);

struct PsiSeriesOptions {
  std::size_t min_order = 60;
  std::size_t max_order = 640;
  double tail_tol = 1e-10;
};

struct PsiSum {
  double value = 0.0;           // sum_{k<=terms} d[k] t^k
  std::size_t terms = 0;
  double tail_estimate = 0.0;   // ratio-test estimate of the remainder
  bool converged = false;
  bool refused = false;         // divergence guard tripped
};

/// psi(t) by the Taylor series, the order grown from min_order until the
/// ratio-test tail estimate drops below tail_tol. Refused (no value) when
/// some d[k+1] > 10 d[k] beyond k = 20.
PsiSum psi_series_sum(const DomainQuery& q, double t = 1.0, const PsiSeriesOptions& opt = {});

/// psi(t) by adaptive Runge-Kutta. +infinity if the lifetime ends first.
double psi_rk(const DomainQuery& q, double t = 1.0, double tol = 1e-12);

/// The scalar problem z' = |b| G(z), z(0) = |a|, as a majorant of the
/// CBHD field with b of norm norm_b.
ScalarMajorant cbhd_majorant(const DomainQuery& q);

// ---------------------------------------------------------------------------
// Norm tables and the convergence certificate.

/// |Z_{i,j}(a,b)| for i <= I, j <= J.
template <LieBackend B>
Eigen::MatrixXd zij_norm_table(const B& backend, const typename B::Element& a, const typename B::Element& b,
                               int I, int J) {
  const DynkinTable<B> table(backend, a, b, I, J);
  Eigen::MatrixXd out(I + 1, J + 1);
  for (int i = 0; i <= I; ++i)
    for (int j = 0; j <= J; ++j) out(i, j) = backend.norm(table(i, j));
  return out;
}

struct CertifyOptions {
  int I = 24;
  int J = 24;
  double tol = 1e-6;
  PsiSeriesOptions psi;
};

struct ConvergenceCertificate {
  DomainQuery query;
  bool in_gamma = false;
  double beta_tilde = 0.0;
  double psi_at_1 = 0.0;
  double psi_series = 0.0;
  double psi_rk = 0.0;
  bool psi_series_ok = false;
  double psi_agreement = 0.0;        // |series - rk| when both exist
  double partial_norm_sum = 0.0;
  double tail_bound = 0.0;           // psi(1) - sum_{j<=J} d[j]
  std::vector<double> column_sums;   // sum_i |Z_{i,j}| for j = 0..J
  double last_column_sum = 0.0;      // heuristic tail indicator
  int I = 0;
  int J = 0;
  bool pass = false;
  std::vector<std::string> diagnostics;
};

/// Assembles the certificate from the norms of a and b and a precomputed
/// |Z_{i,j}| table. Throws NormTooLarge if |a| >= 2 pi.
ConvergenceCertificate certify_from_table(const DomainQuery& q, const Eigen::MatrixXd& norms,
                                          const CertifyOptions& opt = {});

template <LieBackend B>
ConvergenceCertificate certify(const B& backend, const typename B::Element& a, const typename B::Element& b,
                               const CertifyOptions& opt = {}) {
  const DomainQuery q{backend.norm(a), backend.norm(b)};
  if (!(q.norm_a < kTwoPi)) throw Error(ErrorCode::NormTooLarge, "certify: norm(a) >= 2 pi");
  return certify_from_table(q, zij_norm_table(backend, a, b, opt.I, opt.J), opt);
}

/// |exp(sum_{k<=N} c[k]) - exp(a) exp(b)| / |exp(a) exp(b)| in the matrix norm.
double group_residual(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, std::size_t N);

}  // namespace cbhd
