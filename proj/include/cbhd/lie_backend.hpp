#pragma once

#include <Eigen/Dense>

#include <concepts>
#include <random>
#include <type_traits>
#include <vector>

#include "cbhd/coeffs.hpp"
#include "cbhd/matrix_functions.hpp"
#include "cbhd/ncpoly.hpp"
#include "cbhd/rational.hpp"

namespace cbhd {

/// A real Lie algebra with a norm satisfying ||[a,b]|| <= ||a|| ||b||.
/// Series and recursions below are written once against this contract.
template <typename B>
concept LieBackend = requires(const B& backend, const typename B::Element& e,
                              const typename B::Scalar& s, const Rational& q) {
  typename B::Element;
  typename B::Scalar;
  { backend.zero() } -> std::convertible_to<typename B::Element>;
  { backend.add(e, e) } -> std::convertible_to<typename B::Element>;
  { backend.scale(s, e) } -> std::convertible_to<typename B::Element>;
  { backend.bracket(e, e) } -> std::convertible_to<typename B::Element>;
  { backend.norm(e) } -> std::convertible_to<double>;
  { backend.is_zero(e) } -> std::convertible_to<bool>;
  { backend.scalar(q) } -> std::convertible_to<typename B::Scalar>;
};

/// K_0..K_{n_max} as backend scalars. Floating-point backends read the
/// cached binary64 table instead of converting rationals on every call.
template <LieBackend B>
std::vector<typename B::Scalar> k_scalars(const B& backend, std::size_t n_max) {
  using Scalar = typename B::Scalar;
  if constexpr (std::is_floating_point_v<Scalar>) {
    const auto d = kn_values(n_max);
    return {d.begin(), d.end()};
  } else {
    std::vector<Scalar> out;
    for (const auto& q : coeff_table(CoeffKind::K, n_max).values) out.push_back(backend.scalar(q));
    return out;
  }
}

/// n x n real matrices, bracket AB - BA, norm ||A||* = 2 sigma_max(A).
/// The factor 2 absorbs ||AB - BA|| <= 2 ||A|| ||B|| for the induced norm.
template <typename Scalar_ = double>
class MatrixAlgebra {
 public:
  using Scalar = Scalar_;
  using Element = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  explicit MatrixAlgebra(Eigen::Index n) : n_(n) {}

  Eigen::Index dimension() const { return n_; }

  Element zero() const { return Element::Zero(n_, n_); }
  Element identity() const { return Element::Identity(n_, n_); }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element scale(const Scalar& s, const Element& a) const { return s * a; }
  Element bracket(const Element& a, const Element& b) const { return a * b - b * a; }
  double norm(const Element& a) const { return 2.0 * spectral_norm(a); }
  bool is_zero(const Element& a) const { return a.isZero(0.0); }
  Scalar scalar(const Rational& q) const { return static_cast<Scalar>(q.get_d()); }

  /// Entries uniform in [-1, 1], rescaled to the requested norm.
  template <typename Rng>
  Element random(Rng& rng, double target_norm) const {
    std::uniform_real_distribution<double> entry(-1.0, 1.0);
    Element m(n_, n_);
    for (Eigen::Index i = 0; i < n_; ++i)
      for (Eigen::Index j = 0; j < n_; ++j) m(i, j) = static_cast<Scalar>(entry(rng));
    const double current = norm(m);
    if (current == 0.0) return m;
    return m * static_cast<Scalar>(target_norm / current);
  }

 private:
  Eigen::Index n_;
};

/// Free associative algebra on x, y with its commutator bracket. Exact
/// scalars; norm 2 * l1 (the l1 norm is submultiplicative for
/// concatenation, so the factor 2 again covers the bracket).
class FreeAlgebra {
 public:
  using Scalar = Rational;
  using Element = NcPoly;

  Element zero() const { return {}; }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element scale(const Scalar& s, const Element& a) const { return s * a; }
  Element bracket(const Element& a, const Element& b) const { return nc_bracket(a, b); }
  double norm(const Element& a) const { return 2.0 * a.l1_norm(); }
  bool is_zero(const Element& a) const { return a.is_zero(); }
  Scalar scalar(const Rational& q) const { return q; }
};

static_assert(LieBackend<MatrixAlgebra<double>>);
static_assert(LieBackend<FreeAlgebra>);

/// Substitutes x -> a, y -> b into p using the associative matrix product.
template <typename Derived>
typename Derived::PlainObject substitute(const NcPoly& p, const Eigen::MatrixBase<Derived>& a,
                                         const Eigen::MatrixBase<Derived>& b) {
  using Plain = typename Derived::PlainObject;
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = a.rows();
  Plain out = Plain::Zero(n, n);
  for (const auto& [word, c] : p.terms()) {
    Plain prod = Plain::Identity(n, n);
    for (char letter : word) prod = (prod * (letter == 'x' ? a : b)).eval();
    out += static_cast<Scalar>(c.get_d()) * prod;
  }
  return out;
}

}  // namespace cbhd
