#include "cbhd/dynkin.hpp"

#include <stdexcept>

#include "cbhd/dynkin_recursion.hpp"
#include "cbhd/lie_backend.hpp"

namespace cbhd {

namespace {

Integer factorial(int n) {
  Integer f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

struct CompositionWalker {
  std::vector<Integer> fact;
  NcPoly out;

  // Depth-first over the remaining budget (ri, rj); `weight` is the product
  // of 1/(ik! jk!) over the pairs chosen so far.
  void walk(int ri, int rj, int parts, Word& word, const Rational& weight) {
    if (ri == 0 && rj == 0) {
      const Rational sign = (parts % 2 == 1) ? Rational(1) : Rational(-1);
      out.add_term(word, Rational(sign * weight / parts));
      return;
    }
    for (int ik = 0; ik <= ri; ++ik) {
      for (int jk = 0; jk <= rj; ++jk) {
        if (ik == 0 && jk == 0) continue;
        const std::size_t mark = word.size();
        word.append(static_cast<std::size_t>(ik), 'x');
        word.append(static_cast<std::size_t>(jk), 'y');
        walk(ri - ik, rj - jk, parts + 1, word, Rational(weight / Rational(fact[ik] * fact[jk])));
        word.resize(mark);
      }
    }
  }
};

}  // namespace

NcPoly dynkin_Z(Bidegree d) {
  if (d.i < 0 || d.j < 0) throw std::invalid_argument("dynkin_Z: negative bidegree");
  if (d.i == 0 && d.j == 0) return {};
  CompositionWalker walker;
  for (int k = 0; k <= std::max(d.i, d.j); ++k) walker.fact.push_back(factorial(k));
  Word word;
  walker.walk(d.i, d.j, 0, word, Rational(1));
  return walker.out;
}

NcPoly recursive_Z_free(Bidegree d) {
  return recursive_Z_eval(FreeAlgebra{}, d, NcPoly::x(), NcPoly::y());
}

NcPoly bch_homogeneous(std::size_t n) {
  NcPoly out;
  for (std::size_t i = 0; i <= n; ++i) {
    out += dynkin_Z({static_cast<int>(i), static_cast<int>(n - i)});
  }
  return out;
}

std::vector<NcPoly> log_expexp_oracle(std::size_t n_max) {
  if (n_max < 1) throw std::invalid_argument("log_expexp_oracle: n_max >= 1 required");

  // exp(x) exp(y) - 1 = sum over (p,q) != (0,0) of x^p y^q / (p! q!).
  NcPoly w;
  for (std::size_t p = 0; p <= n_max; ++p) {
    for (std::size_t q = 0; p + q <= n_max; ++q) {
      if (p + q == 0) continue;
      const Integer den = factorial(static_cast<int>(p)) * factorial(static_cast<int>(q));
      w.add_term(Word(p, 'x') + Word(q, 'y'), make_rational(Integer(1), den));
    }
  }

  // log(1 + w) = sum_k (-1)^{k+1} w^k / k; w has no constant term, so
  // k <= n_max suffices.
  NcPoly log_sum;
  NcPoly power = NcPoly::one();
  for (std::size_t k = 1; k <= n_max; ++k) {
    power = nc_mul_truncated(power, w, n_max);
    const Rational coef = make_rational(k % 2 == 1 ? 1 : -1, static_cast<long>(k));
    log_sum += coef * power;
  }

  std::vector<NcPoly> parts(n_max + 1);
  for (const auto& [word, c] : log_sum.terms()) parts[word.size()].add_term(word, c);
  return parts;
}

NcPoly left_normed_bracket(const Word& w) {
  if (w.empty()) return {};
  NcPoly acc = NcPoly::monomial(w.substr(0, 1));
  for (std::size_t k = 1; k < w.size(); ++k) acc = nc_bracket(acc, NcPoly::monomial(w.substr(k, 1)));
  return acc;
}

bool is_lie_polynomial(const NcPoly& p) {
  std::size_t max_degree = 0;
  for (const auto& [word, c] : p.terms()) max_degree = std::max(max_degree, word.size());
  if (p.coeff("") != 0) return false;
  for (std::size_t n = 1; n <= max_degree; ++n) {
    const NcPoly part = p.degree_part(n);
    if (part.is_zero()) continue;
    NcPoly theta;
    for (const auto& [word, c] : part.terms()) theta += c * left_normed_bracket(word);
    if (!(theta == Rational(static_cast<unsigned long>(n)) * part)) return false;
  }
  return true;
}

}  // namespace cbhd
