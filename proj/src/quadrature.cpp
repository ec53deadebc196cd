#include "cbhd/quadrature.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace cbhd {

namespace {

struct Panel {
  double a, b;
  double fa, fm, fb;
  double whole;  // Simpson estimate on [a, b]
  double tol;
  int depth;
};

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

}  // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol, int max_depth) {
  if (a == b) return {};
  const double sign = b < a ? -1.0 : 1.0;
  if (b < a) std::swap(a, b);

  QuadratureResult out;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  std::vector<Panel> stack{{a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), abs_tol, 0}};
  while (!stack.empty()) {
    const Panel p = stack.back();
    stack.pop_back();
    const double m = 0.5 * (p.a + p.b);
    const double flm = f(0.5 * (p.a + m));
    const double frm = f(0.5 * (m + p.b));
    const double left = simpson(p.a, m, p.fa, flm, p.fm);
    const double right = simpson(m, p.b, p.fm, frm, p.fb);
    const double diff = left + right - p.whole;
    if (std::abs(diff) <= 15.0 * p.tol || p.depth >= max_depth) {
      out.value += left + right + diff / 15.0;
      out.error_estimate += std::abs(diff) / 15.0;
      continue;
    }
    stack.push_back({m, p.b, p.fm, frm, p.fb, right, 0.5 * p.tol, p.depth + 1});
    stack.push_back({p.a, m, p.fa, flm, p.fm, left, 0.5 * p.tol, p.depth + 1});
  }
  out.value *= sign;
  return out;
}

double composite_simpson(const std::function<double(double)>& f, double a, double b, long panels) {
  if (panels < 2) panels = 2;
  if (panels % 2 == 1) ++panels;
  const double h = (b - a) / static_cast<double>(panels);
  double odd = 0.0, even = 0.0;
  for (long k = 1; k < panels; ++k) {
    const double v = f(a + h * static_cast<double>(k));
    (k % 2 == 1 ? odd : even) += v;
  }
  return h / 3.0 * (f(a) + 4.0 * odd + 2.0 * even + f(b));
}

}  // namespace cbhd
