#pragma once

#include <cstddef>
#include <vector>

#include "cbhd/ncpoly.hpp"

namespace cbhd {

/// Z_{i,j} from the explicit word sum
///   sum_n (-1)^{n+1}/n  sum  x^{i1} y^{j1} ... x^{in} y^{jn} / (i1! j1! ... in! jn!)
/// over n-tuples of pairs (ik,jk) != (0,0) adding up to (i,j). Z_{0,0} = 0.
NcPoly dynkin_Z(Bidegree d);

/// Z_{i,j} from the bracket recursion in the free algebra.
NcPoly recursive_Z_free(Bidegree d);

/// sum_{i+j=n} Z_{i,j}.
NcPoly bch_homogeneous(std::size_t n);

/// Degree components 0..n_max of log(exp(x) exp(y)), by composing the
/// truncated series directly. Entry n is the degree-n part.
std::vector<NcPoly> log_expexp_oracle(std::size_t n_max);

/// Left-normed bracketing of a word: x1 x2 ... xn -> [...[[x1, x2], x3], ..., xn].
NcPoly left_normed_bracket(const Word& w);

/// Dynkin-Specht-Wever test: p is a Lie polynomial iff every homogeneous
/// part p_n satisfies theta(p_n) = n p_n, theta the left-normed bracketing.
bool is_lie_polynomial(const NcPoly& p);

}  // namespace cbhd
