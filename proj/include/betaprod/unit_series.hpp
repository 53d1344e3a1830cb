#pragma once

#include <cmath>
#include <vector>

#include "betaprod/model.hpp"
#include "betaprod/special_functions.hpp"

namespace betaprod {

// Expansion of the density about x = 1:
//   f(x) = A (1-x)^(delta-1) { 1 + sum_{n>=1} c_n (1-x)^n },
// with A = [1/Gamma(delta)] prod Gamma(v_i)/Gamma(u_i) and the c_n produced
// by the (m+1)-term recurrence built from the R'_k coefficient functions.
struct UnitExpansion {
  ProductSpec spec;
  SignedLogValue prefactor;   // A, assembled in signed-log space
  double delta = 0.0;
  std::vector<double> coeffs;  // c_0..c_N with c_0 = 1 exactly
};

// p(c) = prod (c + 1 - u_i)
double poly_p(const ProductSpec& spec, double c);
// q(c) = prod (c + 2 - v_i)
double poly_q(const ProductSpec& spec, double c);
// q1(c) = (1 + c) q(c) - c q(c - 1)
double poly_q1(const ProductSpec& spec, double c);

// k-th backward difference sum_{j=0}^k (-1)^j C(k,j) f(c - j).
template <typename F>
double nabla_k(F&& f, double c, int k) {
  double binom = 1.0;
  double acc = 0.0;
  for (int j = 0; j <= k; ++j) {
    acc += (j % 2 == 0 ? binom : -binom) * f(c - j);
    binom = binom * (k - j) / (j + 1.0);
  }
  return acc;
}

// R'_k(gamma) = (1/k!) nabla^k p(gamma) - (1/(k+1)!) nabla^k q1(gamma) for
// 0 <= k <= m-1.  Throws validation_error for k outside that range.
double r_prime(const ProductSpec& spec, int k, double gamma);

// Builds c_0..c_N by the recurrence; the prefactor comes from the gamma
// products.  Well-defined for every valid spec since all recurrence
// denominators stay >= delta > 0 (asserted during the build).
UnitExpansion build_unit(const ProductSpec& spec, int n_coeffs);

// Value plus a truncation-quality estimate.  est_error is an absolute bound
// estimate on the returned value: when the coefficient budget is exhausted
// the omitted tail is modeled geometrically from the last two retained terms
// (ratio clamped to [0, 0.99]); when the terms die out early it is the last
// negligible term.
struct SeriesValue {
  double value = 0.0;
  double est_error = 0.0;
};

// Density series at x in (0, 1].  At x = 1 the value is 0 for delta > 1, A
// for delta = 1, +infinity for delta < 1.
SeriesValue eval_unit_pdf_full(const UnitExpansion& exp, double x);

// Throwing wrapper: raises insufficient_coefficients when the relative tail
// estimate exceeds tol (rebuild with larger N or evaluate via the origin
// expansion instead).
double eval_unit_pdf(const UnitExpansion& exp, double x, double tol = 1e-12);

// Distribution function 1 - A sum c_n (1-x)^(delta+n)/(delta+n); equals 1 at
// x = 1 by construction.
SeriesValue eval_unit_cdf_full(const UnitExpansion& exp, double x);
double eval_unit_cdf(const UnitExpansion& exp, double x, double tol = 1e-12);

}  // namespace betaprod
