#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "betaprod/model.hpp"

namespace betaprod {

// A seeded draw of the product variable.  values are sorted ascending.
struct SampleBatch {
  std::vector<double> values;
  std::uint64_t seed = 0;

  std::size_t count() const { return values.size(); }
};

// Draws count samples of prod_i B_i with B_i ~ Beta(u_i, v_i - u_i); each
// Beta variate is G1/(G1+G2) from two gamma variates.  Deterministic for a
// fixed seed (per platform; bit-identical streams across platforms are not
// promised).
SampleBatch sample_product(const ProductSpec& spec, std::size_t count,
                           std::uint64_t seed);

// Writes one value per line in full precision.
void write_samples(const SampleBatch& batch, std::ostream& out);

// Density at x by iterated numerical multiplicative convolution
//   f*g(x) = int_x^1 f(t) g(x/t) dt/t
// of the factor Beta densities, convolved left to right.  Adaptive
// Gauss-Legendre with power-law substitutions neutralizes the endpoint
// singularities; for m > 2 the intermediate densities are held on
// Chebyshev grids of cheb_nodes points (their regular parts, with the known
// (1-t)^(delta_k - 1) behavior factored out).  target_abs <= 0 picks 1e-8
// for m <= 3 and 1e-5 above (cost grows multiplicatively with m).  Throws
// accuracy_error carrying the achieved estimate when the target is missed.
double conv_quadrature(const ProductSpec& spec, double x,
                       double target_abs = 0.0, int cheb_nodes = 81);

// int_0^1 x^n pdf(x) dx to target absolute accuracy.  u_min and delta give
// the endpoint exponents x^(u_min - 1) at 0 and (1-x)^(delta - 1) at 1 so
// the substitutions can neutralize both singularities.
double moment_quadrature(const std::function<double(double)>& pdf, int n,
                         double u_min, double delta, double target = 1e-7);

// Two-sided Kolmogorov-Smirnov statistic
//   max_i max(|i/N - cdf(x_i)|, |cdf(x_i) - (i-1)/N|)
// over the sorted batch.
double ks_statistic(const SampleBatch& batch,
                    const std::function<double(double)>& cdf);

// Both sides of the identity
//   int_x^1 t^(a-1) (1-t)^(b-1) (1-x/t)^(g-1) dt
//     = B(b, g) (1-x)^(b+g-1) 2F1(g-a, b; b+g; 1-x),
// the left by adaptive quadrature after the substitution t = 1-s+sx, the
// right through the hypergeometric series.
struct LemmaCheck {
  double lhs = 0.0;
  double rhs = 0.0;
};
LemmaCheck lemma_inttxt_check(double alpha, double beta, double gamma_,
                              double x);

}  // namespace betaprod
