#pragma once

#include <string>
#include <vector>

#include "betaprod/model.hpp"
#include "betaprod/special_functions.hpp"

namespace betaprod {

// One branch of the expansion about x = 0:
//   A_k x^(u_k - 1) sum_n prod_i (u_k - v_i + 1)_n / (u_k - u_i + 1)_n x^n.
// Terms are produced by a running ratio, one multiply/divide per parameter
// per step; den_shifts holds exactly one entry equal to 1 (the i = k self
// term, whose Pochhammer is n!).
struct OriginBranch {
  double exponent = 0.0;          // u_k - 1
  SignedLogValue leading;         // branch constant A_k
  std::vector<double> num_shifts;  // u_k - v_i + 1
  std::vector<double> den_shifts;  // u_k - u_i + 1
};

struct OriginExpansion {
  ProductSpec spec;
  std::vector<OriginBranch> branches;
  // Set when some |u_i - u_j - round(u_i - u_j)| < 1e-6: the branch constants
  // carry large cancellations and evaluation should prefer the unit series
  // except very close to x = 0.
  bool ill_conditioned = false;
  std::vector<std::string> diagnostics;  // e.g. underflowed branches dropped
};

// Margin below which a Generic spec is still flagged ill-conditioned.
inline constexpr double kIllConditionedMargin = 1e-6;

// Leading constant A_k of branch k.  Exposed separately because the x -> 0
// endpoint value needs the minimal-u branch constant even for specs whose
// full origin expansion is unavailable (the minimal-u branch never hits a
// gamma pole).  Throws pole_error if some gamma argument is a non-positive
// integer.
SignedLogValue origin_branch_constant(const ProductSpec& spec, int k);

// Builds the m-branch expansion.  Requires a Generic spec (otherwise the
// branch constants hit gamma poles); additionally every v_j - u_k must stay
// away from non-positive integers.  Throws validation_error for
// IntegerDifference specs and pole_error naming the offending (j, k) pair.
OriginExpansion build_origin(const ProductSpec& spec);

// Density at x in (0, 1).  Each branch is truncated once |term| stays below
// tol * |branch partial sum| for three consecutive terms; throws
// convergence_error past max_terms (expected only near x = 1, where callers
// should have crossed over to the unit series).
double eval_origin_pdf(const OriginExpansion& exp, double x,
                       double tol = 1e-12, int max_terms = kDefaultMaxTerms);

// Termwise integral of the density series: each branch contributes
// A_k sum_n t_n x^(u_k + n) / (u_k + n).
double eval_origin_cdf(const OriginExpansion& exp, double x,
                       double tol = 1e-12, int max_terms = kDefaultMaxTerms);

// Closed-form m = 2 density
//   [Gamma(v1)Gamma(v2) / (Gamma(u1)Gamma(u2)Gamma(delta))]
//     x^(u1-1) (1-x)^(delta-1) 2F1(v2-u2, v1-u2; delta; 1-x)
// with the factors ordered internally so u2 >= u1 (the product distribution
// is symmetric in its factors, and this ordering keeps the 2F1 convergent).
// Valid for Generic and IntegerDifference specs alike.
double m2_closed_pdf(const ProductSpec& spec, double x, double tol = 1e-12,
                     int max_terms = kDefaultMaxTerms);

// The m = 2 integer-difference case u2 = u1 + n, with log terms: the finite
// sum, the (-log x) 2F1 term, and the digamma series.  Factors of 1/Gamma at
// non-positive integers are treated as exactly 0 (entire-function
// convention).  Agrees with m2_closed_pdf, which has no integer-difference
// problem and serves as its oracle.
double m2_log_pdf(double u1, int n, double v1, double v2, double x,
                  double tol = 1e-12, int max_terms = kDefaultMaxTerms);

}  // namespace betaprod
