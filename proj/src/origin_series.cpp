#include "betaprod/origin_series.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "betaprod/errors.hpp"

namespace betaprod {

SignedLogValue origin_branch_constant(const ProductSpec& spec, int k) {
  // A_k = [prod_i Gamma(v_i)/Gamma(u_i)] / Gamma(v_k - u_k)
  //       * prod_{j != k} Gamma(u_j - u_k) / Gamma(v_j - u_k)
  const int m = spec.size();
  SignedLogValue a = SignedLogValue::one();
  for (const auto& f : spec.factors)
    a = a * gamma_signed(f.v) / gamma_signed(f.u);
  a = a / gamma_signed(spec.factors[k].v - spec.factors[k].u);
  for (int j = 0; j < m; ++j) {
    if (j == k) continue;
    a = a * gamma_signed(spec.factors[j].u - spec.factors[k].u) /
        gamma_signed(spec.factors[j].v - spec.factors[k].u);
  }
  return a;
}

namespace {

// Sums the branch hypergeometric series sum_n t_n x^n (t_0 = 1) with the
// running term-ratio update.  weight(n) scales term n (1 for the pdf,
// 1/(u_k + n) for the cdf integral).
template <typename WeightFn>
double branch_series(const OriginBranch& br, double x, double tol,
                     int max_terms, WeightFn weight) {
  double term = 1.0;
  double sum = weight(0);
  int small_streak = 0;
  for (int n = 1; n <= max_terms; ++n) {
    double ratio = 1.0;
    for (std::size_t i = 0; i < br.num_shifts.size(); ++i)
      ratio *= (br.num_shifts[i] + n - 1.0) / (br.den_shifts[i] + n - 1.0);
    term *= ratio * x;
    const double contrib = term * weight(n);
    sum += contrib;
    if (std::fabs(contrib) < tol * std::fabs(sum)) {
      if (++small_streak >= 3) return sum;
    } else {
      small_streak = 0;
    }
  }
  throw convergence_error(
      "origin series branch did not converge within " +
      std::to_string(max_terms) + " terms at x = " + std::to_string(x));
}

double signed_exp(const SignedLogValue& c, double log_extra, double factor) {
  if (c.sign == 0 || factor == 0.0) return 0.0;
  const double s = c.sign * (factor > 0.0 ? 1.0 : -1.0);
  return s * std::exp(c.log_magnitude + log_extra + std::log(std::fabs(factor)));
}

}  // namespace

OriginExpansion build_origin(const ProductSpec& spec) {
  if (spec.genericity != Genericity::Generic)
    throw validation_error(
        "build_origin: spec has integer u-differences; use the unit series "
        "or the m=2 log path");

  const int m = spec.size();
  for (int k = 0; k < m; ++k) {
    for (int j = 0; j < m; ++j) {
      if (j == k) continue;
      const double d = spec.factors[j].v - spec.factors[k].u;
      if (near_integer(d) && std::round(d) <= 0.0)
        throw pole_error("build_origin: v_" + std::to_string(j + 1) + " - u_" +
                         std::to_string(k + 1) +
                         " is a non-positive integer; leading constant has a "
                         "pole");
    }
  }

  OriginExpansion exp;
  exp.spec = spec;
  for (int i = 0; i < m && !exp.ill_conditioned; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const double d = spec.factors[i].u - spec.factors[j].u;
      if (std::fabs(d - std::round(d)) < kIllConditionedMargin) {
        exp.ill_conditioned = true;
        break;
      }
    }
  }

  for (int k = 0; k < m; ++k) {
    OriginBranch br;
    br.exponent = spec.factors[k].u - 1.0;
    br.leading = origin_branch_constant(spec, k);
    br.num_shifts.reserve(m);
    br.den_shifts.reserve(m);
    for (int i = 0; i < m; ++i) {
      br.num_shifts.push_back(spec.factors[k].u - spec.factors[i].v + 1.0);
      br.den_shifts.push_back(spec.factors[k].u - spec.factors[i].u + 1.0);
    }
    if (br.leading.sign == 0) {
      exp.diagnostics.push_back("branch " + std::to_string(k + 1) +
                                " dropped: leading constant underflowed");
      continue;
    }
    exp.branches.push_back(std::move(br));
  }
  return exp;
}

double eval_origin_pdf(const OriginExpansion& exp, double x, double tol,
                       int max_terms) {
  if (!(x > 0.0 && x < 1.0))
    throw validation_error("eval_origin_pdf: x must lie in (0, 1)");
  const double log_x = std::log(x);
  double total = 0.0;
  for (const auto& br : exp.branches) {
    const double series =
        branch_series(br, x, tol, max_terms, [](int) { return 1.0; });
    total += signed_exp(br.leading, br.exponent * log_x, series);
  }
  return total;
}

double eval_origin_cdf(const OriginExpansion& exp, double x, double tol,
                       int max_terms) {
  if (!(x > 0.0 && x < 1.0))
    throw validation_error("eval_origin_cdf: x must lie in (0, 1)");
  const double log_x = std::log(x);
  double total = 0.0;
  for (const auto& br : exp.branches) {
    const double u_k = br.exponent + 1.0;
    const double series = branch_series(
        br, x, tol, max_terms, [&](int n) { return 1.0 / (u_k + n); });
    total += signed_exp(br.leading, u_k * log_x, series);
  }
  return total;
}

double m2_closed_pdf(const ProductSpec& spec, double x, double tol,
                     int max_terms) {
  if (spec.size() != 2)
    throw validation_error("m2_closed_pdf: spec must have exactly 2 factors");
  if (!(x > 0.0 && x < 1.0))
    throw validation_error("m2_closed_pdf: x must lie in (0, 1)");
  BetaFactor lo = spec.factors[0];
  BetaFactor hi = spec.factors[1];
  if (lo.u > hi.u) std::swap(lo, hi);
  const double delta = spec.delta;
  const double log_pref = log_gamma(lo.v) + log_gamma(hi.v) - log_gamma(lo.u) -
                          log_gamma(hi.u) - log_gamma(delta);
  const double f = gauss_2f1(hi.v - hi.u, lo.v - hi.u, delta, 1.0 - x, tol,
                             max_terms);
  const double log_mag = log_pref + (lo.u - 1.0) * std::log(x) +
                         (delta - 1.0) * std::log1p(-x);
  return std::exp(log_mag) * f;
}

double m2_log_pdf(double u1, int n, double v1, double v2, double x,
                  double tol, int max_terms) {
  if (n < 0) throw validation_error("m2_log_pdf: n must be non-negative");
  if (!(x > 0.0 && x < 1.0))
    throw validation_error("m2_log_pdf: x must lie in (0, 1)");
  const double delta = v1 + v2 - 2.0 * u1 - n;

  // 1/Gamma(z), with the entire-function convention 1/Gamma = 0 at
  // non-positive integers.
  const auto inv_gamma = [](double z) -> SignedLogValue {
    if (near_integer(z) && std::round(z) <= 0.0) return SignedLogValue::zero();
    return SignedLogValue::one() / gamma_signed(z);
  };

  const SignedLogValue common =
      gamma_signed(v1) * gamma_signed(v2) /
      (gamma_signed(u1) * gamma_signed(u1 + n));
  const double log_one_minus_x = std::log1p(-x);
  const double log_x = std::log(x);
  double total = 0.0;

  // Finite sum: x^(u1-1) sum_{k=0}^{n-1} (n-k-1)!/k! (v2-u1-n)_k
  // (v1-u1-n)_k (-x)^k, with prefactor 1/(Gamma(v2-u1) Gamma(v1-u1)).
  if (n >= 1) {
    const SignedLogValue pref =
        common * inv_gamma(v2 - u1) * inv_gamma(v1 - u1);
    if (pref.sign != 0) {
      double fact = 1.0;  // (n-k-1)!/k!, updated incrementally
      for (int i = 2; i <= n - 1; ++i) fact *= i;
      double poch = 1.0;  // (v2-u1-n)_k (v1-u1-n)_k (-x)^k
      double sum = 0.0;
      for (int k = 0; k < n; ++k) {
        sum += fact * poch;
        if (k + 1 < n) {
          fact /= (n - k - 1.0) * (k + 1.0);
          poch *= (v2 - u1 - n + k) * (v1 - u1 - n + k) * (-x);
        }
      }
      total += signed_exp(pref,
                          (u1 - 1.0) * log_x + (delta - 1.0) * log_one_minus_x,
                          sum);
    }
  }

  const SignedLogValue pref2 =
      common * inv_gamma(v2 - u1 - n) * inv_gamma(v1 - u1 - n);
  if (pref2.sign != 0) {
    double n_fact = 1.0;
    for (int i = 2; i <= n; ++i) n_fact *= i;
    const int n_sign = n % 2 == 0 ? 1 : -1;

    // (-log x) term: (-1)^n x^(u1+n-1) (-log x) / n! * 2F1(v2-u1, v1-u1;
    // n+1; x).
    const double f = gauss_2f1(v2 - u1, v1 - u1, n + 1.0, x, tol, max_terms);
    total += signed_exp(pref2,
                        (u1 + n - 1.0) * log_x + (delta - 1.0) * log_one_minus_x,
                        n_sign * (-log_x) / n_fact * f);

    // Digamma series: (-1)^n x^(u1+n-1) sum_k (v2-u1)_k (v1-u1)_k /
    // (k! (n+k)!) {psi(k+1) + psi(n+k+1) - psi(v2-u1+k) - psi(v1-u1+k)} x^k.
    // Under v_i > u_i > 0 every psi argument here is positive; a pole would
    // mean the formula's preconditions were violated.
    if (v1 - u1 <= 0.0 || v2 - u1 <= 0.0)
      throw pole_error("m2_log_pdf: digamma argument not positive");
    double poch = 1.0 / n_fact;  // (v2-u1)_k (v1-u1)_k / (k! (n+k)!) x^k
    double sum = 0.0;
    int small_streak = 0;
    bool converged = false;
    for (int k = 0; k < max_terms; ++k) {
      const double term =
          poch * (digamma(k + 1.0) + digamma(n + k + 1.0) -
                  digamma(v2 - u1 + k) - digamma(v1 - u1 + k));
      sum += term;
      if (std::fabs(term) < tol * std::fabs(sum) + 1e-300) {
        if (++small_streak >= 3) {
          converged = true;
          break;
        }
      } else {
        small_streak = 0;
      }
      poch *= (v2 - u1 + k) * (v1 - u1 + k) /
              ((k + 1.0) * (n + k + 1.0)) * x;
    }
    if (!converged)
      throw convergence_error("m2_log_pdf: digamma series did not converge");
    total += signed_exp(pref2,
                        (u1 + n - 1.0) * log_x + (delta - 1.0) * log_one_minus_x,
                        n_sign * sum);
  }
  return total;
}

}  // namespace betaprod
