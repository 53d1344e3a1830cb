#include "betaprod/unit_series.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <string>

#include "betaprod/errors.hpp"

namespace betaprod {

namespace {

// Multiplies the shifted factors in sorted order so the value is identical
// no matter how the caller ordered the spec (the recurrence is sensitive to
// reordering ulps).
double sorted_product(std::vector<double> factors) {
  std::sort(factors.begin(), factors.end());
  double prod = 1.0;
  for (double f : factors) prod *= f;
  return prod;
}

}  // namespace

double poly_p(const ProductSpec& spec, double c) {
  std::vector<double> terms;
  terms.reserve(spec.factors.size());
  for (const auto& f : spec.factors) terms.push_back(c + 1.0 - f.u);
  return sorted_product(std::move(terms));
}

double poly_q(const ProductSpec& spec, double c) {
  std::vector<double> terms;
  terms.reserve(spec.factors.size());
  for (const auto& f : spec.factors) terms.push_back(c + 2.0 - f.v);
  return sorted_product(std::move(terms));
}

double poly_q1(const ProductSpec& spec, double c) {
  return (1.0 + c) * poly_q(spec, c) - c * poly_q(spec, c - 1.0);
}

double r_prime(const ProductSpec& spec, int k, double gamma) {
  const int m = spec.size();
  if (k < 0 || k >= m)
    throw validation_error("r_prime: k must lie in [0, m-1], got " +
                           std::to_string(k));
  double k_fact = 1.0;
  for (int i = 2; i <= k; ++i) k_fact *= i;
  const double dp = nabla_k([&](double c) { return poly_p(spec, c); }, gamma, k);
  const double dq1 =
      nabla_k([&](double c) { return poly_q1(spec, c); }, gamma, k);
  return dp / k_fact - dq1 / (k_fact * (k + 1.0));
}

UnitExpansion build_unit(const ProductSpec& spec, int n_coeffs) {
  if (n_coeffs < 0)
    throw validation_error("build_unit: coefficient count must be >= 0");

  UnitExpansion exp;
  exp.spec = spec;
  exp.delta = spec.delta;

  // Gamma products taken over u-sorted factors, again for exact permutation
  // invariance of the stored expansion.
  std::vector<BetaFactor> sorted = spec.factors;
  std::sort(sorted.begin(), sorted.end(), [](const BetaFactor& a,
                                             const BetaFactor& b) {
    return a.u < b.u || (a.u == b.u && a.v < b.v);
  });
  SignedLogValue pref = SignedLogValue::one() / gamma_signed(spec.delta);
  for (const auto& f : sorted)
    pref = pref * gamma_signed(f.v) / gamma_signed(f.u);
  exp.prefactor = pref;

  const int m = spec.size();
  const double delta = spec.delta;
  exp.coeffs.assign(static_cast<std::size_t>(n_coeffs) + 1, 0.0);
  exp.coeffs[0] = 1.0;

  // The combination is accumulated in extended precision: coefficients feed
  // forward through the recurrence, so per-step rounding would otherwise
  // compound into the ~1e-12 band that cross-checks operate at.
  for (int n = 1; n <= n_coeffs; ++n) {
    long double cn = 0.0L;
    // Denominator products (-n-delta+1)_k = (-1)^k (delta+n-1)...(delta+n-k);
    // every factor is >= delta > 0.
    long double poch = 1.0L;
    int sign = 1;
    const int k_max = std::min(m - 1, n);
    for (int k = 1; k <= k_max; ++k) {
      const double factor = delta + n - k;
      assert(factor >= delta * (1.0 - 1e-12));
      poch *= factor;
      sign = -sign;
      cn += sign * static_cast<long double>(
                       r_prime(spec, m - 1 - k, n - k + delta - 1.0)) *
            exp.coeffs[n - k] / poch;
    }
    cn /= n;
    if (n >= m) {
      long double poch_m1 = 1.0L;
      for (int i = 1; i <= m - 1; ++i) poch_m1 *= delta + n - i;
      const int sign_m1 = (m - 1) % 2 == 0 ? 1 : -1;
      cn += sign_m1 *
            static_cast<long double>(poly_q(spec, n - m + delta - 1.0)) *
            exp.coeffs[n - m] / (n * poch_m1);
    }
    exp.coeffs[n] = static_cast<double>(cn);
  }
  return exp;
}

namespace {

// Sums coeffs[n] * t^n with a hard-floor early stop; reports the estimated
// omitted tail of the sum.
SeriesValue sum_series(const std::vector<double>& coeffs, double t) {
  SeriesValue out;
  double tn = 1.0;
  double sum = 0.0;
  int small_streak = 0;
  std::size_t n = 0;
  double prev_term = 0.0, last_term = 0.0;
  for (; n < coeffs.size(); ++n) {
    const double term = coeffs[n] * tn;
    sum += term;
    prev_term = last_term;
    last_term = term;
    if (n >= 2 && std::fabs(term) < 1e-17 * std::fabs(sum)) {
      if (++small_streak >= 3) break;
    } else {
      small_streak = 0;
    }
    tn *= t;
  }
  out.value = sum;
  if (n < coeffs.size()) {
    out.est_error = std::fabs(last_term);
  } else if (coeffs.size() >= 2 && prev_term != 0.0) {
    const double r =
        std::clamp(std::fabs(last_term / prev_term), 0.0, 0.99);
    out.est_error = std::fabs(last_term) * r / (1.0 - r);
  } else {
    out.est_error = std::fabs(last_term);
  }
  return out;
}

double power_factor(double t, double delta) {
  // (1-x)^(delta-1) without calling pow when delta == 1, so x = 1 never
  // evaluates 0^0.
  if (delta == 1.0) return 1.0;
  return std::pow(t, delta - 1.0);
}

}  // namespace

SeriesValue eval_unit_pdf_full(const UnitExpansion& exp, double x) {
  if (!(x > 0.0 && x <= 1.0))
    throw validation_error("eval_unit_pdf: x must lie in (0, 1]");
  const double t = 1.0 - x;
  const SeriesValue series = sum_series(exp.coeffs, t);
  const double scale = exp.prefactor.value() * power_factor(t, exp.delta);
  const double est =
      series.est_error == 0.0 ? 0.0 : std::fabs(scale) * series.est_error;
  return {scale * series.value, est};
}

double eval_unit_pdf(const UnitExpansion& exp, double x, double tol) {
  const double t = 1.0 - x;
  const SeriesValue series = sum_series(exp.coeffs, t);
  if (series.est_error > tol * std::max(std::fabs(series.value), 1.0))
    throw insufficient_coefficients(
        "eval_unit_pdf: tail estimate " + std::to_string(series.est_error) +
        " exceeds tolerance at x = " + std::to_string(x) +
        "; rebuild with larger N or use the origin expansion");
  const double a = exp.prefactor.value();
  return a * power_factor(t, exp.delta) * series.value;
}

SeriesValue eval_unit_cdf_full(const UnitExpansion& exp, double x) {
  if (!(x > 0.0 && x <= 1.0))
    throw validation_error("eval_unit_cdf: x must lie in (0, 1]");
  const double t = 1.0 - x;
  if (t == 0.0) return {1.0, 0.0};
  std::vector<double> scaled(exp.coeffs.size());
  for (std::size_t n = 0; n < exp.coeffs.size(); ++n)
    scaled[n] = exp.coeffs[n] / (exp.delta + n);
  const SeriesValue series = sum_series(scaled, t);
  const double a = exp.prefactor.value();
  const double tail_mass = a * std::pow(t, exp.delta) * series.value;
  return {1.0 - tail_mass, a * std::pow(t, exp.delta) * series.est_error};
}

double eval_unit_cdf(const UnitExpansion& exp, double x, double tol) {
  const SeriesValue v = eval_unit_cdf_full(exp, x);
  if (v.est_error > tol)
    throw insufficient_coefficients(
        "eval_unit_cdf: tail estimate " + std::to_string(v.est_error) +
        " exceeds tolerance at x = " + std::to_string(x));
  return v.value;
}

}  // namespace betaprod
