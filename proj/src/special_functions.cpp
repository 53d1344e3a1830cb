#include "betaprod/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "betaprod/errors.hpp"

namespace betaprod {

namespace {

// Lanczos approximation, g = 7, 9 terms.  Good for ~15 significant digits of
// Gamma(x) on x > 0.
constexpr double kLanczosG = 7.0;
constexpr double kLanczosCoeff[] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,    12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6,  1.5056327351493116e-7};

double lanczos_log_gamma(double x) {
  // Valid for x >= 0.5; callers shift smaller arguments up first.
  double acc = kLanczosCoeff[0];
  for (int i = 1; i < 9; ++i) acc += kLanczosCoeff[i] / (x - 1.0 + i);
  const double t = x + kLanczosG - 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (x - 0.5) * std::log(t) -
         t + std::log(acc);
}

}  // namespace

SignedLogValue SignedLogValue::from_value(double v) {
  if (v == 0.0) return zero();
  return {v > 0.0 ? 1 : -1, std::log(std::fabs(v))};
}

SignedLogValue SignedLogValue::operator*(const SignedLogValue& o) const {
  if (sign == 0 || o.sign == 0) return zero();
  return {sign * o.sign, log_magnitude + o.log_magnitude};
}

SignedLogValue SignedLogValue::operator/(const SignedLogValue& o) const {
  if (sign == 0) return zero();
  return {sign * o.sign, log_magnitude - o.log_magnitude};
}

double SignedLogValue::value() const {
  if (sign == 0) return 0.0;
  return sign * std::exp(log_magnitude);
}

bool near_integer(double x, double tol) {
  return std::fabs(x - std::round(x)) < tol;
}

double sin_pi(double x) {
  // Reduce to [0, 1) so the argument of std::sin stays small.
  double n = std::floor(x);
  double f = x - n;
  double s = (f <= 0.5) ? std::sin(std::numbers::pi * f)
                        : std::sin(std::numbers::pi * (1.0 - f));
  // Odd integer part flips the sign of sin(pi x).
  if (std::fmod(n, 2.0) != 0.0) s = -s;
  return s;
}

double log_gamma(double x) {
  if (!(x > 0.0))
    throw validation_error("log_gamma: argument must be positive, got " +
                           std::to_string(x));
  if (x < 0.5) {
    // Gamma(x) = Gamma(x+1)/x keeps the Lanczos sum well away from 0.
    return lanczos_log_gamma(x + 1.0) - std::log(x);
  }
  return lanczos_log_gamma(x);
}

SignedLogValue gamma_signed(double x) {
  if (x > 0.0) return {1, log_gamma(x)};
  if (near_integer(x) && std::round(x) <= 0.0)
    throw pole_error("gamma_signed: pole at non-positive integer " +
                     std::to_string(x));
  // Reflection: Gamma(x) = pi / (sin(pi x) Gamma(1 - x)), 1 - x > 1 here.
  const double s = sin_pi(x);
  const double log_mag =
      std::log(std::numbers::pi) - std::log(std::fabs(s)) - log_gamma(1.0 - x);
  return {s > 0.0 ? 1 : -1, log_mag};
}

double pochhammer(double a, int n) {
  if (n < 0)
    throw validation_error("pochhammer: order must be non-negative");
  double prod = 1.0;
  for (int k = 0; k < n; ++k) prod *= a + k;
  return prod;
}

double digamma(double x) {
  if (!(x > 0.0))
    throw validation_error("digamma: argument must be positive, got " +
                           std::to_string(x));
  // psi(x) = psi(x+1) - 1/x pushes the argument into the asymptotic range.
  double acc = 0.0;
  while (x < 12.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  // Asymptotic series with Bernoulli-number coefficients B_2n/(2n).
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double series = inv2 * (1.0 / 12.0 -
                  inv2 * (1.0 / 120.0 -
                  inv2 * (1.0 / 252.0 -
                  inv2 * (1.0 / 240.0 -
                  inv2 * (1.0 / 132.0 -
                  inv2 * (691.0 / 32760.0 -
                  inv2 * (1.0 / 12.0)))))));
  return acc + std::log(x) - 0.5 * inv - series;
}

double gauss_2f1(double a, double b, double c, double x, double tol,
                 int max_terms) {
  if (near_integer(c) && std::round(c) <= 0.0)
    throw validation_error("gauss_2f1: c must not be a non-positive integer");
  if (!(x >= 0.0 && x < 1.0))
    throw validation_error("gauss_2f1: argument must lie in [0, 1)");
  if (x == 0.0) return 1.0;

  const double s = c - a - b;
  if (s < 0.0 && x > 0.8) {
    // 2F1(a,b;c;x) = (1-x)^(c-a-b) 2F1(c-a,c-b;c;x); the transformed series
    // has c-(c-a)-(c-b) = a+b-c > 0 and decays at the same argument.
    return std::pow(1.0 - x, s) * gauss_2f1(c - a, c - b, c, x, tol, max_terms);
  }

  double term = 1.0;
  double sum = 1.0;
  int small_streak = 0;
  for (int n = 0; n < max_terms; ++n) {
    term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x;
    sum += term;
    if (std::fabs(term) < tol * std::fabs(sum)) {
      if (++small_streak >= 3) return sum;
    } else {
      small_streak = 0;
    }
  }
  throw convergence_error("gauss_2f1: series did not converge within " +
                          std::to_string(max_terms) + " terms");
}

}  // namespace betaprod
