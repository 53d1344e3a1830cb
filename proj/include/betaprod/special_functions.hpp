#pragma once

#include <limits>

namespace betaprod {

// Threshold below which |x - round(x)| classifies x as an integer.  Used for
// pole detection and genericity classification; separates deliberate integer
// inputs from floating-point noise.
inline constexpr double kIntegerTol = 1e-9;

// Default cap on series terms before a convergence_error is raised.
inline constexpr int kDefaultMaxTerms = 100000;

// A real number stored as sign * exp(log_magnitude).  Products of many gamma
// values are assembled in this form and exponentiated once, so huge or tiny
// intermediate magnitudes never overflow.  sign == 0 encodes an exact zero.
struct SignedLogValue {
  int sign = 0;
  double log_magnitude = -std::numeric_limits<double>::infinity();

  static SignedLogValue zero() { return {}; }
  static SignedLogValue one() { return {1, 0.0}; }
  static SignedLogValue from_value(double v);

  SignedLogValue operator*(const SignedLogValue& o) const;
  SignedLogValue operator/(const SignedLogValue& o) const;

  // sign * exp(log_magnitude); may overflow to +-inf for extreme magnitudes.
  double value() const;
};

// True when x is within tol of an integer.
bool near_integer(double x, double tol = kIntegerTol);

// sin(pi*x) with argument reduction, accurate near integer x.
double sin_pi(double x);

// ln Gamma(x) for x > 0.  Throws validation_error for x <= 0.
double log_gamma(double x);

// Gamma(x) in signed-log form for any real x that is not a non-positive
// integer; negative arguments go through the reflection formula.  Throws
// pole_error at non-positive integers (within kIntegerTol).
SignedLogValue gamma_signed(double x);

// Rising factorial (a)_n = a (a+1) ... (a+n-1); exact 1 for n = 0.
double pochhammer(double a, int n);

// psi(x) = d/dx ln Gamma(x) for x > 0.  Throws validation_error for x <= 0.
double digamma(double x);

// Gauss hypergeometric series 2F1(a, b; c; x) for 0 <= x < 1 by direct
// summation; truncates once the term stays below tol * |partial sum| for
// three consecutive terms.  When c - a - b < 0 and x > 0.8 the standard
// transformation to (1-x)^(c-a-b) * 2F1(c-a, c-b; c; x) is applied first to
// restore summand decay.  Throws convergence_error past max_terms and
// validation_error when c is a non-positive integer or x is out of range.
double gauss_2f1(double a, double b, double c, double x, double tol = 1e-12,
                 int max_terms = kDefaultMaxTerms);

}  // namespace betaprod
