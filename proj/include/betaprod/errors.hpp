#pragma once

#include <stdexcept>

namespace betaprod {

// Bad user input: parameter validation, malformed spec strings, option errors.
class validation_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Base class for runtime numerical failures.
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A gamma-function pole (non-positive integer argument) was hit.
class pole_error : public numeric_error {
 public:
  using numeric_error::numeric_error;
};

// A series exceeded its term budget without meeting its tolerance.
class convergence_error : public numeric_error {
 public:
  using numeric_error::numeric_error;
};

// A quadrature could not reach its accuracy target; carries the achieved
// estimate so callers can decide whether the degraded value is usable.
class accuracy_error : public numeric_error {
 public:
  accuracy_error(const std::string& msg, double estimate, double achieved)
      : numeric_error(msg), estimate_(estimate), achieved_(achieved) {}
  double estimate() const { return estimate_; }
  double achieved_accuracy() const { return achieved_; }

 private:
  double estimate_;
  double achieved_;
};

// A truncated expansion cannot serve the requested point at the requested
// tolerance; rebuild with more coefficients or evaluate elsewhere.
class insufficient_coefficients : public numeric_error {
 public:
  using numeric_error::numeric_error;
};

}  // namespace betaprod
