#pragma once

#include <functional>
#include <optional>
#include <string>

#include "betaprod/model.hpp"
#include "betaprod/origin_series.hpp"
#include "betaprod/unit_series.hpp"

namespace betaprod {

// Which expansion served an evaluation.
enum class Region { Origin, Unit, M2Closed, M2Log };
const char* region_name(Region r);

// m = 2 fast-path selection; Closed for every two-factor spec since the
// 2F1-in-(1-x) form needs no genericity.  The log path is invoked
// dynamically for small x on integer-difference specs and shows up in
// per-point regions.
enum class M2Path { None, Closed, Log };

struct EvalResult {
  double value = 0.0;
  double est_error = 0.0;  // absolute truncation-error estimate
  Region region = Region::Unit;
};

struct BuildOptions {
  // Number of unit-series coefficients; 0 picks 64 when an origin expansion
  // serves small x and 600 when the unit series must cover everything.
  int n_coeffs = 0;
  double crossover = 0.55;
  bool crossover_auto = false;  // scan [0.35, 0.7] for minimal mismatch
  double tol = 1e-12;
  int max_terms = kDefaultMaxTerms;
};

// Below this x the small-x specific paths take over: the origin expansion
// even when flagged ill-conditioned, and the m = 2 log formula for
// integer-difference pairs (whose closed form converges slowly there).
inline constexpr double kSmallXCut = 0.05;

// User-facing density model: holds both expansions where available, applies
// the crossover policy, and serves pdf/cdf/quantile.  Immutable after build;
// all queries are pure and safe to call concurrently.
class DensityModel {
 public:
  const ProductSpec& spec() const { return spec_; }
  double crossover() const { return crossover_; }
  M2Path m2_path() const { return m2_path_; }
  bool has_origin() const { return origin_.has_value(); }
  const OriginExpansion& origin() const;
  const UnitExpansion& unit() const { return unit_; }

  // Endpoint exponents of the density: x^(min u - 1) at 0, (1-x)^(delta-1)
  // at 1.  Together with the infinity sentinels returned by pdf_at these
  // form the endpoint contract.
  double exponent_at_zero() const { return spec_.min_u() - 1.0; }
  double exponent_at_one() const { return spec_.delta - 1.0; }

  // Density at x in [0, 1].  x = 0 returns +infinity when min u < 1, the
  // u = 1 branch constant when min u = 1 (log-divergent duplicated-minimum
  // cases also return +infinity), 0 when min u > 1.  x = 1 follows the unit
  // series conventions.
  EvalResult pdf_at(double x) const;
  double pdf(double x) const { return pdf_at(x).value; }

  // Distribution function; cdf(0) = 0, cdf(1) = 1, monotone in between up to
  // series tolerance.
  EvalResult cdf_at(double x) const;
  double cdf(double x) const { return cdf_at(x).value; }

  // Inverse cdf by bracketing bisection (the density may be unbounded at 0,
  // so no derivative-based iteration).  Stops once the bracket is below
  // 1e-12 and |cdf - p| <= 1e-10 where the series accuracy permits.
  double quantile(double p) const;

  // Hook for fault-injection tests: perturbs unit coefficient c_1.
  void corrupt_unit_coefficient_for_testing(double rel_perturbation);

  friend DensityModel build_model(const ProductSpec& spec,
                                  const BuildOptions& options);

 private:
  DensityModel() = default;

  EvalResult pdf_endpoint_zero() const;
  EvalResult origin_pdf_result(double x) const;
  EvalResult unit_pdf_result(double x) const;
  EvalResult m2_closed_result(double x) const;
  EvalResult m2_log_result(double x) const;
  Region small_x_region() const;

  ProductSpec spec_;
  std::optional<OriginExpansion> origin_;
  UnitExpansion unit_;
  double crossover_ = 0.55;
  M2Path m2_path_ = M2Path::None;
  double tol_ = 1e-12;
  int max_terms_ = kDefaultMaxTerms;
};

DensityModel build_model(const ProductSpec& spec,
                         const BuildOptions& options = {});

// Default interpolation step for pdf_interpolated_alpha; offset keeps the
// perturbed parameters away from integer-difference configurations.
inline constexpr double kDefaultAlphaStep = 1.0 / 64.0 + 1.0 / 1024.0;

// Evaluates the density of family(alpha0) at x through the 4-point
// combination
//   (2/3)[f(a0+h) + f(a0-h)] - (1/6)[f(a0+2h) + f(a0-2h)]
// of origin-series values, an O(h^4) approximation.  Useful when
// family(alpha0) itself is integer-difference (no origin expansion) but the
// perturbed members are Generic.  If a perturbed spec is still
// IntegerDifference the step is rescaled and retried a few times before a
// validation_error is raised.
double pdf_interpolated_alpha(
    const std::function<ProductSpec(double)>& family, double alpha0, double h,
    double x, double tol = 1e-12, int max_terms = kDefaultMaxTerms);

}  // namespace betaprod
