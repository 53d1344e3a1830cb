#include "betaprod/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "betaprod/errors.hpp"

namespace betaprod {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// How the factors of an m = 2 spec map onto the log-formula parameters
// (u1, n, v1, v2): the lower-u factor supplies (u1, v1).
struct M2LogParams {
  double u1, v1, v2;
  int n;
};

M2LogParams m2_log_params(const ProductSpec& spec) {
  BetaFactor lo = spec.factors[0];
  BetaFactor hi = spec.factors[1];
  if (lo.u > hi.u) std::swap(lo, hi);
  return {lo.u, lo.v, hi.v, static_cast<int>(std::llround(hi.u - lo.u))};
}

}  // namespace

const char* region_name(Region r) {
  switch (r) {
    case Region::Origin:
      return "origin";
    case Region::Unit:
      return "unit";
    case Region::M2Closed:
      return "m2closed";
    case Region::M2Log:
      return "m2log";
  }
  return "?";
}

const OriginExpansion& DensityModel::origin() const {
  if (!origin_)
    throw validation_error("model has no origin expansion for this spec");
  return *origin_;
}

Region DensityModel::small_x_region() const {
  if (origin_) return Region::Origin;
  if (spec_.size() == 2) return Region::M2Log;
  return Region::Unit;
}

EvalResult DensityModel::origin_pdf_result(double x) const {
  try {
    const double v = eval_origin_pdf(*origin_, x, tol_, max_terms_);
    return {v, tol_ * std::fabs(v), Region::Origin};
  } catch (const convergence_error& e) {
    throw convergence_error("pdf in region origin at x = " +
                            std::to_string(x) + ": " + e.what());
  }
}

EvalResult DensityModel::unit_pdf_result(double x) const {
  const SeriesValue sv = eval_unit_pdf_full(unit_, x);
  return {sv.value, sv.est_error, Region::Unit};
}

EvalResult DensityModel::m2_closed_result(double x) const {
  try {
    const double v = m2_closed_pdf(spec_, x, tol_, max_terms_);
    return {v, tol_ * std::fabs(v), Region::M2Closed};
  } catch (const convergence_error& e) {
    throw convergence_error("pdf in region m2closed at x = " +
                            std::to_string(x) + ": " + e.what());
  }
}

EvalResult DensityModel::m2_log_result(double x) const {
  const M2LogParams p = m2_log_params(spec_);
  try {
    const double v = m2_log_pdf(p.u1, p.n, p.v1, p.v2, x, tol_, max_terms_);
    return {v, tol_ * std::fabs(v), Region::M2Log};
  } catch (const pole_error&) {
    // Degenerate gamma/digamma coincidence: the closed form has no
    // integer-difference problem, so fall back to it.
    return m2_closed_result(x);
  } catch (const convergence_error& e) {
    throw convergence_error("pdf in region m2log at x = " + std::to_string(x) +
                            ": " + e.what());
  }
}

EvalResult DensityModel::pdf_endpoint_zero() const {
  const Region region = small_x_region();
  const double min_u = spec_.min_u();
  if (min_u < 1.0 - kIntegerTol) return {kInf, 0.0, region};
  if (min_u > 1.0 + kIntegerTol) return {0.0, 0.0, region};
  int at_min = 0;
  int k_min = 0;
  for (int k = 0; k < spec_.size(); ++k) {
    if (std::fabs(spec_.factors[k].u - min_u) < kIntegerTol) {
      ++at_min;
      k_min = k;
    }
  }
  // A duplicated minimal u produces a -log x divergence at 0.
  if (at_min > 1) return {kInf, 0.0, region};
  return {origin_branch_constant(spec_, k_min).value(), 0.0, region};
}

EvalResult DensityModel::pdf_at(double x) const {
  if (!(x >= 0.0 && x <= 1.0))
    throw validation_error("pdf: x must lie in [0, 1]");
  if (x == 0.0) return pdf_endpoint_zero();
  if (x >= crossover_ || x == 1.0) return unit_pdf_result(x);

  if (spec_.size() == 2) {
    if (x < kSmallXCut)
      return origin_ ? origin_pdf_result(x) : m2_log_result(x);
    return m2_closed_result(x);
  }
  if (origin_ && !(origin_->ill_conditioned && x >= kSmallXCut))
    return origin_pdf_result(x);
  return unit_pdf_result(x);
}

EvalResult DensityModel::cdf_at(double x) const {
  if (!(x >= 0.0 && x <= 1.0))
    throw validation_error("cdf: x must lie in [0, 1]");
  if (x == 0.0) return {0.0, 0.0, small_x_region()};
  if (x == 1.0) return {1.0, 0.0, Region::Unit};
  if (x < crossover_ && origin_ &&
      !(origin_->ill_conditioned && x >= kSmallXCut)) {
    try {
      const double v = eval_origin_cdf(*origin_, x, tol_, max_terms_);
      return {v, tol_ * std::fabs(v), Region::Origin};
    } catch (const convergence_error& e) {
      throw convergence_error("cdf in region origin at x = " +
                              std::to_string(x) + ": " + e.what());
    }
  }
  const SeriesValue sv = eval_unit_cdf_full(unit_, x);
  return {sv.value, sv.est_error, Region::Unit};
}

double DensityModel::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0))
    throw validation_error("quantile: p must lie in (0, 1)");
  double lo = 0.0;
  double hi = 1.0;
  double mid = 0.5;
  for (int it = 0; it < 1100; ++it) {
    mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // no representable midpoint left
    const double f = cdf(mid);
    if (hi - lo <= 1e-12 && std::fabs(f - p) <= 1e-10) break;
    if (f < p)
      lo = mid;
    else
      hi = mid;
  }
  return mid;
}

void DensityModel::corrupt_unit_coefficient_for_testing(
    double rel_perturbation) {
  if (unit_.coeffs.size() > 1)
    unit_.coeffs[1] *= 1.0 + rel_perturbation;
}

DensityModel build_model(const ProductSpec& spec, const BuildOptions& options) {
  DensityModel model;
  model.spec_ = spec;
  model.tol_ = options.tol;
  model.max_terms_ = options.max_terms;
  model.m2_path_ = spec.size() == 2 ? M2Path::Closed : M2Path::None;

  if (spec.genericity == Genericity::Generic) {
    try {
      model.origin_ = build_origin(spec);
    } catch (const pole_error&) {
      // Leading-constant pole (some v_j - u_k a non-positive integer): fall
      // back to unit-series-only evaluation.
      model.origin_.reset();
    }
  }

  int n_coeffs = options.n_coeffs;
  if (n_coeffs <= 0) n_coeffs = model.origin_ ? 64 : 600;
  model.unit_ = build_unit(spec, n_coeffs);

  // Continuity policy: the active small-x path must agree with the unit
  // series at the crossover; otherwise scan for the best split.
  const bool has_left_path = model.origin_.has_value() || spec.size() == 2;
  const auto mismatch_at = [&](double c) {
    const double left = spec.size() == 2
                            ? m2_closed_pdf(spec, c, options.tol,
                                            options.max_terms)
                            : eval_origin_pdf(*model.origin_, c, options.tol,
                                              options.max_terms);
    const double right = eval_unit_pdf_full(model.unit_, c).value;
    return std::fabs(left - right) /
           std::max(std::fabs(right), 1e-300);
  };
  const auto scan_crossover = [&]() {
    double best_c = 0.55;
    double best_m = kInf;
    for (int i = 0; i <= 7; ++i) {
      const double c = 0.35 + 0.05 * i;
      const double m = mismatch_at(c);
      if (m < best_m) {
        best_m = m;
        best_c = c;
      }
    }
    return best_c;
  };

  model.crossover_ = options.crossover;
  if (has_left_path) {
    if (options.crossover_auto) {
      model.crossover_ = scan_crossover();
    } else if (mismatch_at(model.crossover_) > 1e-7) {
      model.crossover_ = scan_crossover();
    }
  }
  return model;
}

double pdf_interpolated_alpha(
    const std::function<ProductSpec(double)>& family, double alpha0, double h,
    double x, double tol, int max_terms) {
  for (int attempt = 0; attempt < 4; ++attempt) {
    const double offsets[4] = {h, -h, 2.0 * h, -2.0 * h};
    const double weights[4] = {2.0 / 3.0, 2.0 / 3.0, -1.0 / 6.0, -1.0 / 6.0};
    ProductSpec specs[4];
    bool all_generic = true;
    for (int i = 0; i < 4; ++i) {
      specs[i] = family(alpha0 + offsets[i]);
      if (specs[i].genericity != Genericity::Generic) {
        all_generic = false;
        break;
      }
    }
    if (!all_generic) {
      h *= 1.2360679774997896;  // sqrt(5) - 1; keeps retries off integers
      continue;
    }
    double value = 0.0;
    for (int i = 0; i < 4; ++i) {
      const OriginExpansion exp = build_origin(specs[i]);
      value += weights[i] * eval_origin_pdf(exp, x, tol, max_terms);
    }
    return value;
  }
  throw validation_error(
      "pdf_interpolated_alpha: perturbed specs remained integer-difference "
      "after step rescaling");
}

}  // namespace betaprod
