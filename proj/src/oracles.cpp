#include "betaprod/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>
#include <ostream>
#include <random>
#include <string>

#include "betaprod/errors.hpp"
#include "betaprod/special_functions.hpp"

namespace betaprod {

namespace {

// ---------------------------------------------------------------------------
// Gauss-Legendre rules on [-1, 1], cached per size.

struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const QuadRule& gl_rule(int n) {
  static std::mutex mu;
  static std::vector<QuadRule> cache(20);
  int idx = 0;
  while ((16 << idx) < n) ++idx;
  n = 16 << idx;

  std::lock_guard<std::mutex> lock(mu);
  QuadRule& rule = cache[idx];
  if (!rule.nodes.empty()) return rule;

  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton iteration on the Legendre polynomial from the classic cosine
    // starting guess.
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = -p1 / pp;
      z += dz;
      if (std::fabs(dz) < 1e-15) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = rule.weights[n - 1 - i] =
        2.0 / ((1.0 - z * z) * pp * pp);
  }
  return rule;
}

template <typename F>
double gl_apply(F&& f, double a, double b, int n) {
  const QuadRule& rule = gl_rule(n);
  const double mid = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    sum += rule.weights[i] * f(mid + hw * rule.nodes[i]);
  return sum * hw;
}

// Doubles the node count until two successive estimates agree within
// max(abs_tol, rel_tol * |I|) / 4.  Throws accuracy_error with the last
// estimate when 4096 nodes are not enough.
template <typename F>
double gl_doubling(F&& f, double a, double b, double abs_tol, double rel_tol) {
  double prev = gl_apply(f, a, b, 16);
  for (int n = 32; n <= 4096; n *= 2) {
    const double cur = gl_apply(f, a, b, n);
    const double diff = std::fabs(cur - prev);
    if (diff < 0.25 * std::max(abs_tol, rel_tol * std::fabs(cur))) return cur;
    prev = cur;
  }
  const double cur = gl_apply(f, a, b, 4096);
  throw accuracy_error("quadrature did not reach its accuracy target", cur,
                       std::fabs(cur - prev));
}

// Integrates f over [a, b] where f ~ (x-a)^exp_a * smooth near a and
// (b-x)^exp_b * smooth near b (both exponents > -1): the interval is split
// in half and each side is mapped by a power-law substitution strong enough
// to make the integrand ~ s^5 at the endpoint.
template <typename F>
double integrate_power_endpoints(F&& f, double a, double b, double exp_a,
                                 double exp_b, double abs_tol,
                                 double rel_tol) {
  const double mid = 0.5 * (a + b);
  const double pa = std::max(1.0, 6.0 / (1.0 + exp_a));
  const double pb = std::max(1.0, 6.0 / (1.0 + exp_b));
  const double left = gl_doubling(
      [&](double s) {
        const double sp = std::pow(s, pa);
        return f(a + (mid - a) * sp) * pa * (mid - a) * sp / s;
      },
      0.0, 1.0, 0.5 * abs_tol, rel_tol);
  const double right = gl_doubling(
      [&](double s) {
        const double sp = std::pow(s, pb);
        return f(b - (b - mid) * sp) * pb * (b - mid) * sp / s;
      },
      0.0, 1.0, 0.5 * abs_tol, rel_tol);
  return left + right;
}

// ---------------------------------------------------------------------------
// Beta densities and log-beta.

double log_beta(double a, double b) {
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

// h(alpha, beta; x) = x^(alpha-1) (1-x)^(beta-1) / B(alpha, beta)
double beta_pdf(double alpha, double beta, double x) {
  return std::exp((alpha - 1.0) * std::log(x) +
                  (beta - 1.0) * std::log1p(-x) - log_beta(alpha, beta));
}

// ---------------------------------------------------------------------------
// Deterministic variate generation on top of mt19937_64.

class VariateSource {
 public:
  explicit VariateSource(std::uint64_t seed) : rng_(seed) {}

  double uniform() {  // (0, 1]
    return ((rng_() >> 11) + 1.0) * 0x1.0p-53;
  }

  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  // Marsaglia-Tsang squeeze method; shapes below 1 are boosted through
  // Gamma(shape) = Gamma(shape+1) * U^(1/shape).
  double gamma(double shape) {
    if (shape < 1.0) return gamma(shape + 1.0) * std::pow(uniform(), 1.0 / shape);
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      const double x = normal();
      const double t = 1.0 + c * x;
      if (t <= 0.0) continue;
      const double v = t * t * t;
      const double u = uniform();
      const double x2 = x * x;
      if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
      if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  double beta(double a, double b) {
    const double g1 = gamma(a);
    const double g2 = gamma(b);
    return g1 / (g1 + g2);
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

SampleBatch sample_product(const ProductSpec& spec, std::size_t count,
                           std::uint64_t seed) {
  if (count < 1)
    throw validation_error("sample_product: count must be at least 1");
  VariateSource src(seed);
  SampleBatch batch;
  batch.seed = seed;
  batch.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    double prod = 1.0;
    for (const auto& f : spec.factors) prod *= src.beta(f.u, f.v - f.u);
    batch.values[i] = prod;
  }
  std::sort(batch.values.begin(), batch.values.end());
  return batch;
}

void write_samples(const SampleBatch& batch, std::ostream& out) {
  char buf[40];
  for (double v : batch.values) {
    std::snprintf(buf, sizeof(buf), "%.17g\n", v);
    out << buf;
  }
}

double conv_quadrature(const ProductSpec& spec, double x, double target_abs,
                       int cheb_nodes) {
  if (!(x > 0.0 && x < 1.0))
    throw validation_error("conv_quadrature: x must lie in (0, 1)");
  const int m = spec.size();
  if (target_abs <= 0.0) target_abs = m <= 3 ? 1e-8 : 1e-5;

  const auto factor_pdf = [&](int i, double t) {
    return beta_pdf(spec.factors[i].u, spec.factors[i].v - spec.factors[i].u,
                    t);
  };
  if (m == 1) return factor_pdf(0, x);

  // Running convolution of factors 0..k, represented either in closed form
  // (k = 0) or as a Chebyshev interpolant of its regular part on [x, 1].
  std::function<double(double)> g = [&](double t) { return factor_pdf(0, t); };
  double delta_partial = spec.factors[0].v - spec.factors[0].u;

  for (int k = 1; k < m; ++k) {
    const double beta_k = spec.factors[k].v - spec.factors[k].u;
    const auto convolve_at = [&, k](double t) {
      if (t >= 1.0) return 0.0;
      return integrate_power_endpoints(
          [&](double s) { return g(s) * factor_pdf(k, t / s) / s; }, t, 1.0,
          beta_k - 1.0, delta_partial - 1.0, 1e-14, 1e-10);
    };
    if (k == m - 1) return convolve_at(x);

    // Intermediate stage: interpolate the regular part w(t) =
    // g_k(t) (1-t)^(1-delta_k) on Chebyshev-Lobatto nodes over [x, 1].  At
    // t = 1 the limit is the unit-series prefactor of the partial product.
    const double delta_k = delta_partial + beta_k;
    double log_w1 = -log_gamma(delta_k);
    for (int i = 0; i <= k; ++i)
      log_w1 += log_gamma(spec.factors[i].v) - log_gamma(spec.factors[i].u);
    const double w_at_one = std::exp(log_w1);

    const int n_nodes = std::max(8, cheb_nodes);
    auto nodes = std::make_shared<std::vector<double>>();
    auto values = std::make_shared<std::vector<double>>();
    nodes->resize(n_nodes);
    values->resize(n_nodes);
    for (int j = 0; j < n_nodes; ++j) {
      const double c = std::cos(std::numbers::pi * j / (n_nodes - 1));
      const double t = x + (1.0 - x) * 0.5 * (1.0 + c);
      (*nodes)[j] = t;
      (*values)[j] = (j == 0)
                         ? w_at_one
                         : convolve_at(t) * std::pow(1.0 - t, 1.0 - delta_k);
    }
    g = [nodes, values, delta_k, n_nodes](double t) {
      // Barycentric interpolation on Chebyshev-Lobatto points.
      double num = 0.0, den = 0.0;
      for (int j = 0; j < n_nodes; ++j) {
        const double d = t - (*nodes)[j];
        if (d == 0.0) return (*values)[j] * std::pow(1.0 - t, delta_k - 1.0);
        double w = (j % 2 == 0) ? 1.0 : -1.0;
        if (j == 0 || j == n_nodes - 1) w *= 0.5;
        num += w / d * (*values)[j];
        den += w / d;
      }
      return num / den * std::pow(1.0 - t, delta_k - 1.0);
    };
    delta_partial = delta_k;
  }
  return 0.0;  // unreachable
}

double moment_quadrature(const std::function<double(double)>& pdf, int n,
                         double u_min, double delta, double target) {
  return integrate_power_endpoints(
      [&](double x) { return std::pow(x, n) * pdf(x); }, 0.0, 1.0,
      u_min - 1.0 + n, delta - 1.0, target, 0.0);
}

double ks_statistic(const SampleBatch& batch,
                    const std::function<double(double)>& cdf) {
  const std::size_t n = batch.count();
  if (n == 0) throw validation_error("ks_statistic: empty batch");
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = cdf(batch.values[i]);
    d = std::max(d, std::fabs((i + 1.0) / n - f));
    d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
  }
  return d;
}

LemmaCheck lemma_inttxt_check(double alpha, double beta, double gamma_,
                              double x) {
  if (!(alpha > 0.0 && beta > 0.0 && gamma_ > 0.0))
    throw validation_error("lemma_inttxt_check: parameters must be positive");
  if (!(x > 0.0 && x <= 1.0))
    throw validation_error("lemma_inttxt_check: x must lie in (0, 1]");

  const double one_minus_x = 1.0 - x;
  const double outer = std::pow(one_minus_x, beta + gamma_ - 1.0);

  LemmaCheck out;
  // t = 1 - s + s x turns the integral into
  // (1-x)^(b+g-1) int_0^1 (1 - s(1-x))^(a-g) s^(b-1) (1-s)^(g-1) ds.
  out.lhs = outer * integrate_power_endpoints(
                        [&](double s) {
                          return std::pow(1.0 - s * one_minus_x,
                                          alpha - gamma_) *
                                 std::pow(s, beta - 1.0) *
                                 std::pow(1.0 - s, gamma_ - 1.0);
                        },
                        0.0, 1.0, beta - 1.0, gamma_ - 1.0, 1e-12, 1e-10);
  out.rhs = std::exp(log_beta(beta, gamma_)) * outer *
            gauss_2f1(gamma_ - alpha, beta, beta + gamma_, one_minus_x);
  return out;
}

}  // namespace betaprod
