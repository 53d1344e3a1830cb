#include "betaprod/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "betaprod/errors.hpp"
#include "betaprod/special_functions.hpp"

namespace betaprod {

double ProductSpec::min_u() const {
  double m = factors.front().u;
  for (const auto& f : factors) m = std::min(m, f.u);
  return m;
}

ProductSpec make_spec(const std::vector<std::pair<double, double>>& pairs) {
  if (pairs.empty())
    throw validation_error("make_spec: factor list must not be empty");

  ProductSpec spec;
  spec.factors.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [u, v] = pairs[i];
    if (!(u > 0.0))
      throw validation_error("make_spec: factor " + std::to_string(i + 1) +
                             " has u = " + std::to_string(u) +
                             "; require u > 0");
    if (!(v > u))
      throw validation_error("make_spec: factor " + std::to_string(i + 1) +
                             " has v = " + std::to_string(v) +
                             " <= u = " + std::to_string(u) +
                             "; require v > u");
    spec.factors.push_back({u, v});
    spec.delta += v - u;
  }

  const int m = spec.size();
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (near_integer(spec.factors[i].u - spec.factors[j].u))
        spec.integer_pairs.emplace_back(i, j);
    }
  }
  spec.genericity = spec.integer_pairs.empty() ? Genericity::Generic
                                               : Genericity::IntegerDifference;
  return spec;
}

double moment(const ProductSpec& spec, int n) {
  if (n < 0) throw validation_error("moment: order must be non-negative");
  if (n == 0) return 1.0;
  double log_m = 0.0;
  for (const auto& f : spec.factors) {
    log_m += log_gamma(f.u + n) - log_gamma(f.u) - log_gamma(f.v + n) +
             log_gamma(f.v);
  }
  return std::exp(log_m);
}

ProductSpec state_determinant_spec(double alpha) {
  if (!(alpha > 0.0))
    throw validation_error("state_determinant_spec: alpha must be positive");
  ProductSpec spec = make_spec({{1.0, 3.0 * alpha + 1.25},
                                {alpha + 1.0, 3.0 * alpha + 1.5},
                                {2.0 * alpha + 1.0, 3.0 * alpha + 1.75}});
  // delta telescopes to 6*alpha + 3/2.
  return spec;
}

ProductSpec mms_spec() {
  return make_spec({{0.25, 5.0 / 6.0}, {0.5, 1.0}, {0.75, 7.0 / 6.0}});
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      double v = std::stod(item, &pos);
      while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
      if (pos != item.size()) throw std::invalid_argument(item);
      values.push_back(v);
    } catch (const std::exception&) {
      throw validation_error("could not parse '" + item + "' as a real number");
    }
  }
  if (values.empty())
    throw validation_error("empty list where comma-separated reals expected");
  return values;
}

}  // namespace betaprod
