#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace betaprod {

// One factor of the moment sequence prod (u_i)_n / (v_i)_n; equivalently one
// Beta(u, v-u) variable in the product.  Valid factors satisfy v > u > 0.
struct BetaFactor {
  double u = 0.0;
  double v = 0.0;
};

enum class Genericity { Generic, IntegerDifference };

// A validated product specification.  Immutable after construction via
// make_spec; freely shareable across threads.
struct ProductSpec {
  std::vector<BetaFactor> factors;
  double delta = 0.0;  // sum of v_i - u_i; always > 0 for a valid spec
  Genericity genericity = Genericity::Generic;
  // Factor index pairs (i, j), i < j, with u_i - u_j within kIntegerTol of an
  // integer; empty iff genericity == Generic.
  std::vector<std::pair<int, int>> integer_pairs;

  int size() const { return static_cast<int>(factors.size()); }
  double min_u() const;
};

// Validates and classifies a factor list.  Throws validation_error naming the
// first offending factor when some v <= u or u <= 0, or when the list is
// empty.
ProductSpec make_spec(const std::vector<std::pair<double, double>>& pairs);

// n-th moment prod (u_i)_n / (v_i)_n, computed in log space; equals 1 at
// n = 0 and lies in (0, 1] for all n >= 0.
double moment(const ProductSpec& spec, int n);

// The determinant-of-a-random-state family: u = (1, a+1, 2a+1),
// v = (3a+5/4, 3a+3/2, 3a+7/4), so delta = 6a + 3/2.  Throws
// validation_error for alpha <= 0.
ProductSpec state_determinant_spec(double alpha);

// The fixed Macdonald-Mehta-Selberg example, factors
// (1/4, 5/6), (1/2, 1), (3/4, 7/6); delta = 3/2.
ProductSpec mms_spec();

// Parses a comma-separated list of reals ("0.25,0.5,0.75"); used by the CLI
// to read --u/--v values.  Throws validation_error on malformed input.
std::vector<double> parse_real_list(const std::string& text);

}  // namespace betaprod
