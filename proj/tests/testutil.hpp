#pragma once

#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "betaprod/model.hpp"

namespace testutil {

// Draws a Generic spec with comfortable margins: u in (0.15, 3), gaps v - u
// in (0.2, 2.2).  u-differences stay at least `margin` away from integers
// and every v_j - u_k stays away from non-positive integers, so the origin
// branch constants are well-conditioned.
inline betaprod::ProductSpec random_generic_spec(std::mt19937_64& rng, int m,
                                                 double margin = 0.05) {
  std::uniform_real_distribution<double> u_dist(0.15, 3.0);
  std::uniform_real_distribution<double> gap_dist(0.2, 2.2);
  for (;;) {
    std::vector<std::pair<double, double>> pairs;
    std::vector<double> us;
    bool ok = true;
    for (int i = 0; i < m && ok; ++i) {
      const double u = u_dist(rng);
      for (double prev : us) {
        const double d = u - prev;
        if (std::fabs(d - std::round(d)) < margin) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
      us.push_back(u);
      pairs.emplace_back(u, u + gap_dist(rng));
    }
    if (!ok) continue;
    auto spec = betaprod::make_spec(pairs);
    bool margins_ok = true;
    for (int k = 0; k < m && margins_ok; ++k) {
      for (int j = 0; j < m; ++j) {
        if (j == k) continue;
        const double d = spec.factors[j].v - spec.factors[k].u;
        if (d < margin ||
            (std::fabs(d - std::round(d)) < margin && std::round(d) <= 0.0)) {
          margins_ok = false;
          break;
        }
      }
    }
    if (!margins_ok) continue;
    if (spec.genericity == betaprod::Genericity::Generic) return spec;
  }
}

// An m = 2 spec whose u-difference is exactly the integer n.
inline betaprod::ProductSpec random_integer_diff_spec(std::mt19937_64& rng,
                                                      int n) {
  std::uniform_real_distribution<double> u_dist(0.2, 1.8);
  std::uniform_real_distribution<double> gap_dist(0.25, 2.0);
  const double u1 = u_dist(rng);
  return betaprod::make_spec(
      {{u1, u1 + gap_dist(rng)}, {u1 + n, u1 + n + gap_dist(rng)}});
}

}  // namespace testutil
