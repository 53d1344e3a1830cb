#include "betaprod/model.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "betaprod/errors.hpp"
#include "doctest.h"
#include "testutil.hpp"

using namespace betaprod;

TEST_CASE("make_spec validates and classifies") {
  const auto uniform = make_spec({{1.0, 2.0}});
  CHECK(uniform.size() == 1);
  CHECK(uniform.delta == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(uniform.genericity == Genericity::Generic);

  const auto mms = mms_spec();
  CHECK(mms.size() == 3);
  CHECK(mms.delta == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(mms.genericity == Genericity::Generic);

  const auto intdiff = make_spec({{1.0, 2.0}, {2.0, 3.0}});
  CHECK(intdiff.genericity == Genericity::IntegerDifference);
  REQUIRE(intdiff.integer_pairs.size() == 1);
  CHECK(intdiff.integer_pairs[0] == std::make_pair(0, 1));

  CHECK_THROWS_AS(make_spec({}), validation_error);
  CHECK_THROWS_WITH_AS(make_spec({{1.0, 2.0}, {3.0, 2.5}}),
                       doctest::Contains("factor 2"), validation_error);
  CHECK_THROWS_AS(make_spec({{0.0, 1.0}}), validation_error);
  CHECK_THROWS_AS(make_spec({{-1.0, 2.0}}), validation_error);
}

TEST_CASE("moment values") {
  const auto uniform = make_spec({{1.0, 2.0}});
  CHECK(moment(uniform, 0) == 1.0);
  CHECK(moment(uniform, 1) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(moment(mms_spec(), 1) ==
        doctest::Approx(27.0 / 280.0).epsilon(1e-13));
  CHECK(moment(mms_spec(), 0) == 1.0);
}

TEST_CASE("moment monotonicity and ratio identity") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const auto spec = testutil::random_generic_spec(rng, 1 + trial % 4);
    double prev = moment(spec, 0);
    for (int n = 1; n <= 20; ++n) {
      const double cur = moment(spec, n);
      CHECK(cur < prev);
      CHECK(cur > 0.0);
      double ratio = 1.0;
      for (const auto& f : spec.factors)
        ratio *= (f.u + n - 1.0) / (f.v + n - 1.0);
      CHECK(std::fabs(cur / prev - ratio) <= 1e-13 * ratio);
      prev = cur;
    }
  }
}

TEST_CASE("factor order does not matter") {
  std::mt19937_64 rng(77);
  const auto spec = testutil::random_generic_spec(rng, 4);
  std::vector<std::pair<double, double>> pairs;
  for (const auto& f : spec.factors) pairs.emplace_back(f.u, f.v);
  std::shuffle(pairs.begin(), pairs.end(), rng);
  const auto shuffled = make_spec(pairs);
  CHECK(shuffled.delta == doctest::Approx(spec.delta).epsilon(1e-15));
  CHECK(shuffled.genericity == spec.genericity);
  for (int n = 0; n <= 12; ++n)
    CHECK(moment(shuffled, n) ==
          doctest::Approx(moment(spec, n)).epsilon(1e-13));
}

TEST_CASE("state_determinant_spec") {
  const auto half = state_determinant_spec(0.5);
  CHECK(half.factors[0].u == doctest::Approx(1.0));
  CHECK(half.factors[1].u == doctest::Approx(1.5));
  CHECK(half.factors[2].u == doctest::Approx(2.0));
  CHECK(half.factors[0].v == doctest::Approx(2.75));
  CHECK(half.factors[1].v == doctest::Approx(3.0));
  CHECK(half.factors[2].v == doctest::Approx(3.25));
  CHECK(half.genericity == Genericity::IntegerDifference);
  CHECK(half.delta == doctest::Approx(4.5).epsilon(1e-14));

  const auto one = state_determinant_spec(1.0);
  CHECK(one.delta == doctest::Approx(7.5).epsilon(1e-14));
  CHECK(one.factors[2].u == doctest::Approx(3.0));
  CHECK(one.genericity == Genericity::IntegerDifference);

  const auto generic = state_determinant_spec(0.3);
  CHECK(generic.delta == doctest::Approx(3.3).epsilon(1e-14));
  CHECK(generic.genericity == Genericity::Generic);

  CHECK_THROWS_AS(state_determinant_spec(0.0), validation_error);
  CHECK_THROWS_AS(state_determinant_spec(-1.0), validation_error);
}

TEST_CASE("parse_real_list") {
  const auto v = parse_real_list("0.25,0.5,0.75");
  REQUIRE(v.size() == 3);
  CHECK(v[1] == 0.5);
  CHECK(parse_real_list("3")[0] == 3.0);
  CHECK_THROWS_AS(parse_real_list("a,b"), validation_error);
  CHECK_THROWS_AS(parse_real_list(""), validation_error);
  CHECK_THROWS_AS(parse_real_list("1.0x"), validation_error);
}
