#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "revprime/constants.hpp"

using namespace revprime;

TEST_CASE("c_g closed values and growth") {
  // cot(pi/4) = 1 kills the log term: C_2 = 1 + 1/sqrt(2)
  CHECK(static_cast<double>(c_g(2)) ==
        doctest::Approx(1.0 + 1.0 / std::sqrt(2.0)).epsilon(1e-14));

  // C_g ~ (2/pi) log g + O(1), monotone growth at sampled points
  long double prev = c_g(2);
  for (std::int64_t g : {4, 16, 256, 65536, 1000000}) {
    long double cur = c_g(g);
    CHECK(cur > prev);
    prev = cur;
  }
  double ratio = static_cast<double>(c_g(1000000)) /
                 (2.0 / 3.14159265358979323846 * std::log(1e6));
  CHECK(ratio > 1.0);
  CHECK(ratio < 1.3);
}

TEST_CASE("C_g > 1 on a dense sample up to 10^6") {
  for (std::int64_t g = 2; g <= 1000; ++g) CHECK(c_g(g) > 1.0L);
  for (std::int64_t g = 1000; g <= 1000000; g += 997) CHECK(c_g(g) > 1.0L);
  CHECK(c_g(1000000) > 1.0L);
}

TEST_CASE("two evaluation routes agree to 1e-12") {
  for (std::int64_t g = 2; g <= 2000; ++g) {
    long double a = c_g(g), b = c_g_alt(g);
    CHECK(std::abs(static_cast<double>(a - b)) <= 1e-12 * static_cast<double>(a));
  }
}

TEST_CASE("alpha_g values at the anchor points") {
  CHECK(static_cast<double>(alpha_g(2)) == doctest::Approx(0.7715533).epsilon(1e-6));
  // the threshold neighborhood
  CHECK(static_cast<double>(alpha_g(31699)) == doctest::Approx(0.1999997).epsilon(1e-6));
  CHECK(alpha_g(31699) < 0.2L);
  CHECK(alpha_g(31699) > 0.1999990L);
  CHECK(alpha_g(31698) >= 0.2L);
  // identity alpha_g log g = log C_g at working precision
  for (std::int64_t g : {2, 10, 31699, 99991}) {
    long double lhs = alpha_g(g) * std::log(static_cast<long double>(g));
    long double rhs = std::log(c_g(g));
    CHECK(std::abs(static_cast<double>(lhs - rhs)) < 1e-17);
  }
}

TEST_CASE("threshold scan: the 31699 boundary and small ranges") {
  auto hit = threshold_scan(2, 100000, 0.2);
  REQUIRE(hit.has_value());
  CHECK(*hit == 31699);

  CHECK_FALSE(threshold_scan(2, 10, 0.2).has_value());
  CHECK(threshold_scan(31699, 100000, 0.2) == 31699);

  // self-consistent check of a looser bound
  auto half = threshold_scan(2, 100, 0.5);
  REQUIRE(half.has_value());
  CHECK(alpha_g(*half) < 0.5L);
  CHECK(alpha_g(*half - 1) >= 0.5L);
  CHECK(*half == 7);
}

TEST_CASE("alpha_g monotonicity from 9 and shrinking margins") {
  BoundCheck small = monotonicity_check(9, 10);
  CHECK(small.pass);

  BoundCheck wide = monotonicity_check(9, 2000);
  CHECK(wide.pass);
  CHECK(wide.slack > 0.0);

  // margins decay towards zero as g grows
  double early = static_cast<double>(alpha_g(10) - alpha_g(11));
  double late = static_cast<double>(alpha_g(1500) - alpha_g(1501));
  CHECK(early > late);
  CHECK(late > 0.0);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(c_g(1), std::domain_error);
  CHECK_THROWS_AS(threshold_scan(50, 10, 0.2), std::domain_error);
  CHECK_THROWS_AS(threshold_scan(2, 10, 1.5), std::domain_error);
  CHECK_THROWS_AS(monotonicity_check(5, 100), std::domain_error);
}
