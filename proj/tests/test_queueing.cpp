#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "bwshare/queueing.hpp"

using bwshare::pooling_gain;
using bwshare::QueueParams;
using bwshare::success_probability;

// Expected values below were frozen from a 50-digit evaluation of the
// closed forms before this implementation existed.

TEST_CASE("success probability at zero intensity") {
  CHECK(std::abs(success_probability({1.0, 0.0, 1.0}) - 0.63212055882855768) < 1e-12);
}

TEST_CASE("success probability at unit intensity uses the analytic limit") {
  CHECK(success_probability({1.0, 1.0, 1.0}) == doctest::Approx(0.5).epsilon(1e-14));
  // continuity across the switchover band
  for (double eps : {1e-8, -1e-8, 1e-7, -1e-7})
    CHECK(std::abs(success_probability({1.0, 1.0 + eps, 1.0}) - 0.5) < 1e-6);
  for (double mu : {0.3, 1.0, 2.5})
    for (double d : {0.2, 1.0, 7.0}) {
      const double limit = mu * d / (1.0 + mu * d);
      CHECK(std::abs(success_probability({mu, 1.0 + 1e-8, d}) - limit) < 1e-6);
      CHECK(std::abs(success_probability({mu, 1.0 - 1e-8, d}) - limit) < 1e-6);
    }
}

TEST_CASE("success probability mid intensity") {
  CHECK(std::abs(success_probability({1.0, 0.5, 1.0}) - 0.56473340160641615) < 1e-12);
  CHECK(std::abs(success_probability({1.7, 0.3, 2.5}) - 0.96371105900087183) < 1e-12);
}

TEST_CASE("overloaded queue branch is stable") {
  CHECK(std::abs(success_probability({1.0, 2.0, 1.0}) - 0.38730016321971796) < 1e-12);
  // extreme deadline: saturates to 1/rho without overflow
  CHECK(std::abs(success_probability({1.0, 2.0, 1000.0}) - 0.5) < 1e-12);
  CHECK(std::abs(success_probability({3.0, 4.0, 500.0}) - 0.25) < 1e-12);
  // very light load with a huge deadline saturates to 1
  CHECK(success_probability({1.0, 0.1, 1e5}) == doctest::Approx(1.0));
}

TEST_CASE("success probability bounds and monotonicity") {
  for (double mu : {0.2, 1.0, 3.0})
    for (double d : {0.1, 1.0, 4.0}) {
      double prev = 2.0;
      for (double rho = 0.0; rho <= 2.001; rho += 0.05) {
        const double p = success_probability({mu, rho, d});
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
        CHECK(p <= prev + 1e-12);  // non-increasing in intensity
        prev = p;
      }
      double prev_d = -1.0;
      for (double dd = 0.1; dd <= 10.0; dd += 0.3) {
        const double p = success_probability({mu, 0.8, dd});
        CHECK(p >= prev_d - 1e-12);  // non-decreasing in deadline
        prev_d = p;
      }
    }
}

TEST_CASE("pooling gain at zero intensity equals the closed form") {
  // (1 - e^{-2}) / (1 - e^{-1}) - 1 = e^{-1}
  CHECK(std::abs(pooling_gain({1.0, 0.0, 1.0}) - 0.36787944117144232) < 1e-12);
}

TEST_CASE("pooling gain shrinks for long deadlines") {
  double prev = 1e300;
  for (int i = 1; i <= 20; ++i) {
    const double d = 0.5 * i;
    const double g = pooling_gain({1.0, 0.9, d});
    CHECK(g < prev);  // strictly decreasing on this grid
    prev = g;
  }
  CHECK(pooling_gain({1.0, 0.5, 50.0}) < 1e-6);  // gain vanishes as D grows
}

TEST_CASE("pooling never hurts") {
  for (double mu : {0.3, 1.0, 2.0})
    for (double rho : {0.0, 0.3, 0.9, 1.0, 1.4})
      for (double d : {0.1, 0.7, 2.0, 9.0})
        CHECK(pooling_gain({mu, rho, d}) >= -1e-15);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(success_probability({0.0, 0.5, 1.0}), std::domain_error);
  CHECK_THROWS_AS(success_probability({1.0, -0.1, 1.0}), std::domain_error);
  CHECK_THROWS_AS(success_probability({1.0, 0.5, 0.0}), std::domain_error);
  CHECK_THROWS_AS(success_probability({std::nan(""), 0.5, 1.0}), std::domain_error);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(success_probability({1.0, inf, 1.0}), std::domain_error);
  CHECK_THROWS_AS(pooling_gain({1.0, 0.5, -1.0}), std::domain_error);
}
