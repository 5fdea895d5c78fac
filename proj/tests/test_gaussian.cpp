#include <cmath>

#include "doctest.h"
#include "qstaff/errors.hpp"
#include "qstaff/gaussian.hpp"
#include "support/oracles.hpp"

using namespace qstaff;

namespace {
double rel_err(double value, double reference) {
  return std::abs(value - reference) / std::abs(reference);
}
}  // namespace

TEST_SUITE_BEGIN("gaussian");

TEST_CASE("density values") {
  CHECK(rel_err(std_normal_pdf(0.0), 0.3989422804014327) < 1e-12);
  CHECK(rel_err(std_normal_pdf(1.0), 0.2419707245191434) < 1e-12);
  CHECK(std_normal_pdf(-1.0) == std_normal_pdf(1.0));
}

TEST_CASE("distribution values and tail accuracy") {
  CHECK(std_normal_cdf(0.0) == 0.5);
  // frozen high-precision references; the lower tail must hold *relative*
  // accuracy, not merely absolute
  CHECK(rel_err(std_normal_cdf(-8.0), 6.220960574271784e-16) < 1e-12);
  CHECK(std::abs(1.0 - std_normal_cdf(8.0) - 6.220960574271784e-16) < 1e-16);
  for (double x : {-6.0, -2.0, -0.5, 0.0, 0.5, 2.0, 6.0})
    CHECK(std_normal_cdf(x) < std_normal_cdf(x + 1e-3));
}

TEST_CASE("hazard pinned values") {
  CHECK(rel_err(hazard(0.0), 0.7978845608028654) < 1e-14);
  CHECK(std::abs(hazard(2.7164) - 0.0100) < 1e-4);
  CHECK(std::abs(hazard(2.7164) - 0.0100012244309338) < 1e-13);
}

TEST_CASE("hazard far-left series matches the independent expansion") {
  // the reference expansion stops at 1/t^7, so grant it its own O(1/t^10)
  // truncation error
  for (double g : {-10.0, -15.0, -30.0, -60.0, -200.0}) {
    const double trunc = 1500.0 * std::pow(-g, -10.0);
    CHECK(rel_err(hazard(g), oracle::hazard_far_left(g)) < 1e-12 + trunc);
  }
  CHECK(std::abs(hazard(-30.0) - 30.0333) < 1e-4);
  // the two evaluation branches agree at the switch point
  CHECK(rel_err(hazard(-8.0 - 1e-12), hazard(-8.0 + 1e-12)) < 1e-12);
}

TEST_CASE("hazard is strictly decreasing on a dense grid") {
  double prev = hazard(-10.0);
  for (int i = 1; i <= 512; ++i) {
    const double x = -10.0 + 20.0 * i / 512.0;
    const double cur = hazard(x);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("derivative identity holds to near machine precision") {
  for (double x : {-7.5, -3.0, -1.0, 0.0, 0.7, 2.7164, 5.0, 9.0}) {
    const double g = hazard(x);
    const double lhs = hazard_prime(x) + g * (x + g);
    CHECK(std::abs(lhs) <= 1e-12 * std::abs(hazard_prime(x)));
  }
  CHECK(rel_err(hazard_prime(0.0), -0.6366197723675814) < 1e-14);
  CHECK(std::abs(hazard_prime(2.7164) - (-0.027264)) < 1e-5);
}

TEST_CASE("hazard points bundle value and derivative consistently") {
  for (double x : {-9.0, -1.0, 0.0, 2.7164, 6.0}) {
    const HazardPoint pt = hazard_point(x);
    CHECK(pt.gamma == x);
    CHECK(pt.value == hazard(x));
    CHECK(pt.value > 0.0);
    CHECK(pt.derivative < 0.0);
    CHECK(pt.derivative == -pt.value * (pt.gamma + pt.value));
  }
}

TEST_CASE("derivative matches central differences at O(h^2)") {
  for (double x : {-4.0, -1.0, 0.3, 2.0, 6.0}) {
    for (double h : {1e-3, 1e-4}) {
      const double fd = (hazard(x + h) - hazard(x - h)) / (2.0 * h);
      CHECK(std::abs(hazard_prime(x) - fd) < 10.0 * h * h);
    }
  }
}

TEST_CASE("correction term values") {
  CHECK(rel_err(h_inf(0.0), -0.4244131815783876) < 1e-14);
  CHECK(rel_err(h_inf(2.7164), -0.06713372158841621) < 1e-12);
  CHECK(std::abs(h_inf(40.0)) < 1e-200);  // decays with the hazard
}

TEST_CASE("inverse hazard hits the dimensioning constants") {
  CHECK(std::abs(inverse_hazard(0.010) - 2.7164) < 5e-4);
  CHECK(std::abs(inverse_hazard(0.100) - 1.6912) < 5e-4);
  CHECK(std::abs(inverse_hazard(std::sqrt(2.0 / 3.14159265358979323846))) <
        1e-11);
}

TEST_CASE("inverse hazard round trip") {
  for (int i = 0; i <= 40; ++i) {
    const double x = -5.0 + 10.0 * i / 40.0;
    CHECK(std::abs(inverse_hazard(hazard(x)) - x) < 1e-9);
  }
}

TEST_CASE("inverse hazard residual contract") {
  for (double eps : {1e-6, 1e-3, 0.05, 0.5, 2.0, 15.0, 80.0}) {
    const double x = inverse_hazard(eps);
    const double tol = eps < 1.0 ? 1e-12 * eps : 1e-12;
    CHECK(std::abs(hazard(x) - eps) < tol);
  }
}

TEST_CASE("inverse hazard rejects non-positive targets") {
  CHECK_THROWS_AS(inverse_hazard(0.0), DomainError);
  CHECK_THROWS_AS(inverse_hazard(-1.0), DomainError);
}

TEST_SUITE_END();
