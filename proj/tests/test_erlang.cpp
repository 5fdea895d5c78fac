#include <cmath>
#include <vector>

#include "doctest.h"
#include "qstaff/erlang.hpp"
#include "qstaff/errors.hpp"
#include "qstaff/gaussian.hpp"
#include "support/oracles.hpp"

using namespace qstaff;

TEST_SUITE_BEGIN("erlang");

TEST_CASE("blocking probability basics") {
  CHECK(erlang_b(1, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(erlang_b(10, 0.0) == 0.0);
  CHECK(std::abs(erlang_b(100, 100.0) - 0.07570045271086097) < 1e-15);
  CHECK_THROWS_AS(erlang_b(0, 1.0), DomainError);
  CHECK_THROWS_AS(erlang_b(3, -1.0), DomainError);
}

TEST_CASE("recursion matches direct summation across the range") {
  for (int s : {1, 2, 5, 17, 40, 85, 170}) {
    for (double mult : {0.2, 0.5, 0.8, 1.0, 1.3, 2.0}) {
      const double lambda = mult * s;
      if (lambda == 0.0) continue;
      const double direct = oracle::erlang_b_direct(s, lambda);
      CHECK(std::abs(erlang_b(s, lambda) - direct) < 1e-12);
    }
  }
}

TEST_CASE("delay probability") {
  CHECK(erlang_c(1, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(erlang_c(100, 100.0 - 1e-9) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::abs(erlang_c(100, 90.0) - oracle::erlang_c_direct(100, 90.0)) <
        1e-12);
  // the algebraic continuation past s stays consistent with the same formula
  CHECK(std::abs(erlang_c(10, 14.0) - oracle::erlang_c_direct(10, 14.0)) <
        1e-12);
  CHECK_THROWS_AS(erlang_c(10, 0.0), DomainError);
}

TEST_CASE("scaled coordinates") {
  CHECK(scaled_loss_prob(100, 10.0) == 0.0);
  CHECK(scaled_loss_rate(100, 10.0) == 0.0);
  CHECK(scaled_loss_rate(1, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
  // two-term expansion check at gamma = 0, s = 100
  CHECK(std::abs(scaled_loss_prob(100, 0.0) - (hazard(0.0) + h_inf(0.0) / 10.0)) <
        2e-3);
  CHECK_THROWS_AS(scaled_loss_prob(100, 10.5), DomainError);
}

TEST_CASE("system load bookkeeping") {
  const SystemLoad a = SystemLoad::from_lambda(100, 84.0);
  CHECK(a.gamma == doctest::Approx(1.6).epsilon(1e-15));
  const SystemLoad b = SystemLoad::from_gamma(100, 1.6);
  CHECK(b.lambda == doctest::Approx(84.0).epsilon(1e-15));
  CHECK_THROWS_AS(SystemLoad::from_lambda(0, 1.0), DomainError);
  CHECK_THROWS_AS(SystemLoad::from_lambda(10, -1.0), DomainError);
  CHECK_THROWS_AS(SystemLoad::from_gamma(100, 10.5), DomainError);
}

TEST_CASE("first-order scaled expansion has a bounded constant") {
  // sqrt(s) * |B^{-1}/sqrt(s) - 1/hazard| should stay bounded as s doubles
  for (double gamma : {-1.0, 0.0, 1.0, 2.0}) {
    std::vector<double> err;
    for (int s = 100; s <= 6400; s *= 2) {
      const double rs = std::sqrt(static_cast<double>(s));
      const double invb = 1.0 / erlang_b(s, s - gamma * rs);
      err.push_back(rs * std::abs(invb / rs - 1.0 / hazard(gamma)));
    }
    double lo = err[0], hi = err[0];
    for (double e : err) {
      lo = std::min(lo, e);
      hi = std::max(hi, e);
    }
    CHECK(hi / lo < 3.0);
  }
}

TEST_CASE("second-order scaled expansion has a bounded constant") {
  // s * |sqrt(s) B - hazard - h_inf/sqrt(s)| stays bounded as s doubles; a
  // wrong correction term would make it grow like sqrt(s), i.e. 8x over this
  // range. Near gamma = 2 the third-order constant crosses zero, so only
  // boundedness is asserted there, not a tight band.
  for (double gamma : {-1.0, 0.0, 1.0, 2.0}) {
    std::vector<double> err;
    for (int s = 100; s <= 6400; s *= 2) {
      const double rs = std::sqrt(static_cast<double>(s));
      const double gs = scaled_loss_prob(s, gamma);
      err.push_back(s * std::abs(gs - hazard(gamma) - h_inf(gamma) / rs));
    }
    double lo = err[0], hi = err[0];
    for (double e : err) {
      lo = std::min(lo, e);
      hi = std::max(hi, e);
    }
    CHECK(hi < 5.0);
    if (gamma < 2.0) CHECK(hi / lo < 3.0);
  }
}

TEST_CASE("scaled loss rate is decreasing while its shifted form increases") {
  const int s = 64;
  const double rs = 8.0;
  double prev_f = scaled_loss_rate(s, -6.0);
  double prev_shift = -6.0 + prev_f;
  for (int i = 1; i <= 512; ++i) {
    const double gamma = -6.0 + (rs + 6.0) * i / 512.0;
    const double f = scaled_loss_rate(s, gamma);
    CHECK(f < prev_f + 1e-12);
    CHECK(gamma + f > prev_shift - 1e-12);
    prev_f = f;
    prev_shift = gamma + f;
  }
}

TEST_SUITE_END();
