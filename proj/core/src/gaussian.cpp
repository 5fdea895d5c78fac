#include "qstaff/gaussian.hpp"

#include <cmath>
#include <numbers>

#include "qstaff/errors.hpp"
#include "root_find.hpp"

namespace qstaff {

namespace {
constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343818684759;
constexpr double kSqrt2 = std::numbers::sqrt2;
}  // namespace

double std_normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double hazard(double gamma) {
  if (gamma <= -8.0) {
    // cdf(gamma)/pdf(gamma) ~ 1/t - 1/t^3 + 3/t^5 - 15/t^7 + ... at t = -gamma.
    // The alternating series is summed until its terms stop decreasing.
    const double t = -gamma;
    const double t2 = t * t;
    double term = 1.0 / t;
    double sum = term;
    double prev = std::abs(term);
    for (int n = 1; n < 64; ++n) {
      term *= -(2.0 * n - 1.0) / t2;
      const double mag = std::abs(term);
      if (mag >= prev) break;
      sum += term;
      prev = mag;
      if (mag < 1e-18 * sum) break;
    }
    return 1.0 / sum;
  }
  return std_normal_pdf(gamma) / std_normal_cdf(gamma);
}

double hazard_prime(double gamma) {
  const double g = hazard(gamma);
  return -g * (gamma + g);
}

HazardPoint hazard_point(double gamma) {
  const double g = hazard(gamma);
  return {gamma, g, -g * (gamma + g)};
}

double h_inf(double gamma) {
  const double g = hazard(gamma);
  return -(gamma * gamma * gamma + (gamma * gamma + 2.0) * g) * g / 3.0;
}

double inverse_hazard(double epsilon) {
  if (!(epsilon > 0.0))
    throw DomainError("inverse_hazard: epsilon must be positive");
  double lo = -40.0, hi = 40.0;
  // hazard is decreasing, so the bracket needs hazard(lo) >= eps >= hazard(hi).
  while (hazard(lo) < epsilon) {
    lo *= 2.0;
    if (lo < -1e15)
      throw ConvergenceError("inverse_hazard: bracket expansion failed");
  }
  // hazard(40) underflows to 0 < epsilon, so the right end always works.
  double ftol = 1e-12;
  if (epsilon < 1.0)
    ftol = 1e-12 * epsilon;  // keeps gamma accurate where the hazard is flat
  else if (epsilon > 1e3)
    ftol = 1e-15 * epsilon;  // double-precision floor for huge targets
  auto f = [epsilon](double x) { return hazard(x) - epsilon; };
  auto res = detail::newton_bisect(f, hazard_prime, lo, hi, 0.5 * (lo + hi),
                                   ftol, 1e-15, 200);
  if (std::abs(res.fx) > ftol)
    throw ConvergenceError("inverse_hazard: residual target not reached");
  return res.x;
}

}  // namespace qstaff
