#include "qstaff/retrials.hpp"

#include <cmath>

#include "qstaff/erlang.hpp"
#include "qstaff/errors.hpp"
#include "qstaff/gaussian.hpp"
#include "root_find.hpp"

namespace qstaff {

namespace {

// d/dgamma of the policy-free scaled loss rate, in terms of itself:
//   f_s'(gamma) = -g_s(gamma) * (gamma + f_s(gamma) + 1/sqrt(s)).
double scaled_loss_rate_prime(int servers, double gamma) {
  const double rs = std::sqrt(static_cast<double>(servers));
  const double gs = scaled_loss_prob(servers, gamma);
  const double fs = (1.0 - gamma / rs) * gs;
  return -gs * (gamma + fs + 1.0 / rs);
}

// Scaled rejection rate and its gamma-derivative via the factorized form
//   f^R = f_s * (1 - gamma H / sqrt(s)) / (1 + f_s H / sqrt(s)).
double rejection_rate_prime(int servers, double gamma, const Policy& policy) {
  const double rs = std::sqrt(static_cast<double>(servers));
  const double gs = scaled_loss_prob(servers, gamma);
  const double fs = (1.0 - gamma / rs) * gs;
  const double fsp = scaled_loss_rate_prime(servers, gamma);
  const double H = policy.qed_transform(servers, gamma);
  const double Hp = policy.qed_transform_prime(servers, gamma);
  const double N = 1.0 - gamma * H / rs;
  const double Np = -(H + gamma * Hp) / rs;
  const double D = 1.0 + fs * H / rs;
  const double Dp = (fsp * H + fs * Hp) / rs;
  return fsp * N / D + fs * (Np * D - N * Dp) / (D * D);
}

}  // namespace

CohenSolution solve_cohen_gamma(int servers, double gamma, const Policy& policy) {
  const double rs = std::sqrt(static_cast<double>(servers));
  if (servers < 1) throw DomainError("solve_cohen: server count must be positive");
  if (gamma > rs) throw DomainError("solve_cohen: gamma above sqrt(s)");
  const PolicyProfile prof = policy.profile(servers);

  auto rejection_rate = [&](double g) {
    return qed_measures(servers, g, policy).rejection_rate;
  };
  auto m = [&](double a) { return rejection_rate(gamma - a) - a; };
  auto mp = [&](double a) {
    return -rejection_rate_prime(servers, gamma - a, policy) - 1.0;
  };

  CohenSolution sol;
  sol.gamma = gamma;
  const double m0 = rejection_rate(gamma);
  if (m0 == 0.0) {
    // no rejections at all (delay policy): the fixed point is zero
    sol.residual = 0.0;
    return sol;
  }

  const double safe = 1e-9 * rs;
  double hi;
  if (std::isfinite(prof.gamma_floor)) {
    hi = gamma - prof.gamma_floor - safe;
    if (!(hi > 0.0) || m(hi) >= 0.0)
      throw ConvergenceError(
          "solve_cohen: no fixed point in the solvable range");
  } else {
    hi = std::max(1.0, 2.0 * m0);
    while (m(hi) > 0.0) {
      hi *= 2.0;
      if (hi > 1e9 * (rs + std::abs(gamma)))
        throw ConvergenceError(
            "solve_cohen: no fixed point in the solvable range");
    }
  }

  double start = 0.5 * hi;
  if (gamma > 0.0) {
    const double guess = solve_cohen_limit(gamma);
    if (guess > 0.0 && guess < hi) start = guess;
  }

  auto res = detail::newton_bisect(m, mp, 0.0, hi, start, 1e-13, 1e-15, 200);
  sol.a = res.x;
  sol.omega = res.x * rs;
  sol.residual = std::abs(res.fx);
  sol.iterations = res.iterations;
  // the tolerance scales once the fixed point outgrows double granularity
  if (sol.residual > 1e-10 * std::max(1.0, sol.a))
    throw ConvergenceError("solve_cohen: residual target not reached");
  if (std::isfinite(prof.lambda_cap) &&
      servers - gamma * rs + sol.omega >= prof.lambda_cap)
    throw ConvergenceError("solve_cohen: solution escaped the stable range");
  return sol;
}

CohenSolution solve_cohen(int servers, double lambda, const Policy& policy) {
  if (!(lambda > 0.0) || lambda >= servers)
    throw DomainError("solve_cohen: load must lie in (0, s)");
  const double rs = std::sqrt(static_cast<double>(servers));
  return solve_cohen_gamma(servers, (servers - lambda) / rs, policy);
}

double solve_cohen_limit(double gamma) {
  if (!(gamma > 0.0)) throw DomainError("solve_cohen_limit: gamma must be positive");
  auto m = [gamma](double a) { return hazard(gamma - a) - a; };
  auto mp = [gamma](double a) { return -hazard_prime(gamma - a) - 1.0; };
  const double m0 = hazard(gamma);
  if (m0 == 0.0) return 0.0;  // hazard underflowed: the fixed point is ~0
  double hi = std::max(1.0, 2.0 * m0);
  while (m(hi) > 0.0) {
    hi *= 2.0;
    if (hi > 1e12) throw ConvergenceError("solve_cohen_limit: no bracket found");
  }
  auto res = detail::newton_bisect(m, mp, 0.0, hi, m0, 1e-13, 1e-15, 200);
  if (std::abs(res.fx) > 1e-12 * std::max(1.0, res.x))
    throw ConvergenceError("solve_cohen_limit: residual target not reached");
  return res.x;
}

RetrialMeasures retrial_measures(int servers, double lambda, const Policy& policy) {
  RetrialMeasures out;
  out.cohen = solve_cohen(servers, lambda, policy);
  out.measures = decomposed_measures(servers, lambda + out.cohen.omega, policy);
  return out;
}

}  // namespace qstaff
