#include "qstaff/staffing.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qstaff/errors.hpp"
#include "qstaff/gaussian.hpp"
#include "qstaff/retrials.hpp"
#include "root_find.hpp"

namespace qstaff {

namespace {

double scaled_measure(const StaffingProblem& p, double gamma) {
  const QedMeasures m = qed_measures(p.servers, gamma, p.policy);
  return p.variant == Variant::all_busy ? m.busy_prob : m.rejection_prob;
}

void check_epsilon_range(const StaffingProblem& p) {
  const double rs = std::sqrt(static_cast<double>(p.servers));
  const double sup = p.variant == Variant::all_busy
                         ? rs
                         : (1.0 - p.policy.profile(p.servers).tail_rate) * rs;
  if (!(p.epsilon > 0.0 && p.epsilon < sup)) {
    std::ostringstream os;
    os << "staffing target epsilon must lie in (0, " << sup << ") for this "
       << (p.variant == Variant::all_busy ? "all-busy" : "rejection")
       << " problem at s = " << p.servers;
    throw DomainError(os.str());
  }
}

// Bisection for the gamma with scaled measure == eps. The measure is
// strictly decreasing on (gamma_floor, sqrt(s)], from its supremum down to 0.
double solve_gamma(const StaffingProblem& p, double eps) {
  const double rs = std::sqrt(static_cast<double>(p.servers));
  const double floor = p.policy.profile(p.servers).gamma_floor;
  auto f = [&](double g) { return scaled_measure(p, g) - eps; };

  double lo;
  if (std::isfinite(floor)) {
    double offset = 1e-9 * (rs - floor);
    lo = floor + offset;
    for (int tries = 0; f(lo) <= 0.0; ++tries) {
      if (tries == 3)
        throw DomainError("staffing target too close to its supremum");
      offset *= 1e-3;
      lo = floor + offset;
    }
  } else {
    lo = 0.0;
    double step = std::max(1.0, rs);
    while (f(lo) <= 0.0) {
      lo -= step;
      step *= 2.0;
      if (lo < -1e9)
        throw DomainError("staffing target not attainable for this policy");
    }
  }
  const double flo = f(lo);
  const double fhi = f(rs);
  auto res = detail::bisect(f, lo, rs, flo, fhi, 1e-12, 1e-11, 300);
  return res.x;
}

}  // namespace

double qed_busy_correction(double gamma, const Policy& policy) {
  // The F(1)-cross term carries the square of the hazard: expanding
  //   sqrt(s) B (1 + F(x)) / (1 + B F(x))
  // to first order leaves (1+F1) h - gamma F'(1) g - (1+F1) F1 g^2, which is
  // the version that makes the residual shrink like 1/s (checked by the
  // s-doubling tests).
  const double f1 = policy.generating_fn(1.0);
  const double f1p = policy.generating_fn_prime_at_one();
  const double g = hazard(gamma);
  return (1.0 + f1) * h_inf(gamma) - gamma * f1p * g - (1.0 + f1) * f1 * g * g;
}

double qed_rejection_correction(double gamma, const Policy& policy) {
  const double f1 = policy.generating_fn(1.0);
  const double g = hazard(gamma);
  return h_inf(gamma) - (gamma + g) * g * f1;
}

double solve_load(const StaffingProblem& p) {
  check_epsilon_range(p);
  const double rs = std::sqrt(static_cast<double>(p.servers));

  if (p.retrials) {
    if (p.variant != Variant::rejection)
      throw DomainError(
          "retrial dimensioning is defined for the rejection variant only");
    // The fixed point drops out exactly: with sqrt(s) D^R(lambda+Omega) = eps
    // the retrial rate is pinned by the target itself, leaving a plain solve
    // g^R(delta) = eps and the affine map gamma = delta + eps(1 - delta/sqrt(s)).
    const double delta = solve_gamma(p, p.epsilon);
    const double gamma = delta + p.epsilon - delta * p.epsilon / rs;
    return p.servers - gamma * rs;
  }

  if (p.variant == Variant::rejection && !rejection_monotone(p.servers, p.policy)) {
    const double floor = p.policy.profile(p.servers).gamma_floor;
    const double lo = std::isfinite(floor)
                          ? floor + 1e-9 * (rs - floor)
                          : -(4.0 * rs + 50.0);
    auto f = [&](double g) { return scaled_measure(p, g) - p.epsilon; };
    auto gammas = detail::scan_roots(f, lo, rs, 4096, 1e-12, 1e-11);
    std::vector<double> loads;
    for (double g : gammas) loads.push_back(p.servers - g * rs);
    std::sort(loads.begin(), loads.end());
    throw MultiRootError(
        "rejection measure is not monotone for this policy; roots listed at "
        "scan resolution",
        loads);
  }

  const double gamma = solve_gamma(p, p.epsilon);
  return p.servers - gamma * rs;
}

std::pair<double, double> staff_conventional(const StaffingProblem& p) {
  check_epsilon_range(p);
  const double rs = std::sqrt(static_cast<double>(p.servers));
  double gamma_star;
  if (p.retrials) {
    if (p.variant != Variant::rejection)
      throw DomainError(
          "retrial dimensioning is defined for the rejection variant only");
    gamma_star = p.epsilon + inverse_hazard(p.epsilon);
  } else if (p.variant == Variant::rejection) {
    gamma_star = inverse_hazard(p.epsilon);
  } else {
    const double f1 = p.policy.profile(p.servers).f_at_one;
    if (!std::isfinite(f1))
      throw DomainError(
          "all-busy dimensioning needs a finite F(1); unit-rate policies are "
          "not supported");
    gamma_star = inverse_hazard(p.epsilon / (1.0 + f1));
  }
  return {gamma_star, p.servers - gamma_star * rs};
}

StaffingSolution staff_refined(const StaffingProblem& p) {
  const double rs = std::sqrt(static_cast<double>(p.servers));
  StaffingSolution sol;
  auto [gamma_star, lambda_star] = staff_conventional(p);
  sol.gamma_star = gamma_star;
  sol.lambda_star = lambda_star;

  if (p.retrials) {
    const double delta = gamma_star - p.epsilon;  // = inverse_hazard(eps)
    sol.r_bullet = delta * p.epsilon +
                   qed_rejection_correction(delta, p.policy) / hazard_prime(delta);
  } else if (p.variant == Variant::rejection) {
    sol.r_bullet =
        qed_rejection_correction(gamma_star, p.policy) / hazard_prime(gamma_star);
  } else {
    const double f1 = p.policy.profile(p.servers).f_at_one;
    sol.r_bullet = qed_busy_correction(gamma_star, p.policy) /
                   ((1.0 + f1) * hazard_prime(gamma_star));
  }
  sol.lambda_bullet = sol.lambda_star + sol.r_bullet;
  sol.gamma_bullet = sol.gamma_star - sol.r_bullet / rs;
  sol.lambda_opt = solve_load(p);

  auto achieved = [&](double lambda) {
    if (p.retrials) {
      // Evaluated through the same reduction that defines the problem: the
      // rejection measure at the de-inflated coordinate implied by the
      // target. At lambda_opt this is exactly epsilon; away from it, it
      // assumes the retrial stream consistent with the target.
      const double gamma = (p.servers - lambda) / rs;
      const double delta = (gamma - p.epsilon) / (1.0 - p.epsilon / rs);
      return qed_measures(p.servers, delta, p.policy).rejection_prob;
    }
    const double d = p.variant == Variant::all_busy
                         ? all_busy_prob(p.servers, lambda, p.policy)
                         : rejection_prob(p.servers, lambda, p.policy);
    return rs * d;
  };
  sol.achieved_star = achieved(sol.lambda_star);
  sol.achieved_bullet = achieved(sol.lambda_bullet);
  return sol;
}

std::vector<GapRow> gap_scan(const Policy& policy, double epsilon,
                             Variant variant, bool retrials,
                             const std::vector<int>& servers_list) {
  std::vector<GapRow> rows;
  rows.reserve(servers_list.size());
  for (int s : servers_list) {
    StaffingProblem p{s, epsilon, policy, variant, retrials};
    const StaffingSolution sol = staff_refined(p);
    rows.push_back({s, sol.lambda_opt - sol.lambda_star,
                    sol.lambda_opt - sol.lambda_bullet});
  }
  return rows;
}

}  // namespace qstaff
