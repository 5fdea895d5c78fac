#include "qstaff/bistability.hpp"

#include <algorithm>
#include <cmath>

#include "qstaff/erlang.hpp"
#include "qstaff/errors.hpp"
#include "qstaff/retrials.hpp"
#include "root_find.hpp"

namespace qstaff {

namespace {

double require_interior_gamma(int servers, double gamma) {
  const double rs = std::sqrt(static_cast<double>(servers));
  if (servers < 1) throw DomainError("server count must be positive");
  if (!(gamma > 0.0 && gamma < rs))
    throw DomainError("gamma must lie strictly between 0 and sqrt(s)");
  return rs;
}

// Scaled retrial fixed point a_s(gamma) and its derivative
//   a' = -a (gamma + 1/sqrt(s)) / (1 - gamma/sqrt(s) - gamma a)
// for the loss policy.
double loss_fixed_point(int servers, double gamma) {
  return solve_cohen_gamma(servers, gamma, Policy::loss()).a;
}

double loss_fixed_point_prime(int servers, double gamma, double a) {
  const double rs = std::sqrt(static_cast<double>(servers));
  return -a * (gamma + 1.0 / rs) / (1.0 - gamma / rs - gamma * a);
}

std::vector<double> sorted(std::vector<double> loads) {
  std::sort(loads.begin(), loads.end());
  return loads;
}

}  // namespace

double scaled_carried_traffic(int servers, double gamma) {
  const double rs = require_interior_gamma(servers, gamma);
  const double a = loss_fixed_point(servers, gamma);
  const double d = rs - gamma;
  return d * d / (d + a);
}

double scaled_carried_traffic_general(int servers, double gamma,
                                      const Policy& policy) {
  const double rs = require_interior_gamma(servers, gamma);
  const double a = solve_cohen_gamma(servers, gamma, policy).a;
  const double d = rs - gamma;
  return d * d / (d + a);
}

double carried_traffic_argmax(int servers) {
  if (servers < 1) throw DomainError("server count must be positive");
  const double rs = std::sqrt(static_cast<double>(servers));
  // The maximizer solves gamma a_s(gamma) = (1 - gamma/sqrt(s))/2; the ratio
  // gamma a_s / (1 - gamma/sqrt(s)) falls strictly from 1 to 0, so the root
  // is unique. f_s(0) is a proven lower bound for it.
  auto value_and_prime = [&](double g, double& f, double& fp) {
    const double a = loss_fixed_point(servers, g);
    const double ap = loss_fixed_point_prime(servers, g, a);
    f = g * a - 0.5 * (1.0 - g / rs);
    fp = a + g * ap + 0.5 / rs;
  };
  auto f = [&](double g) {
    double v, vp;
    value_and_prime(g, v, vp);
    return v;
  };
  auto fp = [&](double g) {
    double v, vp;
    value_and_prime(g, v, vp);
    return vp;
  };

  double lo = scaled_loss_rate(servers, 0.0);
  if (f(lo) <= 0.0) lo = 1e-6 * rs;  // fallback, not expected
  double hi = rs * (1.0 - 0.25);
  while (f(hi) >= 0.0) {
    hi = rs - 0.5 * (rs - hi);
    if (rs - hi < 1e-12 * rs)
      throw ConvergenceError("carried_traffic_argmax: no sign change found");
  }
  auto res = detail::newton_bisect(f, fp, lo, hi, 0.5 * (lo + hi), 1e-12,
                                   1e-14, 200);
  if (std::abs(res.fx) > 1e-10)
    throw ConvergenceError("carried_traffic_argmax: residual target not reached");
  return res.x;
}

double carried_traffic_argmax_limit() {
  // root of gamma a(gamma) = 1/2 with a' = -gamma a / (1 - gamma a)
  auto f = [](double g) { return g * solve_cohen_limit(g) - 0.5; };
  auto fp = [](double g) {
    const double a = solve_cohen_limit(g);
    const double ga = g * a;
    return a * (1.0 - ga - g * g) / (1.0 - ga);
  };
  auto res = detail::newton_bisect(f, fp, 0.25, 4.0, 1.0, 1e-12, 1e-14, 200);
  if (std::abs(res.fx) > 1e-10)
    throw ConvergenceError(
        "carried_traffic_argmax_limit: residual target not reached");
  return res.x;
}

double carried_traffic_max(int servers) {
  const double rs = std::sqrt(static_cast<double>(servers));
  const double ghat = carried_traffic_argmax(servers);
  const double closed = ghat / (ghat + 0.5 / rs) * (rs - ghat);
  // cross-check against direct maximization of the curve
  auto curve = [&](double g) { return scaled_carried_traffic(servers, g); };
  const double gdirect =
      detail::golden_max(curve, 1e-9 * rs, rs * (1.0 - 1e-9), 1e-10 * rs);
  const double direct = curve(gdirect);
  if (std::abs(direct - closed) > 1e-8 * std::max(1.0, std::abs(closed)))
    throw ConsistencyError(
        "carried_traffic_max: closed form and direct maximization disagree");
  return closed;
}

CarriedTrafficResult solve_throughput(int servers, double epsilon,
                                      const Policy& policy, Variant variant) {
  if (servers < 1) throw DomainError("server count must be positive");
  const double rs = std::sqrt(static_cast<double>(servers));

  CarriedTrafficResult out;
  auto carried = [&](double lambda) {
    return carried_traffic(servers, lambda, policy, variant);
  };

  if (variant == Variant::rejection) {
    if (!(epsilon > 0.0 && epsilon < servers))
      throw DomainError(
          "rejection-variant throughput targets must lie in (0, s)");
    // lambda (1 - D^R) = s - sqrt(s)(gamma + rejection_rate(gamma)) is
    // strictly increasing in lambda; bisect in gamma space.
    const double target = (servers - epsilon) / rs;
    auto f = [&](double g) {
      return g + qed_measures(servers, g, policy).rejection_rate - target;
    };
    const double floor = policy.profile(servers).gamma_floor;
    double lo;
    if (std::isfinite(floor)) {
      lo = floor + 1e-12 * (rs - floor);
      for (int tries = 0; f(lo) >= 0.0; ++tries) {
        if (tries == 3)
          throw DomainError("throughput target too close to its supremum");
        lo = floor + (lo - floor) * 1e-3;
      }
    } else {
      lo = 0.0;
      double step = std::max(1.0, rs);
      while (f(lo) >= 0.0) {
        lo -= step;
        step *= 2.0;
        if (lo < -1e12)
          throw DomainError("throughput target not attainable for this policy");
      }
    }
    auto res = detail::bisect(f, lo, rs, f(lo), f(rs), 1e-13, 1e-11, 300);
    out.solution_count = 1;
    out.solutions = {servers - res.x * rs};
    return out;
  }

  // All-busy variant: the carried traffic vanishes at both ends of the
  // stable range, so locate the interior maximum first, then bisect each
  // monotone flank.
  if (!(epsilon > 0.0))
    throw DomainError("throughput targets must be positive");
  const double cap = policy.profile(servers).lambda_cap;
  const double hi_edge =
      std::isfinite(cap) ? cap * (1.0 - 1e-9) : 10.0 * servers;
  const double lo_edge = std::isfinite(cap) ? cap * 1e-9 : 1e-9 * servers;
  const double lambda_max =
      detail::golden_max(carried, lo_edge, hi_edge, 1e-10 * hi_edge);
  const double peak = carried(lambda_max);
  out.gamma_hat = (servers - lambda_max) / rs;
  out.threshold = peak;

  if (epsilon > peak * (1.0 + 1e-9)) {
    out.solution_count = 0;
    return out;
  }
  if (epsilon >= peak * (1.0 - 1e-9)) {
    out.solution_count = 1;
    out.solutions = {lambda_max};
    return out;
  }
  std::vector<double> roots;
  auto f = [&](double lambda) { return carried(lambda) - epsilon; };
  const double fleft = f(lo_edge);
  if (fleft < 0.0)
    roots.push_back(
        detail::bisect(f, lo_edge, lambda_max, fleft, peak - epsilon, 1e-13,
                       1e-12 * std::max(1.0, epsilon), 300)
            .x);
  const double fright = f(hi_edge);
  if (fright < 0.0)
    roots.push_back(
        detail::bisect(f, lambda_max, hi_edge, peak - epsilon, fright, 1e-13,
                       1e-12 * std::max(1.0, epsilon), 300)
            .x);
  else
    out.warnings.push_back(
        "carried traffic still above target at the search cap; the saturated "
        "root lies beyond it");
  out.solutions = sorted(std::move(roots));
  out.solution_count = static_cast<int>(out.solutions.size());
  return out;
}

CarriedTrafficResult solve_throughput_retrial(int servers, double epsilon) {
  if (servers < 1) throw DomainError("server count must be positive");
  if (!(epsilon > 0.0)) throw DomainError("throughput targets must be positive");
  const double rs = std::sqrt(static_cast<double>(servers));

  CarriedTrafficResult out;
  out.gamma_hat = carried_traffic_argmax(servers);
  const double lmax = carried_traffic_max(servers);
  out.threshold = rs * lmax;  // attainable maximum of lambda(1 - D^R)

  if (epsilon > out.threshold * (1.0 + 1e-9)) {
    out.solution_count = 0;
    return out;
  }
  if (epsilon >= out.threshold * (1.0 - 1e-9)) {
    out.solution_count = 1;
    out.solutions = {servers - out.gamma_hat * rs};
    return out;
  }

  // Below the peak the unimodal curve is crossed once on each flank.
  auto f = [&](double g) { return rs * scaled_carried_traffic(servers, g) - epsilon; };
  const double fpeak = out.threshold - epsilon;
  std::vector<double> gammas;
  double glo = out.gamma_hat;
  double flo;
  do {
    glo *= 0.5;
    flo = f(glo);
  } while (flo > 0.0 && glo > 1e-300);
  gammas.push_back(
      detail::bisect(f, glo, out.gamma_hat, flo, fpeak, 1e-15,
                     1e-10 * std::max(1.0, epsilon), 300)
          .x);
  double ghi = out.gamma_hat;
  double fhi;
  do {
    ghi = rs - 0.5 * (rs - ghi);
    fhi = f(ghi);
  } while (fhi > 0.0 && rs - ghi > 1e-14 * rs);
  gammas.push_back(
      detail::bisect(f, out.gamma_hat, ghi, fpeak, fhi, 1e-15,
                     1e-10 * std::max(1.0, epsilon), 300)
          .x);

  for (double g : gammas) out.solutions.push_back(servers - g * rs);
  out.solutions = sorted(std::move(out.solutions));
  out.solution_count = static_cast<int>(out.solutions.size());
  return out;
}

CarriedTrafficResult scan_throughput_retrial(int servers, double epsilon,
                                             const Policy& policy,
                                             int grid_points) {
  if (servers < 1) throw DomainError("server count must be positive");
  if (!(epsilon > 0.0)) throw DomainError("throughput targets must be positive");
  if (grid_points < 8) throw DomainError("grid too coarse");
  const double rs = std::sqrt(static_cast<double>(servers));
  auto f = [&](double g) {
    return rs * scaled_carried_traffic_general(servers, g, policy) - epsilon;
  };
  const double lo = rs * 1e-6;
  const double hi = rs * (1.0 - 1e-6);
  CarriedTrafficResult out;
  out.scan_points = grid_points;
  out.warnings.push_back(
      "general-policy throughput roots are listed at scan resolution only");
  for (double g : detail::scan_roots(f, lo, hi, grid_points, 1e-13,
                                     1e-9 * std::max(1.0, epsilon)))
    out.solutions.push_back(servers - g * rs);
  out.solutions = sorted(std::move(out.solutions));
  out.solution_count = static_cast<int>(out.solutions.size());
  return out;
}

std::vector<std::pair<double, double>> carried_traffic_profile(int servers,
                                                               int grid_size) {
  if (servers < 1) throw DomainError("server count must be positive");
  if (grid_size < 2) throw DomainError("profile grid needs at least 2 points");
  const double rs = std::sqrt(static_cast<double>(servers));
  std::vector<std::pair<double, double>> rows;
  rows.reserve(grid_size);
  for (int i = 1; i <= grid_size; ++i) {
    const double delta = static_cast<double>(i) / (grid_size + 1);
    rows.emplace_back(delta, scaled_carried_traffic(servers, delta * rs) / rs);
  }
  return rows;
}

}  // namespace qstaff
