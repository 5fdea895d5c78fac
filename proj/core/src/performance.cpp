#include "qstaff/performance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qstaff/erlang.hpp"
#include "qstaff/errors.hpp"

namespace qstaff {

namespace {

void check_stable(int servers, double lambda, const Policy& policy) {
  if (servers < 1) throw DomainError("server count must be positive");
  if (!(lambda >= 0.0)) throw DomainError("load must be non-negative");
  const double cap = policy.profile(servers).lambda_cap;
  if (lambda >= cap)
    throw StabilityError("load at or beyond the stability boundary s/P");
}

// Relative agreement with a small absolute allowance, so that exact zeros
// survive the floating-point residue of the other route.
bool routes_agree(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)) + 1e-13;
}

}  // namespace

double all_busy_prob(int servers, double lambda, const Policy& policy) {
  check_stable(servers, lambda, policy);
  if (lambda == 0.0) return 0.0;
  const double F = policy.generating_fn(lambda / servers);
  const double inv_b = 1.0 / erlang_b(servers, lambda);
  return (1.0 + F) / (inv_b + F);
}

double rejection_prob(int servers, double lambda, const Policy& policy) {
  check_stable(servers, lambda, policy);
  if (lambda == 0.0) return 0.0;
  const double F = policy.generating_fn(lambda / servers);
  const double inv_b = 1.0 / erlang_b(servers, lambda);
  // the numerator is exactly 0 for the delay policy but can round negative
  const double num = std::max(0.0, 1.0 + (1.0 - servers / lambda) * F);
  return num / (inv_b + F);
}

MeasureSet decomposed_measures(int servers, double lambda, const Policy& policy) {
  check_stable(servers, lambda, policy);
  if (!(lambda > 0.0))
    throw DomainError("decomposed_measures: load must be positive");
  MeasureSet m;
  m.blocking = erlang_b(servers, lambda);
  m.delay = erlang_c(servers, lambda);
  m.mix_weight = policy.mix_weight(servers, lambda);

  const double inv_b = 1.0 / m.blocking;
  const double inv_c = 1.0 / m.delay;
  const double q = m.mix_weight;
  m.all_busy = 1.0 / ((1.0 - q) * inv_b + q * inv_c);
  // q = 1 sends the rejection mixture to +inf, i.e. no rejections.
  m.rejection = q < 1.0 ? 1.0 / (inv_b + q / (1.0 - q) * inv_c) : 0.0;

  const double direct_busy = all_busy_prob(servers, lambda, policy);
  const double direct_rej = rejection_prob(servers, lambda, policy);
  if (!routes_agree(m.all_busy, direct_busy, 1e-10) ||
      !routes_agree(m.rejection, direct_rej, 1e-10))
    throw ConsistencyError(
        "decomposed_measures: mixture and ratio routes disagree");
  return m;
}

QedMeasures qed_measures(int servers, double gamma, const Policy& policy) {
  const double rs = std::sqrt(static_cast<double>(servers));
  if (gamma > rs) throw DomainError("qed_measures: gamma above sqrt(s)");
  if (gamma <= policy.profile(servers).gamma_floor)
    throw DivergenceError("qed_measures: gamma at or below gamma_floor");
  const double fs = scaled_loss_rate(servers, gamma);
  const double gs = scaled_loss_prob(servers, gamma);
  const double H = policy.qed_transform(servers, gamma);
  const double x = 1.0 - gamma / rs;
  const double denom = 1.0 + fs * H / rs;
  // 1 - gamma H / sqrt(s) >= 0 always, with equality only for the delay
  // policy, where it must not round below zero
  const double rej_num = std::max(0.0, 1.0 - gamma * H / rs);
  QedMeasures out;
  out.busy_rate = fs * (1.0 + x * H) / denom;
  out.busy_prob = gs * (1.0 + x * H) / denom;
  out.rejection_rate = fs * rej_num / denom;
  out.rejection_prob = gs * rej_num / denom;
  return out;
}

double carried_traffic(int servers, double lambda, const Policy& policy,
                       Variant variant) {
  const double d = variant == Variant::all_busy
                       ? all_busy_prob(servers, lambda, policy)
                       : rejection_prob(servers, lambda, policy);
  return lambda * (1.0 - d);
}

StationaryDistribution stationary_oracle(int servers, double lambda,
                                         const Policy& policy,
                                         double tail_tol) {
  check_stable(servers, lambda, policy);
  if (!(lambda > 0.0))
    throw DomainError("stationary_oracle: load must be positive");
  if (!(tail_tol > 0.0))
    throw DomainError("stationary_oracle: tail tolerance must be positive");

  // Unnormalized masses relative to state s: detailed balance gives
  // w_{k+1} = w_k * lambda p_k / min(k+1, s) with p_k = 1 below s.
  std::vector<double> w(servers + 1);
  w[servers] = 1.0;
  for (int k = servers; k-- > 0;) w[k] = w[k + 1] * (k + 1) / lambda;

  double below = 0.0;
  for (int k = 0; k < servers; ++k) below += w[k];
  if (!std::isfinite(below))
    throw DomainError(
        "stationary_oracle: load too far below capacity for direct products");

  const double x = lambda / servers;
  double busy = 0.0;
  double rejected = 0.0;
  double term = 1.0;  // w_{s+n} / w_s
  for (long n = 0;; ++n) {
    if (n > 0) w.push_back(term);
    const double p = policy.admit_prob(servers, servers + n);
    busy += term;
    rejected += term * (1.0 - p);
    const double next = term * x * p;
    if (next <= 0.0) break;  // the chain has finite support
    // States from s+n+1 on are bounded by next * ratio^j; stop once that
    // certified tail is negligible against the mass found so far.
    const double ratio = x * policy.admit_sup_from(n + 1);
    if (ratio < 1.0 && next / (1.0 - ratio) <= tail_tol * (below + busy)) break;
    term = next;
    if (n > 100000000)
      throw ConvergenceError("stationary_oracle: truncation did not certify");
  }

  const double total = below + busy;
  StationaryDistribution out;
  out.all_busy = busy / total;
  out.rejection = rejected / total;
  out.pi = std::move(w);
  for (double& v : out.pi) v /= total;
  return out;
}

bool rejection_monotone(int servers, const Policy& policy, int scan_points) {
  if (scan_points < 3) throw DomainError("rejection_monotone: need >= 3 points");
  const double rs = std::sqrt(static_cast<double>(servers));
  const PolicyProfile prof = policy.profile(servers);
  double lo;
  if (std::isfinite(prof.gamma_floor))
    lo = prof.gamma_floor + 1e-9 * (rs - prof.gamma_floor);
  else
    lo = -(4.0 * rs + 50.0);
  const double slack = 1e-12 * rs;
  double prev = std::numeric_limits<double>::infinity();
  for (int i = 0; i < scan_points; ++i) {
    const double gamma = lo + (rs - lo) * i / (scan_points - 1.0);
    const double value = qed_measures(servers, gamma, policy).rejection_prob;
    if (value > prev + slack) return false;
    prev = value;
  }
  return true;
}

}  // namespace qstaff
