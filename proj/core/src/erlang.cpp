#include "qstaff/erlang.hpp"

#include <cmath>

#include "qstaff/errors.hpp"

namespace qstaff {

SystemLoad SystemLoad::from_lambda(int servers, double lambda) {
  if (servers < 1) throw DomainError("SystemLoad: server count must be positive");
  if (!(lambda >= 0.0)) throw DomainError("SystemLoad: load must be non-negative");
  const double rs = std::sqrt(static_cast<double>(servers));
  return {servers, lambda, (servers - lambda) / rs};
}

SystemLoad SystemLoad::from_gamma(int servers, double gamma) {
  if (servers < 1) throw DomainError("SystemLoad: server count must be positive");
  const double rs = std::sqrt(static_cast<double>(servers));
  if (gamma > rs) throw DomainError("SystemLoad: gamma above sqrt(s) gives a negative load");
  // gamma == sqrt(s) can round to a load of -1 ulp
  return {servers, std::max(0.0, servers - gamma * rs), gamma};
}

double erlang_b(int servers, double lambda) {
  if (servers < 1) throw DomainError("erlang_b: server count must be positive");
  if (!(lambda >= 0.0)) throw DomainError("erlang_b: load must be non-negative");
  if (lambda == 0.0) return 0.0;
  double b = 1.0;
  for (int k = 1; k <= servers; ++k) b = lambda * b / (k + lambda * b);
  return b;
}

double erlang_c(int servers, double lambda) {
  if (servers < 1) throw DomainError("erlang_c: server count must be positive");
  if (!(lambda > 0.0)) throw DomainError("erlang_c: load must be positive");
  const double rho = lambda / servers;
  const double b = erlang_b(servers, lambda);
  // 1/C = rho + (1 - rho)/B; B underflow leaves 1/C = +inf, so C = 0.
  const double inv_c = rho + (1.0 - rho) / b;
  return 1.0 / inv_c;
}

double scaled_loss_prob(int servers, double gamma) {
  const SystemLoad load = SystemLoad::from_gamma(servers, gamma);
  const double rs = std::sqrt(static_cast<double>(servers));
  return rs * erlang_b(servers, load.lambda);
}

double scaled_loss_rate(int servers, double gamma) {
  const double rs = std::sqrt(static_cast<double>(servers));
  return (1.0 - gamma / rs) * scaled_loss_prob(servers, gamma);
}

}  // namespace qstaff
