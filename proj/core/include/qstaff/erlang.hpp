#pragma once

namespace qstaff {

/// A server count together with an offered load and its scaled slack
/// coordinate gamma = (s - lambda) / sqrt(s).
struct SystemLoad {
  int servers = 1;
  double lambda = 0.0;
  double gamma = 0.0;

  static SystemLoad from_lambda(int servers, double lambda);
  static SystemLoad from_gamma(int servers, double gamma);
};

/// Erlang B blocking probability of an M/M/s/s system, via the stable
/// recursion B(0) = 1, B(k) = lambda B(k-1) / (k + lambda B(k-1)).
/// The load may be any non-negative real; the server count is integral.
double erlang_b(int servers, double lambda);

/// Erlang C delay probability of an M/M/s queue, through the identity
/// 1/C = rho + (1 - rho)/B with rho = lambda/s. For lambda >= s this is the
/// algebraic continuation of the formula. Throws DomainError at lambda = 0.
double erlang_c(int servers, double lambda);

/// sqrt(s) * B(s, s - gamma sqrt(s)): the blocking probability on the
/// scaled-slack axis. Requires gamma <= sqrt(s).
double scaled_loss_prob(int servers, double gamma);

/// (1 - gamma/sqrt(s)) * scaled_loss_prob: the blocked fraction of the
/// scaled arrival rate. Vanishes at gamma = sqrt(s).
double scaled_loss_rate(int servers, double gamma);

}  // namespace qstaff
