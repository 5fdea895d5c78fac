#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qstaff/admission.hpp"
#include "qstaff/performance.hpp"

namespace qstaff {

/// Roots of a carried-traffic target equation. Throughput equations can be
/// satisfied by two loads (a lightly loaded and a saturated operating
/// point), one, or none when the target exceeds the attainable maximum.
struct CarriedTrafficResult {
  int solution_count = 0;
  std::vector<double> solutions;  ///< loads, ascending
  double threshold = 0.0;   ///< attainable maximum of the target (retrial form)
  double gamma_hat = 0.0;   ///< slack coordinate of the maximum
  int scan_points = 0;      ///< grid resolution bounding the root list, 0 = exact
  std::vector<std::string> warnings;
};

/// Solves lambda (1 - D(s, lambda)) = epsilon without retrials. The
/// rejection variant is strictly increasing in the load and has exactly one
/// root for epsilon in (0, s). The all-busy variant vanishes at both ends
/// of the stable range; the interior maximum is located by golden-section
/// search and each flank is bisected, giving two, one or zero roots.
CarriedTrafficResult solve_throughput(int servers, double epsilon,
                                      const Policy& policy, Variant variant);

/// Scaled carried traffic of the loss-with-retrials system:
///   (sqrt(s) - g)^2 / (sqrt(s) - g + a_s(g)),  0 < g < sqrt(s),
/// with a_s the scaled retrial fixed point of the loss policy.
double scaled_carried_traffic(int servers, double gamma);

/// Same quantity for an arbitrary policy (the rejection-variant fixed point
/// replaces the loss one).
double scaled_carried_traffic_general(int servers, double gamma,
                                      const Policy& policy);

/// Maximizer of scaled_carried_traffic: the unique root of
///   g * a_s(g) = (1 - g/sqrt(s)) / 2,
/// found by Newton on top of the inner fixed-point solve. Grows from 1/2 at
/// s = 1 toward its limit near 1.0341.
double carried_traffic_argmax(int servers);

/// Limit of the maximizer as s -> inf: the root of g * a(g) = 1/2 with a
/// the limiting retrial coefficient.
double carried_traffic_argmax_limit();

/// Maximum scaled carried traffic, from the closed form
///   ghat / (ghat + 1/(2 sqrt(s))) * (sqrt(s) - ghat),
/// cross-checked against direct maximization to 1e-8.
double carried_traffic_max(int servers);

/// Solves lambda (1 - D^R(s, lambda + Omega)) = epsilon for the loss
/// policy: two, one or zero loads according as epsilon is below, at or
/// above sqrt(s) * carried_traffic_max(s).
CarriedTrafficResult solve_throughput_retrial(int servers, double epsilon);

/// Experimental counterpart for arbitrary policies: a grid scan of the
/// scaled carried traffic with no completeness claim beyond the resolution.
CarriedTrafficResult scan_throughput_retrial(int servers, double epsilon,
                                             const Policy& policy,
                                             int grid_points = 1024);

/// Grid of (delta, scaled_carried_traffic(delta sqrt(s)) / sqrt(s)) over the
/// open interval 0 < delta < 1, for plotting the throughput profile.
std::vector<std::pair<double, double>> carried_traffic_profile(int servers,
                                                               int grid_size);

}  // namespace qstaff
