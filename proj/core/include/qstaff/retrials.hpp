#pragma once

#include "qstaff/admission.hpp"
#include "qstaff/performance.hpp"

namespace qstaff {

/// Solution of the retrial balance equation
///   Omega = (lambda + Omega) * D^R(s, lambda + Omega),
/// in which blocked arrivals come back as an independent Poisson stream.
struct CohenSolution {
  double omega = 0.0;     ///< retrial rate
  double a = 0.0;         ///< Omega / sqrt(s)
  double gamma = 0.0;     ///< scaled slack of the primary load
  double residual = 0.0;  ///< |a - scaled rejection rate at gamma - a|
  int iterations = 0;
};

/// Unique retrial rate for 0 < lambda < s. The equation is solved in scaled
/// form, a = rejection_rate(gamma - a), by safeguarded Newton on a bracket
/// starting at [0, gamma - gamma_floor); the final residual is below 1e-10
/// (scaled by the solution once it outgrows double granularity).
/// Throws DomainError outside (0, s).
CohenSolution solve_cohen(int servers, double lambda, const Policy& policy);

/// Same solver addressed by the scaled slack gamma = (s - lambda)/sqrt(s).
/// Outside the guaranteed range gamma in (0, sqrt(s)) it still attempts the
/// solve and throws ConvergenceError when no fixed point exists.
CohenSolution solve_cohen_gamma(int servers, double gamma, const Policy& policy);

/// Limit of the scaled retrial rate as the system grows: the unique a > 0
/// with a = hazard(gamma - a), for gamma > 0. Residual below 1e-12.
double solve_cohen_limit(double gamma);

/// A Cohen solve together with the measures at the inflated load.
struct RetrialMeasures {
  CohenSolution cohen;
  MeasureSet measures;  ///< evaluated at lambda + omega
};

/// Solves the retrial balance and evaluates all measures at lambda + Omega.
RetrialMeasures retrial_measures(int servers, double lambda, const Policy& policy);

}  // namespace qstaff
