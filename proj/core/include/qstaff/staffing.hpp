#pragma once

#include <utility>
#include <vector>

#include "qstaff/admission.hpp"
#include "qstaff/performance.hpp"

namespace qstaff {

/// One load-dimensioning problem: find lambda with sqrt(s) * D = epsilon,
/// where D is the selected measure, optionally with the retrial stream
/// folded in (rejection variant only).
struct StaffingProblem {
  int servers = 1;
  double epsilon = 0.0;
  Policy policy = Policy::loss();
  Variant variant = Variant::rejection;
  bool retrials = false;
};

struct StaffingSolution {
  double lambda_opt = 0.0;       ///< exact root of the constraint
  double gamma_star = 0.0;       ///< limit-rule slack coefficient
  double lambda_star = 0.0;      ///< s - gamma_star sqrt(s)
  double gamma_bullet = 0.0;     ///< refined slack coefficient
  double lambda_bullet = 0.0;    ///< lambda_star + r_bullet
  double r_bullet = 0.0;         ///< second-order load correction
  double achieved_star = 0.0;    ///< sqrt(s) * D at lambda_star
  double achieved_bullet = 0.0;  ///< sqrt(s) * D at lambda_bullet
};

/// Exact solve of the constraint by bisection on the monotone scaled
/// measure; with retrials the problem reduces exactly to a plain solve on
/// the rejection measure followed by an affine shift, so no fixed-point
/// iteration is nested inside the root find. For the rejection variant a
/// monotonicity pre-scan runs first; if it fails, every root found at scan
/// resolution is reported through MultiRootError.
/// Valid targets: epsilon in (0, sqrt(s)) for the all-busy variant and
/// (0, (1-P) sqrt(s)) for the rejection variant.
double solve_load(const StaffingProblem& problem);

/// Second-order coefficients of the scaled measure expansions,
///   busy:      (1+F(1)) h(g) - g F'(1) hazard(g) - (1+F(1)) F(1) hazard(g)^2
///   rejection: h(g) - (g + hazard(g)) hazard(g) F(1)
/// with h the Erlang correction term. Throw DomainError when F(1) or F'(1)
/// is not finite (unit rate parameter).
double qed_busy_correction(double gamma, const Policy& policy);
double qed_rejection_correction(double gamma, const Policy& policy);

/// Conventional square-root rule: the slack gamma_star solving the limiting
/// constraint, and the load s - gamma_star sqrt(s).
std::pair<double, double> staff_conventional(const StaffingProblem& problem);

/// Conventional rule plus the explicit second-order load correction
/// r_bullet, with the exact solve and both achieved constraint values
/// filled in for comparison.
StaffingSolution staff_refined(const StaffingProblem& problem);

struct GapRow {
  int servers = 0;
  double gap_conventional = 0.0;  ///< lambda_opt - lambda_star
  double gap_refined = 0.0;       ///< lambda_opt - lambda_bullet
};

/// Dimensioning error of both rules across server counts.
std::vector<GapRow> gap_scan(const Policy& policy, double epsilon,
                             Variant variant, bool retrials,
                             const std::vector<int>& servers_list);

}  // namespace qstaff
