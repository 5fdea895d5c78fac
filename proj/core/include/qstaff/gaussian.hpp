#pragma once

// Standard-normal kernel used throughout the heavy-traffic limits: density,
// distribution, the hazard rate phi/Phi, its first derivative, the
// second-order correction term of the scaled Erlang blocking expansion, and
// the inverse of the hazard rate.
//
// All functions are pure and thread-safe.

namespace qstaff {

/// A point on the hazard curve: the abscissa, the (positive) hazard value,
/// and its (negative) derivative, which always equals
/// -value * (gamma + value).
struct HazardPoint {
  double gamma = 0.0;
  double value = 0.0;
  double derivative = 0.0;
};

/// Standard normal density (2*pi)^{-1/2} * exp(-x^2/2).
double std_normal_pdf(double x);

/// Standard normal distribution function, with relative accuracy in the
/// lower tail (computed through the complementary error function).
double std_normal_cdf(double x);

/// Hazard rate of the standard normal: pdf(x)/cdf(x). Strictly decreasing,
/// diverging like -x as x -> -inf and vanishing as x -> +inf. Below x = -8
/// the ratio is evaluated through the reciprocal Mills asymptotic series,
/// where the direct quotient would be 0/0 after underflow.
double hazard(double gamma);

/// d/dx of hazard: always equals -hazard(x) * (x + hazard(x)) and is
/// negative everywhere.
double hazard_prime(double gamma);

/// hazard and hazard_prime evaluated together.
HazardPoint hazard_point(double gamma);

/// Second-order coefficient of the scaled Erlang-B expansion,
///   -(1/3) * (x^3 + (x^2 + 2) * hazard(x)) * hazard(x).
double h_inf(double gamma);

/// Unique x with hazard(x) == epsilon, for epsilon > 0. Safeguarded Newton
/// with a bisection bracket auto-expanded from [-40, 40]; the residual
/// |hazard(x) - epsilon| ends below 1e-12 (scaled for epsilon > 1e3).
/// Throws DomainError for epsilon <= 0.
double inverse_hazard(double epsilon);

}  // namespace qstaff
