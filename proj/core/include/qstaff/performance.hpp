#pragma once

#include <vector>

#include "qstaff/admission.hpp"

namespace qstaff {

/// Which arrival-side measure an operation targets: the probability of
/// finding every server busy, or the probability of being turned away.
enum class Variant { all_busy, rejection };

/// The stationary measures of one (servers, load, policy) triple.
struct MeasureSet {
  double blocking = 0.0;    ///< Erlang B
  double delay = 0.0;       ///< Erlang C (algebraic continuation past s)
  double all_busy = 0.0;    ///< probability an arrival finds all servers busy
  double rejection = 0.0;   ///< probability an arrival is turned away
  double mix_weight = 0.0;  ///< Erlang-C share q_lambda of the decompositions
};

/// Probability that an arrival finds all servers occupied,
///   1 / D = (1/B + F(lambda/s)) / (1 + F(lambda/s)).
/// Reduces to Erlang B for the loss policy and Erlang C for the delay
/// policy. Returns 0 at lambda = 0; throws StabilityError at or beyond the
/// policy's load cap.
double all_busy_prob(int servers, double lambda, const Policy& policy);

/// Probability that an arrival is denied service,
///   1 / D = (1/B + F(lambda/s)) / (1 + (1 - s/lambda) F(lambda/s)).
/// Same domain as all_busy_prob.
double rejection_prob(int servers, double lambda, const Policy& policy);

/// Computes every measure through the B/C mixture forms
///   1/D   = (1-q)/B + q/C,      1/D^R = 1/B + q/(1-q) * 1/C,
/// and cross-checks them against the direct ratio forms to 1e-10 relative,
/// throwing ConsistencyError on disagreement.
MeasureSet decomposed_measures(int servers, double lambda, const Policy& policy);

/// The four scaled measures on the gamma axis, evaluated through the
/// factorization into the policy-free Erlang part and the policy transform.
struct QedMeasures {
  double busy_rate = 0.0;       ///< (1 - gamma/sqrt(s)) * busy_prob
  double busy_prob = 0.0;       ///< sqrt(s) * all_busy_prob at s - gamma sqrt(s)
  double rejection_rate = 0.0;  ///< (1 - gamma/sqrt(s)) * rejection_prob
  double rejection_prob = 0.0;  ///< sqrt(s) * rejection_prob at s - gamma sqrt(s)
};

/// Requires gamma_floor < gamma <= sqrt(s); throws DivergenceError below.
QedMeasures qed_measures(int servers, double gamma, const Policy& policy);

/// Carried traffic lambda * (1 - D) for the selected variant.
double carried_traffic(int servers, double lambda, const Policy& policy,
                       Variant variant);

/// Truncated stationary distribution of the admission birth-death chain.
struct StationaryDistribution {
  std::vector<double> pi;  ///< normalized state probabilities 0..truncation
  double all_busy = 0.0;   ///< sum of pi_k over k >= s
  double rejection = 0.0;  ///< sum of pi_k * (1 - p_k) over k >= s
};

/// Brute-force evaluation of the stationary chain by detailed-balance
/// products, truncated once the certified geometric tail drops below
/// tail_tol of the accumulated mass. The rejection mass weights state k by
/// 1 - p_k, the probability that an arrival meeting k customers is turned
/// away; summed against the stationary distribution this reproduces the
/// closed-form rejection probability exactly.
StationaryDistribution stationary_oracle(int servers, double lambda,
                                         const Policy& policy,
                                         double tail_tol = 1e-13);

/// 256-point scan of the scaled rejection probability over the solvable
/// gamma range; false when the scan sees a strict interior increase.
bool rejection_monotone(int servers, const Policy& policy, int scan_points = 256);

}  // namespace qstaff
