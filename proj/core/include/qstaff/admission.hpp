#pragma once

#include <string>
#include <vector>

namespace qstaff {

enum class PolicyKind { loss, delay, bernoulli, threshold, series };

/// Classification of the policy series at its radius of convergence.
/// Solvers accept `divergent` and `entire` policies; `irregular` marks the
/// critical case (unit rate parameter) whose boundary behavior needs
/// separate treatment.
enum class TailClass { divergent, irregular, entire };

/// Static facts about a policy at a given server count: the geometric rate
/// parameter of the admission products, the matching lower stability
/// boundary in scaled coordinates, and the generating-function values that
/// drive the second-order corrections.
struct PolicyProfile {
  double tail_rate = 0.0;      ///< limsup rate P of the admission products, in [0, 1]
  double gamma_floor = 0.0;    ///< -(1-P)/P * sqrt(s); -inf when P = 0
  double lambda_cap = 0.0;     ///< s / P; +inf when P = 0
  double f_at_one = 0.0;       ///< F(1); +inf when the series diverges there
  double f_prime_at_one = 0.0; ///< F'(1); +inf when undefined
  TailClass tail = TailClass::entire;
};

/// An admission policy: the probabilities p_k with which an arrival that
/// meets k >= s customers is allowed to join the queue. Immutable after
/// construction; all evaluators are pure and safe to call concurrently.
///
/// Built-in kinds:
///   loss            p_k = 0                 (no queue)
///   delay           p_k = 1                 (plain FCFS queue)
///   bernoulli(p)    p_k = p in (0,1)
///   threshold(m)    p_k = 1 for k <= s+m, else 0 (m extra waiting slots)
///   series          explicit admission products q_n = p_s * ... * p_{s+n}
///
/// A series policy declares its rate parameter P up front; estimating the
/// limsup from finitely many terms is not meaningful and is refused. Beyond
/// the last listed product the sequence continues geometrically,
/// q_{N+m} = q_N * P^m, which keeps every tail in closed form and makes the
/// generating function diverge at its radius 1/P whenever P > 0 and
/// q_N > 0. P = 1 is refused (use `delay`), as are products that increase.
class Policy {
public:
  static Policy loss();
  static Policy delay();
  static Policy bernoulli(double p);
  static Policy threshold(int extra_slots);
  static Policy series(std::vector<double> products, double tail_rate);

  /// Parses the spec grammar `loss`, `delay`, `bernoulli:<p>`,
  /// `threshold:<m>`, `series:<path>`. Throws SpecError on bad input.
  static Policy parse(const std::string& spec);

  /// Reads a series policy file: a `P=<value>` header line, then one
  /// product q_n per line. Blank lines and `#` comments are ignored.
  static Policy load_series_file(const std::string& path);

  PolicyKind kind() const noexcept { return kind_; }
  double bernoulli_p() const noexcept { return p_; }
  int extra_slots() const noexcept { return extra_; }

  /// The spec string this policy parses from (used for config round-trips).
  const std::string& spec_string() const noexcept { return spec_; }

  /// Admission probability p_k for queue position k >= s.
  /// Throws DomainError for k < s.
  double admit_prob(int s, long k) const;

  /// Generating function F(x) = sum_{n>=0} q_n x^{n+1} of the admission
  /// products, for x >= 0 inside the radius of convergence.
  /// Throws DivergenceError when the series diverges at x.
  double generating_fn(double x) const;

  /// F'(1). Throws DomainError when F is not analytic at 1 (P >= 1).
  double generating_fn_prime_at_one() const;

  /// Scaled policy transform H_s(gamma) = sum_{n>=0} q_n (1 - gamma/sqrt(s))^n
  /// = F(1 - gamma/sqrt(s)) / (1 - gamma/sqrt(s)).
  /// Throws DivergenceError for gamma <= gamma_floor.
  double qed_transform(int s, double gamma) const;

  /// d/dgamma of qed_transform. Same domain.
  double qed_transform_prime(int s, double gamma) const;

  /// Profile of this policy at server count s.
  PolicyProfile profile(int s) const;

  /// Mixing weight q_lambda = (s/lambda) F(lambda/s) / (1 + F(lambda/s)),
  /// the Erlang-C share in the inverse-measure decompositions. Lies in
  /// [0, 1]; equals 1 exactly for the delay policy. Defined for
  /// 0 < lambda <= lambda_cap, taking the limit value at the boundary when
  /// the series diverges there. Throws StabilityError beyond the cap.
  double mix_weight(int s, double lambda) const;

  /// sup_{j >= n} p_{s+j}; used for certified tail bounds in summations.
  double admit_sup_from(long n) const;

private:
  Policy() = default;

  double plain_sum(double x) const;     // sum q_n x^n
  double weighted_sum(double x) const;  // sum (n+1) q_n x^n

  PolicyKind kind_ = PolicyKind::loss;
  double p_ = 0.0;
  int extra_ = 0;
  std::vector<double> q_;           // series products
  std::vector<double> ratio_sup_;   // suffix sup of in-file admit ratios
  double tail_rate_ = 0.0;
  std::string spec_;
};

}  // namespace qstaff
