#include "qstaff/admission.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "qstaff/errors.hpp"

namespace qstaff {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double parse_number(const std::string& text, const std::string& what) {
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw SpecError("invalid " + what + ": '" + text + "'");
  }
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos != text.size())
    throw SpecError("invalid " + what + ": '" + text + "'");
  return value;
}
}  // namespace

Policy Policy::loss() {
  Policy p;
  p.kind_ = PolicyKind::loss;
  p.spec_ = "loss";
  return p;
}

Policy Policy::delay() {
  Policy p;
  p.kind_ = PolicyKind::delay;
  p.spec_ = "delay";
  return p;
}

Policy Policy::bernoulli(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw DomainError("bernoulli policy needs an admit probability in (0,1)");
  Policy pol;
  pol.kind_ = PolicyKind::bernoulli;
  pol.p_ = p;
  std::ostringstream os;
  os << "bernoulli:" << p;
  pol.spec_ = os.str();
  return pol;
}

Policy Policy::threshold(int extra_slots) {
  if (extra_slots < 0)
    throw DomainError("threshold policy needs a non-negative slot count");
  Policy pol;
  pol.kind_ = PolicyKind::threshold;
  pol.extra_ = extra_slots;
  pol.spec_ = "threshold:" + std::to_string(extra_slots);
  return pol;
}

Policy Policy::series(std::vector<double> products, double tail_rate) {
  if (products.empty())
    throw DomainError("series policy needs at least one admission product");
  if (!(tail_rate >= 0.0 && tail_rate < 1.0))
    throw DomainError(
        "series rate parameter must lie in [0,1); use `delay` for the "
        "critical case");
  double prev = 1.0;
  bool zero_seen = false;
  for (double q : products) {
    if (!(q >= 0.0 && q <= prev * (1.0 + 1e-12)))
      throw DomainError(
          "series products must be admission-probability products: "
          "non-increasing values in [0,1]");
    if (zero_seen && q != 0.0)
      throw DomainError("series products cannot recover from zero");
    zero_seen = zero_seen || q == 0.0;
    prev = q;
  }
  Policy pol;
  pol.kind_ = PolicyKind::series;
  pol.q_ = std::move(products);
  pol.tail_rate_ = pol.q_.back() > 0.0 ? tail_rate : 0.0;
  pol.spec_ = "series:<inline>";
  // suffix sup of the in-file admit ratios p_{s+n} = q_n / q_{n-1}
  const std::size_t n = pol.q_.size();
  pol.ratio_sup_.assign(n, 0.0);
  double sup = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    const double qprev = i == 0 ? 1.0 : pol.q_[i - 1];
    const double ratio = qprev > 0.0 ? pol.q_[i] / qprev : 0.0;
    sup = std::max(sup, ratio);
    pol.ratio_sup_[i] = sup;
  }
  return pol;
}

Policy Policy::parse(const std::string& spec) {
  try {
    if (spec == "loss") return loss();
    if (spec == "delay") return delay();
    const auto colon = spec.find(':');
    if (colon != std::string::npos) {
      const std::string head = spec.substr(0, colon);
      const std::string arg = spec.substr(colon + 1);
      if (head == "bernoulli") return bernoulli(parse_number(arg, "admit probability"));
      if (head == "threshold") {
        const double m = parse_number(arg, "slot count");
        if (m != std::floor(m))
          throw SpecError("threshold slot count must be an integer");
        return threshold(static_cast<int>(m));
      }
      if (head == "series") return load_series_file(arg);
    }
    throw SpecError("unknown policy spec '" + spec +
                    "' (expected loss, delay, bernoulli:<p>, threshold:<m>, "
                    "series:<path>)");
  } catch (const DomainError& e) {
    throw SpecError("policy spec '" + spec + "': " + e.what());
  }
}

Policy Policy::load_series_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open series file '" + path + "'");
  double tail_rate = -1.0;
  std::vector<double> products;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    const auto eq = line.find('=');
    if (eq != std::string::npos) {
      const std::string key = line.substr(0, eq);
      if (key != "P")
        throw SpecError("series file '" + path + "': unknown header '" + key + "'");
      tail_rate = parse_number(line.substr(eq + 1), "series rate parameter");
    } else {
      products.push_back(parse_number(line, "series product"));
    }
  }
  if (tail_rate < 0.0)
    throw SpecError("series file '" + path + "' is missing its P=<value> header");
  try {
    Policy pol = series(std::move(products), tail_rate);
    pol.spec_ = "series:" + path;
    return pol;
  } catch (const DomainError& e) {
    throw SpecError("series file '" + path + "': " + e.what());
  }
}

double Policy::admit_prob(int s, long k) const {
  if (k < s) throw DomainError("admit_prob: position below the server count");
  const long n = k - s;
  switch (kind_) {
    case PolicyKind::loss: return 0.0;
    case PolicyKind::delay: return 1.0;
    case PolicyKind::bernoulli: return p_;
    case PolicyKind::threshold: return n <= extra_ ? 1.0 : 0.0;
    case PolicyKind::series: {
      const long last = static_cast<long>(q_.size()) - 1;
      if (n <= last) {
        const double qprev = n == 0 ? 1.0 : q_[n - 1];
        return qprev > 0.0 ? q_[n] / qprev : 0.0;
      }
      return q_.back() > 0.0 ? tail_rate_ : 0.0;
    }
  }
  return 0.0;
}

double Policy::admit_sup_from(long n) const {
  switch (kind_) {
    case PolicyKind::loss: return 0.0;
    case PolicyKind::delay: return 1.0;
    case PolicyKind::bernoulli: return p_;
    case PolicyKind::threshold: return n <= extra_ ? 1.0 : 0.0;
    case PolicyKind::series: {
      const double tail = q_.back() > 0.0 ? tail_rate_ : 0.0;
      if (n >= static_cast<long>(q_.size())) return tail;
      return std::max(ratio_sup_[n < 0 ? 0 : n], tail);
    }
  }
  return 0.0;
}

// sum_{n>=0} q_n x^n with the geometric continuation in closed form.
double Policy::plain_sum(double x) const {
  double sum = 0.0;
  double xn = 1.0;
  double xN = 1.0;  // x^N once the loop ends
  for (double q : q_) {
    sum += q * xn;
    xN = xn;
    xn *= x;
  }
  const double u = q_.back() > 0.0 ? tail_rate_ * x : 0.0;
  if (u > 0.0) {
    if (u >= 1.0) throw DivergenceError("policy series diverges here");
    // tail = q_N x^N sum_{m>=1} (P x)^m
    sum += q_.back() * xN * u / (1.0 - u);
  }
  return sum;
}

// sum_{n>=0} (n+1) q_n x^n, the derivative of F in closed form for the tail.
double Policy::weighted_sum(double x) const {
  double sum = 0.0;
  double xn = 1.0;
  double xN = 1.0;
  for (std::size_t n = 0; n < q_.size(); ++n) {
    sum += (static_cast<double>(n) + 1.0) * q_[n] * xn;
    xN = xn;
    xn *= x;
  }
  const double u = q_.back() > 0.0 ? tail_rate_ * x : 0.0;
  if (u > 0.0) {
    if (u >= 1.0) throw DivergenceError("policy series diverges here");
    const double N1 = static_cast<double>(q_.size());  // N + 1
    const double geo = u / (1.0 - u);
    // sum_{m>=1} (N+1+m) u^m = (N+1) u/(1-u) + u/(1-u)^2
    sum += q_.back() * xN * (N1 * geo + geo / (1.0 - u));
  }
  return sum;
}

double Policy::generating_fn(double x) const {
  if (!(x >= 0.0)) throw DomainError("generating_fn: x must be non-negative");
  switch (kind_) {
    case PolicyKind::loss: return 0.0;
    case PolicyKind::delay:
      if (x >= 1.0) throw DivergenceError("delay generating function diverges at x >= 1");
      return x / (1.0 - x);
    case PolicyKind::bernoulli:
      if (p_ * x >= 1.0)
        throw DivergenceError("bernoulli generating function diverges at p*x >= 1");
      return p_ * x / (1.0 - p_ * x);
    case PolicyKind::threshold: {
      double sum = 0.0;
      double xn = x;
      for (int n = 0; n <= extra_; ++n) {
        sum += xn;
        xn *= x;
      }
      return sum;
    }
    case PolicyKind::series:
      return x * plain_sum(x);
  }
  return 0.0;
}

double Policy::generating_fn_prime_at_one() const {
  switch (kind_) {
    case PolicyKind::loss: return 0.0;
    case PolicyKind::delay:
      throw DomainError("generating function is not analytic at 1 for the delay policy");
    case PolicyKind::bernoulli:
      return p_ / ((1.0 - p_) * (1.0 - p_));
    case PolicyKind::threshold:
      return 0.5 * (extra_ + 1.0) * (extra_ + 2.0);
    case PolicyKind::series:
      return weighted_sum(1.0);
  }
  return 0.0;
}

double Policy::qed_transform(int s, double gamma) const {
  const double rs = std::sqrt(static_cast<double>(s));
  const double x = 1.0 - gamma / rs;
  switch (kind_) {
    case PolicyKind::loss: return 0.0;
    case PolicyKind::delay:
      if (gamma <= 0.0)
        throw DivergenceError("delay policy transform diverges at gamma <= 0");
      return rs / gamma;
    case PolicyKind::bernoulli: {
      const double denom = 1.0 - p_ * x;
      if (denom <= 0.0)
        throw DivergenceError("policy transform diverges at or below gamma_floor");
      return p_ / denom;
    }
    case PolicyKind::threshold: {
      double sum = 0.0;
      double xn = 1.0;
      for (int n = 0; n <= extra_; ++n) {
        sum += xn;
        xn *= x;
      }
      return sum;
    }
    case PolicyKind::series:
      return plain_sum(x);
  }
  return 0.0;
}

double Policy::qed_transform_prime(int s, double gamma) const {
  const double rs = std::sqrt(static_cast<double>(s));
  const double x = 1.0 - gamma / rs;
  switch (kind_) {
    case PolicyKind::loss: return 0.0;
    case PolicyKind::delay:
      if (gamma <= 0.0)
        throw DivergenceError("delay policy transform diverges at gamma <= 0");
      return -rs / (gamma * gamma);
    case PolicyKind::bernoulli: {
      const double denom = 1.0 - p_ * x;
      if (denom <= 0.0)
        throw DivergenceError("policy transform diverges at or below gamma_floor");
      return -p_ * p_ / (rs * denom * denom);
    }
    case PolicyKind::threshold: {
      // -(1/rs) sum_{n>=1}^{m} n x^{n-1}
      double sum = 0.0;
      double xn = 1.0;
      for (int n = 1; n <= extra_; ++n) {
        sum += n * xn;
        xn *= x;
      }
      return -sum / rs;
    }
    case PolicyKind::series: {
      // sum n q_n x^{n-1} = (weighted_sum - plain_sum) / x away from x = 0
      if (x != 0.0) return -(weighted_sum(x) - plain_sum(x)) / (x * rs);
      return q_.size() > 1 ? -q_[1] / rs : 0.0;
    }
  }
  return 0.0;
}

PolicyProfile Policy::profile(int s) const {
  PolicyProfile prof;
  const double rs = std::sqrt(static_cast<double>(s));
  switch (kind_) {
    case PolicyKind::loss:
      prof = {0.0, -kInf, kInf, 0.0, 0.0, TailClass::entire};
      break;
    case PolicyKind::delay:
      prof = {1.0, 0.0, static_cast<double>(s), kInf, kInf, TailClass::irregular};
      break;
    case PolicyKind::bernoulli:
      prof = {p_, -(1.0 - p_) / p_ * rs, s / p_, p_ / (1.0 - p_),
              p_ / ((1.0 - p_) * (1.0 - p_)), TailClass::divergent};
      break;
    case PolicyKind::threshold:
      prof = {0.0, -kInf, kInf, static_cast<double>(extra_ + 1),
              0.5 * (extra_ + 1.0) * (extra_ + 2.0), TailClass::entire};
      break;
    case PolicyKind::series: {
      const double P = tail_rate_;
      prof.tail_rate = P;
      prof.gamma_floor = P > 0.0 ? -(1.0 - P) / P * rs : -kInf;
      prof.lambda_cap = P > 0.0 ? s / P : kInf;
      prof.f_at_one = generating_fn(1.0);
      prof.f_prime_at_one = weighted_sum(1.0);
      prof.tail = P > 0.0 ? TailClass::divergent : TailClass::entire;
      break;
    }
  }
  return prof;
}

double Policy::mix_weight(int s, double lambda) const {
  if (!(lambda > 0.0)) throw DomainError("mix_weight: lambda must be positive");
  if (kind_ == PolicyKind::loss) return 0.0;
  if (kind_ == PolicyKind::delay) {
    if (lambda > s * (1.0 + 1e-12))
      throw StabilityError("load beyond the stability boundary of the delay policy");
    return 1.0;
  }
  const PolicyProfile prof = profile(s);
  const double cap = prof.lambda_cap;
  if (lambda > cap * (1.0 + 1e-12))
    throw StabilityError("load beyond the stability boundary of this policy");
  if (lambda >= cap * (1.0 - 1e-12))
    return prof.tail_rate;  // limit of (s/lambda) F/(1+F) as F diverges
  const double F = generating_fn(lambda / s);
  return (s / lambda) * F / (1.0 + F);
}

}  // namespace qstaff
