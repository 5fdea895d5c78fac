// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Reference values for the dimensioning tables are the
// published three-decimal figures; everything else is checked against
// closed forms, independent oracles, or scaling trends.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qstaff/bistability.hpp"
#include "qstaff/erlang.hpp"
#include "qstaff/gaussian.hpp"
#include "qstaff/performance.hpp"
#include "qstaff/report.hpp"
#include "qstaff/retrials.hpp"
#include "qstaff/staffing.hpp"

using namespace qstaff;

namespace {

struct TableRef {
  double eps, lambda_opt, lambda_star, lambda_bullet, r_bullet, at_star,
      at_bullet;
};

// p = 0.1, rejection variant, no retrials
const std::vector<TableRef> kTable1 = {
    {0.010, 75.324, 72.836, 75.409, 2.573, 0.004, 0.010},
    {0.020, 77.554, 75.504, 77.621, 2.117, 0.011, 0.020},
    {0.030, 78.996, 77.201, 79.053, 1.852, 0.018, 0.030},
    {0.040, 80.096, 78.479, 80.146, 1.667, 0.026, 0.041},
    {0.050, 80.999, 79.519, 81.045, 1.525, 0.034, 0.051},
    {0.060, 81.774, 80.405, 81.816, 1.411, 0.043, 0.061},
    {0.070, 82.458, 81.181, 82.497, 1.315, 0.052, 0.071},
    {0.080, 83.073, 81.876, 83.110, 1.234, 0.061, 0.081},
    {0.090, 83.636, 82.507, 83.671, 1.164, 0.071, 0.091},
    {0.100, 84.157, 83.088, 84.190, 1.102, 0.080, 0.101},
};

// p = 0.5, rejection variant, no retrials
const std::vector<TableRef> kTable2 = {
    {0.010, 75.910, 72.836, 76.298, 3.462, 0.003, 0.011},
    {0.020, 78.162, 75.504, 78.510, 3.006, 0.009, 0.022},
    {0.030, 79.619, 77.201, 79.942, 2.741, 0.015, 0.033},
    {0.040, 80.730, 78.479, 81.035, 2.556, 0.022, 0.043},
    {0.050, 81.642, 79.519, 81.933, 2.414, 0.029, 0.054},
    {0.060, 82.425, 80.405, 82.705, 2.300, 0.037, 0.064},
    {0.070, 83.116, 81.181, 83.386, 2.204, 0.045, 0.074},
    {0.080, 83.738, 81.876, 83.999, 2.123, 0.053, 0.084},
    {0.090, 84.307, 82.507, 84.560, 2.053, 0.061, 0.095},
    {0.100, 84.832, 83.088, 85.078, 1.991, 0.070, 0.105},
};

// p = 0.1, rejection variant, with retrials
const std::vector<TableRef> kTable3 = {
    {0.010, 75.249, 72.736, 75.336, 2.600, 0.004, 0.010},
    {0.020, 77.399, 75.304, 77.470, 2.166, 0.010, 0.020},
    {0.030, 78.759, 76.901, 78.822, 1.921, 0.018, 0.031},
    {0.040, 79.775, 78.079, 79.832, 1.753, 0.025, 0.041},
    {0.050, 80.594, 79.019, 80.647, 1.628, 0.034, 0.051},
    {0.060, 81.283, 79.805, 81.333, 1.528, 0.042, 0.061},
    {0.070, 81.880, 80.481, 81.929, 1.447, 0.051, 0.071},
    {0.080, 82.409, 81.076, 82.455, 1.379, 0.059, 0.081},
    {0.090, 82.884, 81.607, 82.929, 1.321, 0.068, 0.091},
    {0.100, 83.315, 82.088, 83.359, 1.271, 0.077, 0.101},
};

// p = 0.5, rejection variant, with retrials
const std::vector<TableRef> kTable4 = {
    {0.010, 75.834, 72.736, 76.225, 3.489, 0.003, 0.011},
    {0.020, 78.006, 75.304, 78.359, 3.055, 0.009, 0.022},
    {0.030, 79.380, 76.901, 79.711, 2.810, 0.015, 0.033},
    {0.040, 80.407, 78.079, 80.721, 2.642, 0.021, 0.043},
    {0.050, 81.234, 79.019, 81.536, 2.516, 0.028, 0.054},
    {0.060, 81.930, 79.805, 82.222, 2.417, 0.036, 0.064},
    {0.070, 82.534, 80.481, 82.817, 2.336, 0.043, 0.074},
    {0.080, 83.068, 81.076, 83.344, 2.268, 0.051, 0.085},
    {0.090, 83.548, 81.607, 83.817, 2.210, 0.059, 0.095},
    {0.100, 83.984, 82.088, 84.248, 2.160, 0.067, 0.105},
};

bool table_matches(const TableReport& report, const std::vector<TableRef>& ref,
                   double tol, std::string& detail) {
  if (report.rows.size() != ref.size()) {
    detail = "row count mismatch";
    return false;
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const TableRow& row = report.rows[i];
    const TableRef& want = ref[i];
    const double errs[] = {
        std::abs(row.lambda_opt - want.lambda_opt),
        std::abs(row.lambda_star - want.lambda_star),
        std::abs(row.lambda_bullet - want.lambda_bullet),
        std::abs(row.r_bullet - want.r_bullet),
        std::abs(row.constraint_at_star - want.at_star),
        std::abs(row.constraint_at_bullet - want.at_bullet)};
    for (double e : errs) worst = std::max(worst, e);
  }
  std::ostringstream os;
  os << "max column deviation " << worst << " (tol " << tol << ")";
  detail = os.str();
  return worst <= tol;
}

bool check_table(double p, bool retrials, const std::vector<TableRef>& ref,
                 bool timed, std::string& detail) {
  const auto start = std::chrono::steady_clock::now();
  const TableReport report =
      make_table(100, Policy::bernoulli(p), Variant::rejection, retrials, {});
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  // compare through the serialized form, so the emitted table itself is what
  // reproduces the reference figures
  const TableReport parsed = parse_table_csv(emit(report, Format::csv));
  bool ok = table_matches(parsed, ref, 2e-3, detail);
  if (timed) {
    std::ostringstream os;
    os << detail << ", runtime " << seconds << " s";
    detail = os.str();
    ok = ok && seconds < 1.0;
  }
  return ok;
}

bool criterion1(std::string& d) { return check_table(0.1, false, kTable1, true, d); }
bool criterion2(std::string& d) { return check_table(0.5, false, kTable2, false, d); }

bool criterion3(std::string& d) {
  std::string d3, d4;
  const bool ok3 = check_table(0.1, true, kTable3, false, d3);
  const bool ok4 = check_table(0.5, true, kTable4, false, d4);
  d = "retrial tables: " + d3 + " / " + d4;
  return ok3 && ok4;
}

bool criterion4(std::string& d) {
  const double g1 = carried_traffic_argmax(1);
  const double ginf = carried_traffic_argmax_limit();
  const double g550 = carried_traffic_argmax(550);
  bool increasing = true;
  double prev = 0.0;
  for (int s : {1, 2, 5, 10, 50, 100, 550}) {
    const double g = carried_traffic_argmax(s);
    increasing = increasing && g > prev;
    prev = g;
  }
  std::ostringstream os;
  os << "argmax(1)=" << g1 << ", limit=" << ginf << ", argmax(550)=" << g550
     << ", strictly increasing=" << (increasing ? "yes" : "no");
  d = os.str();
  return std::abs(g1 - 0.5) <= 1e-10 &&
         std::abs(ginf - 1.034113461) <= 1e-6 && g550 > 0.99 && g550 < 1.01 &&
         increasing;
}

std::vector<Policy> oracle_policies() {
  return {Policy::loss(), Policy::delay(), Policy::bernoulli(0.3),
          Policy::threshold(5)};
}

bool criterion5(std::string& d) {
  double worst = 0.0;
  for (int s = 1; s <= 20; ++s) {
    for (double frac : {0.2, 0.5, 0.8, 0.95}) {
      const double lambda = frac * s;
      for (const Policy& pol : oracle_policies()) {
        const StationaryDistribution dist = stationary_oracle(s, lambda, pol);
        worst = std::max(
            worst, std::abs(all_busy_prob(s, lambda, pol) - dist.all_busy));
        worst = std::max(
            worst, std::abs(rejection_prob(s, lambda, pol) - dist.rejection));
      }
    }
  }
  std::ostringstream os;
  os << "max |closed form - chain oracle| = " << worst;
  d = os.str();
  return worst <= 1e-10;
}

bool criterion6(std::string& d) {
  double worst = 0.0;
  for (int s = 1; s <= 20; ++s) {
    for (double frac : {0.2, 0.5, 0.8, 0.95}) {
      const double lambda = frac * s;
      for (const Policy& pol : oracle_policies()) {
        const MeasureSet m = decomposed_measures(s, lambda, pol);
        const double busy = all_busy_prob(s, lambda, pol);
        const double rej = rejection_prob(s, lambda, pol);
        worst = std::max(worst, std::abs(m.all_busy - busy) /
                                    std::max({busy, m.all_busy, 1e-3}));
        worst = std::max(worst, std::abs(m.rejection - rej) /
                                    std::max({rej, m.rejection, 1e-3}));
      }
    }
  }
  std::ostringstream os;
  os << "max relative route disagreement = " << worst;
  d = os.str();
  return worst <= 1e-12;
}

bool criterion7(std::string& d) {
  const Policy pol = Policy::bernoulli(0.1);
  double worst_ratio = 0.0;
  for (double gamma : {0.5, 1.0, 2.0}) {
    std::vector<double> first, second;
    for (int s = 100; s <= 6400; s *= 2) {
      const double rs = std::sqrt(static_cast<double>(s));
      const double v = qed_measures(s, gamma, pol).rejection_prob;
      first.push_back(rs * std::abs(v - hazard(gamma)));
      second.push_back(
          s * std::abs(v - hazard(gamma) -
                       qed_rejection_correction(gamma, pol) / rs));
    }
    for (const auto& seq : {first, second}) {
      double lo = seq[0], hi = seq[0];
      for (double v : seq) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      worst_ratio = std::max(worst_ratio, hi / lo);
    }
  }
  std::ostringstream os;
  os << "worst band ratio over s-doubling = " << worst_ratio << " (limit 3)";
  d = os.str();
  return worst_ratio < 3.0;
}

bool criterion8(std::string& d) {
  const Policy pol = Policy::bernoulli(0.1);
  const auto rows =
      gap_scan(pol, 0.02, Variant::rejection, false, {100, 400, 1600});
  std::vector<double> scaled;
  std::vector<double> conventional;
  for (const GapRow& row : rows) {
    scaled.push_back(std::sqrt(static_cast<double>(row.servers)) *
                     std::abs(row.gap_refined));
    conventional.push_back(row.gap_conventional);
  }
  const bool refined_flat = scaled[1] <= 1.2 * scaled[0] + 1e-12 &&
                            scaled[2] <= 1.2 * scaled[1] + 1e-12;
  const bool conv_settles =
      std::abs(conventional[1] - conventional[2]) <=
          0.1 * std::abs(conventional[2]) &&
      std::abs(conventional[2]) > 0.1;
  std::ostringstream os;
  os << "sqrt(s)|gap_bullet| = {" << scaled[0] << ", " << scaled[1] << ", "
     << scaled[2] << "}, gap_star = {" << conventional[0] << ", "
     << conventional[1] << ", " << conventional[2] << "}";
  d = os.str();
  return refined_flat && conv_settles;
}

bool criterion9(std::string& d) {
  std::ostringstream os;
  bool ok = true;
  for (int s : {10, 100}) {
    const Policy pol = Policy::bernoulli(0.3);
    const double rs = std::sqrt(static_cast<double>(s));

    const CarriedTrafficResult probe =
        solve_throughput(s, 1e9, pol, Variant::all_busy);
    const double peak = probe.threshold;
    const CarriedTrafficResult two =
        solve_throughput(s, 0.1 * peak, pol, Variant::all_busy);
    ok = ok && two.solution_count == 2;
    for (double lambda : two.solutions) {
      const double lhs = carried_traffic(s, lambda, pol, Variant::all_busy);
      ok = ok && std::abs(lhs - 0.1 * peak) <= 1e-9 * std::max(1.0, 0.1 * peak);
    }

    const CarriedTrafficResult onerej =
        solve_throughput(s, 0.5 * s, pol, Variant::rejection);
    ok = ok && onerej.solution_count == 1;

    const double cap = rs * carried_traffic_max(s);
    const int counts[3] = {
        solve_throughput_retrial(s, 0.5 * cap).solution_count,
        solve_throughput_retrial(s, 1.0 * cap).solution_count,
        solve_throughput_retrial(s, 1.01 * cap).solution_count};
    ok = ok && counts[0] == 2 && counts[1] == 1 && counts[2] == 0;
    os << "s=" << s << ": busy-variant roots=" << two.solution_count
       << ", rejection-variant roots=" << onerej.solution_count
       << ", retrial counts={" << counts[0] << "," << counts[1] << ","
       << counts[2] << "} ";
  }
  d = os.str();
  return ok;
}

bool criterion10(std::string& d) {
  double prev = 1e300;
  bool decreasing = true;
  std::ostringstream os;
  os << "sup profile defect: ";
  for (int s : {1, 5, 10, 50, 100}) {
    double sup = 0.0;
    for (const auto& [delta, value] : carried_traffic_profile(s, 256))
      sup = std::max(sup, std::abs(value - (1.0 - delta)));
    os << sup << " ";
    decreasing = decreasing && sup < prev;
    prev = sup;
  }
  double parabola = 0.0;
  for (const auto& [delta, value] : carried_traffic_profile(1, 256))
    parabola = std::max(parabola, std::abs(value - delta * (1.0 - delta)));
  os << "; single-server parabola defect " << parabola;
  d = os.str();
  return decreasing && parabola <= 1e-10;
}

bool criterion11(std::string& d) {
  const CohenSolution exact = solve_cohen(1, 0.5, Policy::loss());
  bool ok = std::abs(exact.omega - 0.5) <= 1e-10;
  double worst = 0.0;
  for (const Policy& pol : {Policy::loss(), Policy::bernoulli(0.1),
                            Policy::bernoulli(0.5), Policy::threshold(5)}) {
    for (int s : {1, 10, 100}) {
      for (double frac : {0.3, 0.7, 0.95}) {
        const CohenSolution sol = solve_cohen(s, frac * s, pol);
        worst = std::max(worst, sol.residual);
      }
    }
  }
  std::ostringstream os;
  os << "single-server omega = " << exact.omega << ", max residual = " << worst;
  d = os.str();
  return ok && worst < 1e-10;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<bool(std::string&)>>>
      criteria = {
          {"staffing table, strict policy (p=0.1)", criterion1},
          {"staffing table, lenient policy (p=0.5)", criterion2},
          {"staffing tables with retrials", criterion3},
          {"throughput argmax constants", criterion4},
          {"closed forms vs chain oracle", criterion5},
          {"mixture decomposition identity", criterion6},
          {"scaled-measure convergence rates", criterion7},
          {"dimensioning gap scaling", criterion8},
          {"throughput root counts", criterion9},
          {"throughput profile shape", criterion10},
          {"retrial balance exactness", criterion11},
      };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string detail;
    bool ok = false;
    try {
      ok = criteria[i].second(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %2zu: %s — %s\n", ok ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), detail.c_str());
    if (!ok) ++failures;
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
