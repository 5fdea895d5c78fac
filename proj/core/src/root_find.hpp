#pragma once

// Internal root-finding helpers shared by the solver modules.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "qstaff/errors.hpp"

namespace qstaff::detail {

struct RootResult {
  double x = 0.0;
  double fx = 0.0;
  int iterations = 0;
};

// Bisection for a function with f(lo) and f(hi) of opposite sign.
// Stops when the bracket shrinks below xtol or |f| drops below ftol.
template <class F>
RootResult bisect(F&& f, double lo, double hi, double flo, double fhi,
                  double xtol, double ftol, int max_iter = 200) {
  if (flo == 0.0) return {lo, 0.0, 0};
  if (fhi == 0.0) return {hi, 0.0, 0};
  if ((flo > 0) == (fhi > 0))
    throw ConvergenceError("bisect: endpoints do not bracket a root");
  RootResult r;
  for (r.iterations = 0; r.iterations < max_iter; ++r.iterations) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    r.x = mid;
    r.fx = fmid;
    if (fmid == 0.0) break;
    if ((fmid > 0) == (flo > 0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
      fhi = fmid;
    }
    if (hi - lo <= xtol && std::abs(fmid) <= ftol) break;
  }
  return r;
}

// Newton iteration safeguarded by a sign-changing bracket [lo, hi].
// Any step leaving the bracket, or shrinking it too slowly, falls back to
// bisection. `df` may return 0; the fallback covers that case too.
template <class F, class DF>
RootResult newton_bisect(F&& f, DF&& df, double lo, double hi, double x0,
                         double ftol, double xtol, int max_iter = 100) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return {lo, 0.0, 0};
  if (fhi == 0.0) return {hi, 0.0, 0};
  if ((flo > 0) == (fhi > 0))
    throw ConvergenceError("newton_bisect: endpoints do not bracket a root");
  double x = std::clamp(x0, lo, hi);
  RootResult r;
  for (r.iterations = 1; r.iterations <= max_iter; ++r.iterations) {
    const double fx = f(x);
    r.x = x;
    r.fx = fx;
    if (std::abs(fx) <= ftol) return r;
    if ((fx > 0) == (flo > 0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
      fhi = fx;
    }
    if (hi - lo <= xtol * std::max(1.0, std::abs(x))) return r;
    const double d = df(x);
    double next = (d != 0.0 && std::isfinite(d)) ? x - fx / d : lo;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
  }
  return r;
}

// Golden-section search for the maximum of a unimodal function on [a, b].
template <class F>
double golden_max(F&& f, double a, double b, double xtol, int max_iter = 400) {
  constexpr double invphi = 0.6180339887498949;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < max_iter && (b - a) > xtol; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

// Locates every sign change of f on an n-point grid over [lo, hi] and
// refines each bracketed root by bisection. Resolution-limited by n.
template <class F>
std::vector<double> scan_roots(F&& f, double lo, double hi, int n,
                               double xtol, double ftol) {
  std::vector<double> roots;
  double xprev = lo, fprev = f(lo);
  for (int i = 1; i < n; ++i) {
    const double x = lo + (hi - lo) * i / (n - 1);
    const double fx = f(x);
    if (fprev == 0.0) {
      roots.push_back(xprev);
    } else if (fx != 0.0 && (fx > 0) != (fprev > 0)) {
      roots.push_back(bisect(f, xprev, x, fprev, fx, xtol, ftol).x);
    }
    xprev = x;
    fprev = fx;
  }
  if (fprev == 0.0) roots.push_back(xprev);
  return roots;
}

}  // namespace qstaff::detail
