#pragma once

// Scalar root finding: safeguarded Newton inside a sign-changing bracket, and
// a sampling pass that collects every bracket on an interval.

#include <cmath>
#include <limits>
#include <tuple>
#include <sstream>
#include <utility>
#include <vector>

#include "disslab/error.hpp"

namespace disslab::roots {

struct Tolerance {
  double abs_x = 1e-15;
  double abs_f = 1e-12;
  int max_iter = 200;
};

/// Root of f in [lo, hi] where f(lo) and f(hi) have opposite signs (or one is zero).
/// `fdf(x)` returns {f(x), f'(x)}. Newton steps that leave the bracket or stall fall
/// back to bisection, so the result is guaranteed to stay bracketed.
template <class FDF>
double safeguarded_newton(FDF&& fdf, double lo, double hi, const Tolerance& tol = {}) {
  auto [flo, dlo] = fdf(lo);
  auto [fhi, dhi] = fdf(hi);
  (void)dlo;
  (void)dhi;
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    std::ostringstream msg;
    msg << "root not bracketed: f(" << lo << ") = " << flo << ", f(" << hi << ") = " << fhi;
    throw NumericalError(msg.str());
  }
  if (flo > 0.0) std::swap(lo, hi);  // keep f(lo) < 0 < f(hi)

  double x = 0.5 * (lo + hi);
  double step_prev = std::abs(hi - lo);
  double step = step_prev;
  auto [f, df] = fdf(x);
  for (int it = 0; it < tol.max_iter; ++it) {
    if (f == 0.0) return x;
    if (f < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const bool newton_leaves = ((x - hi) * df - f) * ((x - lo) * df - f) > 0.0;
    const bool newton_slow = std::abs(2.0 * f) > std::abs(step_prev * df);
    step_prev = step;
    if (!std::isfinite(df) || df == 0.0 || newton_leaves || newton_slow) {
      step = 0.5 * (hi - lo);
      x = lo + step;
    } else {
      step = f / df;
      x -= step;
    }
    const double width = std::abs(hi - lo);
    if (std::abs(step) <= tol.abs_x * (1.0 + std::abs(x)) ||
        width <= 4.0 * std::numeric_limits<double>::epsilon() * (std::abs(lo) + std::abs(hi))) {
      return x;
    }
    std::tie(f, df) = fdf(x);
  }
  if (std::abs(f) <= tol.abs_f) return x;
  std::ostringstream msg;
  msg << "safeguarded Newton did not converge in " << tol.max_iter << " iterations (x = " << x
      << ", f = " << f << ")";
  throw NumericalError(msg.str());
}

/// Sample f on `samples` uniform points of [lo, hi] and return every subinterval
/// on which f changes sign. A sample that is exactly zero yields the degenerate
/// bracket [x, x].
template <class F>
std::vector<std::pair<double, double>> sign_changes(F&& f, double lo, double hi, int samples) {
  std::vector<std::pair<double, double>> out;
  if (samples < 2) samples = 2;
  const double dx = (hi - lo) / (samples - 1);
  double x_prev = lo;
  double f_prev = f(lo);
  if (f_prev == 0.0) out.emplace_back(lo, lo);
  for (int i = 1; i < samples; ++i) {
    const double x = (i == samples - 1) ? hi : lo + i * dx;
    const double fx = f(x);
    if (fx == 0.0) {
      out.emplace_back(x, x);
    } else if (f_prev != 0.0 && ((f_prev > 0.0) != (fx > 0.0))) {
      out.emplace_back(x_prev, x);
    }
    x_prev = x;
    f_prev = fx;
  }
  return out;
}

}  // namespace disslab::roots
