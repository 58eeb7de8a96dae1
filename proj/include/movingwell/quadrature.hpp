#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "movingwell/errors.hpp"

namespace movingwell {

namespace detail {

template <typename F>
double simpson_step(const F& f, double a, double fa, double b, double fb,
                    double m, double fm, double whole, double tol, int depth,
                    int& evals) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  evals += 2;
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol ||
      // interval collapsed to rounding level
      std::abs(b - a) <= 4.0 * std::numeric_limits<double>::epsilon() *
                             std::max(std::abs(a), std::abs(b))) {
    return left + right + delta / 15.0;
  }
  return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1,
                      evals) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1,
                      evals);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance tol.
/// The interval is pre-split into `panels` pieces so that narrow features
/// are not missed by the first coarse estimate.
template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol = 1e-12,
                        int max_depth = 48, int panels = 16) {
  if (a == b) return 0.0;
  double sum = 0.0;
  int evals = 0;
  const double width = (b - a) / panels;
  for (int k = 0; k < panels; ++k) {
    const double lo = a + k * width;
    const double hi = (k + 1 == panels) ? b : a + (k + 1) * width;
    const double mid = 0.5 * (lo + hi);
    const double flo = f(lo);
    const double fhi = f(hi);
    const double fmid = f(mid);
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    sum += detail::simpson_step(f, lo, flo, hi, fhi, mid, fmid, whole,
                                tol / panels, max_depth, evals);
  }
  if (!std::isfinite(sum)) {
    throw NumericalFailure("adaptive_simpson: non-finite integral");
  }
  return sum;
}

/// adaptive_simpson with the absolute tolerance scaled to the size of the
/// integrand: rel_tol * |b - a| * max|f| over a coarse sample.
template <typename F>
double integrate(const F& f, double a, double b, double rel_tol = 1e-12) {
  if (a == b) return 0.0;
  double peak = 0.0;
  constexpr int kProbe = 33;
  for (int k = 0; k < kProbe; ++k) {
    const double x = a + (b - a) * k / (kProbe - 1.0);
    peak = std::max(peak, std::abs(f(x)));
  }
  if (!std::isfinite(peak)) {
    throw NumericalFailure("integrate: non-finite integrand");
  }
  if (peak == 0.0) return 0.0;
  return adaptive_simpson(f, a, b, rel_tol * std::abs(b - a) * peak);
}

/// Solves g(t) = target for a strictly increasing g on [lo, hi] with
/// g(lo) <= target <= g(hi). Bisection keeps the bracket; Newton steps
/// using dg (the derivative) polish the root.
double solve_increasing(const std::function<double(double)>& g,
                        const std::function<double(double)>& dg, double target,
                        double lo, double hi, double rel_tol = 1e-12);

}  // namespace movingwell
