#include "movingwell/quadrature.hpp"

#include <algorithm>

namespace movingwell {

double solve_increasing(const std::function<double(double)>& g,
                        const std::function<double(double)>& dg, double target,
                        double lo, double hi, double rel_tol) {
  if (!(lo <= hi)) throw NumericalFailure("solve_increasing: empty bracket");
  double glo = g(lo) - target;
  double ghi = g(hi) - target;
  if (glo > 0.0 || ghi < 0.0) {
    throw NumericalFailure("solve_increasing: target not bracketed");
  }
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;

  double t = 0.5 * (lo + hi);
  for (int iter = 0; iter < 400; ++iter) {
    const double gt = g(t) - target;
    if (gt == 0.0) return t;
    if (gt < 0.0) {
      lo = t;
    } else {
      hi = t;
    }
    const double scale = std::max({std::abs(lo), std::abs(hi), 1e-300});
    if (hi - lo <= rel_tol * scale) return 0.5 * (lo + hi);

    const double slope = dg(t);
    double next = t - gt / slope;
    if (!(slope > 0.0) || !(next > lo && next < hi)) {
      next = 0.5 * (lo + hi);
    } else if (std::abs(next - t) <= rel_tol * std::max(std::abs(t), 1e-300)) {
      return next;
    }
    t = next;
  }
  throw NumericalFailure("solve_increasing: no convergence");
}

}  // namespace movingwell
