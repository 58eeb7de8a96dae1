#pragma once

#include <span>
#include <vector>

namespace movingwell {

/// Natural cubic spline through (x_i, y_i), x strictly increasing.
/// C2 everywhere, second derivative zero at both ends. Evaluation outside
/// [x_0, x_n] extrapolates the end cubic; callers clip where they need to.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const { return value(x); }
  double value(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;

  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }
  bool empty() const { return x_.empty(); }

 private:
  std::size_t segment(double x) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> m_;  // second derivatives at the knots
  bool uniform_ = false;
};

}  // namespace movingwell
