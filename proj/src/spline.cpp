#include "movingwell/spline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace movingwell {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) {
    throw std::invalid_argument("CubicSpline: need >= 2 matching samples");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(x_[i] > x_[i - 1])) {
      throw std::invalid_argument("CubicSpline: abscissae must increase");
    }
  }
  const double h0 = x_[1] - x_[0];
  uniform_ = true;
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs((x_[i] - x_[i - 1]) - h0) > 1e-9 * h0) {
      uniform_ = false;
      break;
    }
  }

  m_.assign(n, 0.0);
  if (n == 2) return;

  // Tridiagonal system for interior second derivatives (Thomas algorithm;
  // the matrix is strictly diagonally dominant).
  const std::size_t k = n - 2;
  std::vector<double> diag(k), upper(k), rhs(k);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hl = x_[i] - x_[i - 1];
    const double hr = x_[i + 1] - x_[i];
    diag[i - 1] = 2.0 * (hl + hr);
    upper[i - 1] = hr;
    rhs[i - 1] = 6.0 * ((y_[i + 1] - y_[i]) / hr - (y_[i] - y_[i - 1]) / hl);
  }
  for (std::size_t i = 1; i < k; ++i) {
    const double lower = x_[i + 1] - x_[i];  // h_{i}, sub-diagonal entry
    const double w = lower / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  m_[k] = rhs[k - 1] / diag[k - 1];
  for (std::size_t i = k - 1; i >= 1; --i) {
    m_[i] = (rhs[i - 1] - upper[i - 1] * m_[i + 1]) / diag[i - 1];
  }
}

std::size_t CubicSpline::segment(double x) const {
  const std::size_t n = x_.size();
  if (x <= x_[0]) return 0;
  if (x >= x_[n - 1]) return n - 2;
  if (uniform_) {
    const double h = (x_[n - 1] - x_[0]) / static_cast<double>(n - 1);
    auto i = static_cast<std::size_t>((x - x_[0]) / h);
    i = std::min(i, n - 2);
    // guard against rounding at knot boundaries
    if (x < x_[i] && i > 0) --i;
    if (x > x_[i + 1] && i + 2 < n) ++i;
    return i;
  }
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  return static_cast<std::size_t>(it - x_.begin()) - 1;
}

double CubicSpline::value(double x) const {
  const std::size_t i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - x) / h;
  const double b = (x - x_[i]) / h;
  return a * y_[i] + b * y_[i + 1] +
         ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double CubicSpline::derivative(double x) const {
  const std::size_t i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - x) / h;
  const double b = (x - x_[i]) / h;
  return (y_[i + 1] - y_[i]) / h -
         (3.0 * a * a - 1.0) / 6.0 * h * m_[i] +
         (3.0 * b * b - 1.0) / 6.0 * h * m_[i + 1];
}

double CubicSpline::second_derivative(double x) const {
  const std::size_t i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - x) / h;
  const double b = (x - x_[i]) / h;
  return a * m_[i] + b * m_[i + 1];
}

}  // namespace movingwell
