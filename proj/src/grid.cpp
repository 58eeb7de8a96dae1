#include "movingwell/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "movingwell/errors.hpp"

namespace movingwell {

SpatialGrid::SpatialGrid(double lo, double hi, std::size_t n_points)
    : lo_(lo), hi_(hi), n_(n_points) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("SpatialGrid: need finite lo < hi");
  }
  if (n_points < 3) {
    throw std::invalid_argument("SpatialGrid: need at least 3 points");
  }
}

double SpatialGrid::point(std::size_t i) const {
  if (i + 1 == n_) return hi_;
  return lo_ + static_cast<double>(i) * spacing();
}

std::vector<double> SpatialGrid::points() const {
  std::vector<double> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = point(i);
  return out;
}

bool SpatialGrid::same_as(const SpatialGrid& other, double rel_tol) const {
  const double scale = std::max(hi_ - lo_, other.hi_ - other.lo_);
  return n_ == other.n_ && std::abs(lo_ - other.lo_) <= rel_tol * scale &&
         std::abs(hi_ - other.hi_) <= rel_tol * scale;
}

ComplexField::ComplexField(SpatialGrid g, std::vector<cplx> v, Frame f)
    : grid(g), values(std::move(v)), frame(f) {
  if (values.size() != grid.size()) {
    throw std::invalid_argument("ComplexField: values/grid size mismatch");
  }
}

ComplexField ComplexField::sample(const SpatialGrid& grid,
                                  const std::function<cplx(double)>& f,
                                  Frame frame) {
  std::vector<cplx> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = f(grid.point(i));
  return ComplexField(grid, std::move(v), frame);
}

cplx inner_product(const ComplexField& f, const ComplexField& g) {
  if (!f.grid.same_as(g.grid)) {
    throw GridMismatch("inner_product: fields live on different grids");
  }
  const std::size_t n = f.values.size();
  cplx sum = 0.5 * (std::conj(f.values.front()) * g.values.front() +
                    std::conj(f.values.back()) * g.values.back());
  for (std::size_t i = 1; i + 1 < n; ++i) {
    sum += std::conj(f.values[i]) * g.values[i];
  }
  return sum * f.grid.spacing();
}

double l2_norm(const ComplexField& f) {
  return std::sqrt(std::max(0.0, inner_product(f, f).real()));
}

double fidelity(const ComplexField& f, const ComplexField& g) {
  const double nf = l2_norm(f);
  const double ng = l2_norm(g);
  if (nf == 0.0 || ng == 0.0) return 0.0;
  return std::abs(inner_product(f, g)) / (nf * ng);
}

double l2_distance(const ComplexField& f, const ComplexField& g) {
  if (!f.grid.same_as(g.grid)) {
    throw GridMismatch("l2_distance: fields live on different grids");
  }
  std::vector<cplx> d(f.values.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = f.values[i] - g.values[i];
  return l2_norm(ComplexField(f.grid, std::move(d), f.frame));
}

double max_abs_difference(const ComplexField& f, const ComplexField& g) {
  if (!f.grid.same_as(g.grid)) {
    throw GridMismatch("max_abs_difference: fields live on different grids");
  }
  double m = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    m = std::max(m, std::abs(f.values[i] - g.values[i]));
  }
  return m;
}

FieldInterpolator::FieldInterpolator(const ComplexField& f)
    : lo_(f.grid.lo()), hi_(f.grid.hi()), h_(f.grid.spacing()), y_(f.values) {
  // Natural spline on a uniform grid: tridiagonal [1 4 1] system scaled by
  // 6/h^2, solved once for the complex second derivatives.
  const std::size_t n = y_.size();
  m_.assign(n, cplx(0.0));
  const std::size_t k = n - 2;
  std::vector<double> diag(k, 4.0);
  std::vector<cplx> rhs(k);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    rhs[i - 1] = 6.0 * (y_[i + 1] - 2.0 * y_[i] + y_[i - 1]) / (h_ * h_);
  }
  for (std::size_t i = 1; i < k; ++i) {
    const double w = 1.0 / diag[i - 1];
    diag[i] -= w;
    rhs[i] -= w * rhs[i - 1];
  }
  m_[k] = rhs[k - 1] / diag[k - 1];
  for (std::size_t i = k - 1; i >= 1; --i) {
    m_[i] = (rhs[i - 1] - m_[i + 1]) / diag[i - 1];
  }
}

cplx FieldInterpolator::operator()(double x) const {
  const double span = hi_ - lo_;
  const double tol = 1e-12 * span;
  if (x < lo_ - tol || x > hi_ + tol) return cplx(0.0);
  const std::size_t n = y_.size();
  const double u = std::clamp((x - lo_) / h_, 0.0, static_cast<double>(n - 1));
  std::size_t i = std::min(static_cast<std::size_t>(u), n - 2);
  const double b = u - static_cast<double>(i);
  const double a = 1.0 - b;
  return a * y_[i] + b * y_[i + 1] +
         ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * (h_ * h_ / 6.0);
}

ComplexField resample(const ComplexField& f, const SpatialGrid& grid) {
  if (f.grid.same_as(grid, 0.0)) return f;
  const FieldInterpolator interp(f);
  return ComplexField::sample(
      grid, [&](double x) { return interp(x); }, f.frame);
}

}  // namespace movingwell
