#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace movingwell {

using cplx = std::complex<double>;

/// Uniform grid of n_points nodes spanning [lo, hi], endpoints included.
class SpatialGrid {
 public:
  SpatialGrid(double lo, double hi, std::size_t n_points);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  std::size_t size() const { return n_; }
  double spacing() const { return (hi_ - lo_) / static_cast<double>(n_ - 1); }
  double point(std::size_t i) const;
  std::vector<double> points() const;

  bool same_as(const SpatialGrid& other, double rel_tol = 1e-12) const;

 private:
  double lo_;
  double hi_;
  std::size_t n_;
};

enum class Frame { lab_x, comoving_y };

/// A wavefunction sampled on a uniform grid: psi(x, .) in the lab frame or
/// phi(y, .) in the comoving frame.
struct ComplexField {
  ComplexField(SpatialGrid grid, std::vector<cplx> values,
               Frame frame = Frame::lab_x);

  /// Samples f at every grid point.
  static ComplexField sample(const SpatialGrid& grid,
                             const std::function<cplx(double)>& f,
                             Frame frame = Frame::lab_x);

  SpatialGrid grid;
  std::vector<cplx> values;
  Frame frame;
};

/// Trapezoidal approximation of the integral of conj(f) g over the grid.
cplx inner_product(const ComplexField& f, const ComplexField& g);
double l2_norm(const ComplexField& f);

/// |<f, g>| / (|f| |g|), in [0, 1].
double fidelity(const ComplexField& f, const ComplexField& g);

/// sqrt(integral |f - g|^2); same grid required.
double l2_distance(const ComplexField& f, const ComplexField& g);

double max_abs_difference(const ComplexField& f, const ComplexField& g);

/// Cubic-spline interpolation of Re and Im onto `grid`. Target points
/// outside the source domain get exactly zero (Dirichlet walls).
ComplexField resample(const ComplexField& f, const SpatialGrid& grid);

/// Evaluates a natural cubic spline of a field at arbitrary points; zero
/// outside the field's domain.
class FieldInterpolator {
 public:
  explicit FieldInterpolator(const ComplexField& f);
  cplx operator()(double x) const;
  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  double lo_;
  double hi_;
  double h_;
  std::vector<cplx> y_;
  std::vector<cplx> m_;
};

}  // namespace movingwell
