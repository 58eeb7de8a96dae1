#pragma once

#include <cstddef>
#include <vector>

#include "movingwell/grid.hpp"
#include "movingwell/units.hpp"

namespace movingwell {

/// Delta V(y) = f y + k y^2 / 2 on [0, 1], frozen at one instant.
struct PerturbingPotential {
  double f = 0.0;
  double k = 0.0;

  double operator()(double y) const { return f * y + 0.5 * k * y * y; }
  PerturbingPotential scaled(double eps) const { return {eps * f, eps * k}; }
};

/// int_0^1 Delta V = f/2 + k/6.
double integral_delta_v(const PerturbingPotential& pot);

/// hbar^2 n^2 pi^2 / 2m + int Delta V.
double wkb_energy(int n, const PerturbingPotential& pot,
                  const PhysicalParams& params);

/// sqrt(2) sin(n pi y + (m / (hbar^2 n pi)) [f y(1-y)/2 + k y(1-y^2)/6]).
double wkb_mode(int n, const PerturbingPotential& pot, double y,
                const PhysicalParams& params);

/// Eigenpairs of -(hbar^2/2m) d^2/dy^2 + Delta V in the basis
/// sqrt(2) sin(j pi y), j = 1..n_basis.
struct SineBasisSpectrum {
  std::vector<double> energies;                   // ascending
  std::vector<std::vector<double>> coefficients;  // coefficients[level][j-1]

  /// Eigenfunction `level` (0-based) at y.
  double mode(std::size_t level, double y) const;
  ComplexField mode_field(std::size_t level, const SpatialGrid& grid) const;
};

/// Matrix elements of Delta V by composite Simpson quadrature. Each
/// eigenvector is signed so that its largest coefficient is positive.
SineBasisSpectrum sine_basis_oracle(const PerturbingPotential& pot,
                                    std::size_t n_basis,
                                    const PhysicalParams& params);

}  // namespace movingwell
