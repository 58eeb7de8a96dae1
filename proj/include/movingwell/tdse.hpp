#pragma once

#include <span>
#include <string>
#include <vector>

#include "movingwell/grid.hpp"
#include "movingwell/trajectory.hpp"
#include "movingwell/units.hpp"

namespace movingwell {

/// Crank-Nicolson settings for the compact fourth-order (Numerov) scheme. Steps are counted per unit of the dimensionless
/// comoving time s = hbar tau / m, which is tau itself in natural units.
struct SolverConfig {
  std::size_t n_points = 1024;
  double steps_per_unit = 16384.0;

  /// Throws std::invalid_argument for n_points < 64 or steps_per_unit <= 0.
  void validate() const;
  /// ds <= h, the sanity bound on the step size.
  bool step_ok() const;
};

/// exp(-(x - x0)^2 / (4 width^2)) exp(i p x / hbar): |psi|^2 has standard
/// deviation `width`. Set to zero at both grid ends and normalised. Throws
/// DegeneratePacket when the part cut off by the walls carries more than
/// half the untruncated L2 norm.
ComplexField gaussian_packet(double center, double width, double momentum,
                             const SpatialGrid& grid,
                             const PhysicalParams& params,
                             Frame frame = Frame::lab_x);

/// <p> = hbar Im int conj(psi) psi_x, fourth-order central differences.
double mean_momentum(const ComplexField& psi, const PhysicalParams& params);

/// Solves i hbar phi_tau = -(hbar^2/2m) phi_yy + (f y + k y^2/2) phi on
/// [0, 1] with phi = 0 at both ends, f and k taken from the trajectory at
/// t(tau). Returns the field at each requested tau (nondecreasing, >= 0).
std::vector<ComplexField> evolve_comoving(const ComplexField& phi0,
                                          const WallTrajectory& traj,
                                          std::span<const double> taus,
                                          const SolverConfig& config,
                                          const PhysicalParams& params);

/// Lab-frame evolution: comoving transform at t = 0, evolve_comoving, inverse
/// transform at each requested t (nondecreasing, >= 0). Fields are returned
/// on [w1(t), w2(t)].
std::vector<ComplexField> evolve_lab(const ComplexField& psi0,
                                     const WallTrajectory& traj,
                                     std::span<const double> times,
                                     const SolverConfig& config,
                                     const PhysicalParams& params);

/// |psi(x, t)|^2 on a fixed lab rectangle covering every wall position.
struct CarpetRecord {
  std::vector<double> x;
  std::vector<double> t;
  std::vector<cplx> amplitude;  // t-major: amplitude[i * x.size() + j]
  std::vector<double> density;  // |amplitude|^2, same layout
  std::vector<double> slice_norm;
  std::string trajectory;
  std::string params;
  std::string packet;

  double at(std::size_t it, std::size_t ix) const {
    return density[it * x.size() + ix];
  }
};

/// n_t uniform samples on [0, t_max]; n_x columns (0 selects n_points).
CarpetRecord carpet(const ComplexField& psi0, const WallTrajectory& traj,
                    double t_max, std::size_t n_t, const SolverConfig& config,
                    const PhysicalParams& params, std::size_t n_x = 0);

namespace detail {

/// Solves a complex tridiagonal system in place (rhs becomes the solution).
/// sub[i] = A(i+1, i) and sup[i] = A(i, i+1), both of length n - 1.
/// Thomas elimination, switching to partial pivoting if a pivot is tiny.
void solve_tridiagonal(std::span<const cplx> sub, std::span<const cplx> diag,
                       std::span<const cplx> sup, std::span<cplx> rhs);

}  // namespace detail

}  // namespace movingwell
