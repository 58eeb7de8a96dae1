#pragma once

#include <functional>

#include "movingwell/grid.hpp"
#include "movingwell/trajectory.hpp"
#include "movingwell/units.hpp"

namespace movingwell {

/// Quantum number n >= 1.
class ModeIndex {
 public:
  explicit ModeIndex(int n);
  int value() const { return n_; }

 private:
  int n_;
};

/// sqrt(2/w) sin(n pi x / w) for 0 <= x <= w.
cplx static_eigenmode(ModeIndex n, double w, double x);

/// (hbar n pi)^2 / (2 m w^2).
double static_energy(ModeIndex n, double w, const PhysicalParams& params);

/// m (dv x^2 + 2 v1 w0 x - v1^2 w0 t) / (2 hbar w(t)).
double theta_linear(const LinearWalls& walls, double x, double t,
                    const PhysicalParams& params);

/// m dv (x - b)^2 / (2 hbar w(t)). Throws ParallelWalls when dv = 0.
double theta_completed_square(const LinearWalls& walls, double x, double t,
                              const PhysicalParams& params);

/// (m v x - m v^2 t / 2) / hbar. Requires v1 == v2.
double theta_parallel(const LinearWalls& walls, double x, double t,
                      const PhysicalParams& params);

/// b = -v1 w0 / dv, where the two walls cross. Throws ParallelWalls when
/// dv = 0.
double intersection_point(const LinearWalls& walls);

enum class PhaseForm { linear_general, parallel, completed_square, extended };

/// One of the equivalent gauge phases plus an optional additive constant.
struct PhaseSpec {
  PhaseForm form = PhaseForm::linear_general;
  WallTrajectory trajectory = LinearWalls{};
  double constant = 0.0;
};

/// Throws Unsupported when the form needs a Linear trajectory and gets
/// something else.
double evaluate_phase(const PhaseSpec& spec, double x, double t,
                      const PhysicalParams& params);

/// E_n^0 w0 t / (hbar w(t)) for Linear walls, otherwise the quadrature of
/// E_n(t')/hbar over [0, t].
double dynamic_phase(ModeIndex n, const WallTrajectory& traj, double t,
                     const PhysicalParams& params);

/// sqrt(2/w) sin(n pi (x - w1)/w) exp(i theta - i E_n^0 w0 t / (hbar w)).
cplx moving_wall_mode(ModeIndex n, const LinearWalls& walls, double x,
                      double t, const PhysicalParams& params);

/// Lower wall fixed at 0, upper wall w0 + dv t.
cplx doescher_rice_mode(ModeIndex n, double w0, double dv, double x, double t,
                        const PhysicalParams& params);

/// <n(R)| d/dw1 |n(R)> for the instantaneous eigenmode on [w1, w2],
/// evaluated by quadrature of a central-difference derivative.
double berry_connection(ModeIndex n, double w1, double w2);

/// Adiabatic mode for slowly accelerating walls:
/// sqrt(2/w) sin(n pi (x - w1)/w) exp(i theta_ext - (i/hbar) int E_n dt').
cplx slow_accel_mode(ModeIndex n, const WallTrajectory& traj, double x,
                     double t, const PhysicalParams& params);

/// psi(x, t) callable used by schrodinger_residual.
using ModeEvaluator = std::function<cplx(double x, double t)>;

/// max over interior nodes of |i hbar psi_t + (hbar^2/2m) psi_xx|, divided by
/// max |(hbar^2/2m) psi_xx|. Central differences in both x and t.
double schrodinger_residual(const ModeEvaluator& psi, const SpatialGrid& grid,
                            double t, double dt, const PhysicalParams& params);

}  // namespace movingwell
