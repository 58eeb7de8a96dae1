#include "movingwell/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "movingwell/errors.hpp"
#include "movingwell/frames.hpp"
#include "movingwell/quadrature.hpp"

namespace movingwell {

namespace {

constexpr double kPi = std::numbers::pi;

// Positions a few ulps outside a wall still count as on the wall.
bool inside(double x, double lo, double hi) {
  const double tol = 1e-12 * std::max({std::abs(lo), std::abs(hi), hi - lo});
  return x >= lo - tol && x <= hi + tol;
}

[[noreturn]] void out_of_well(double x, double lo, double hi) {
  std::ostringstream os;
  os.precision(17);
  os << "x = " << x << " outside the well [" << lo << ", " << hi << "]";
  throw OutOfDomain(os.str());
}

const LinearWalls& require_linear(const WallTrajectory& traj, const char* who) {
  const auto* l = traj.get_if<LinearWalls>();
  if (!l) throw Unsupported(std::string(who) + " needs linear walls");
  return *l;
}

double sine_profile(int n, double w1, double w, double x) {
  return std::sqrt(2.0 / w) * std::sin(n * kPi * (x - w1) / w);
}

}  // namespace

ModeIndex::ModeIndex(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("ModeIndex: n must be >= 1");
}

cplx static_eigenmode(ModeIndex n, double w, double x) {
  if (!(w > 0.0)) throw std::invalid_argument("static_eigenmode: w <= 0");
  if (!inside(x, 0.0, w)) out_of_well(x, 0.0, w);
  return sine_profile(n.value(), 0.0, w, x);
}

double static_energy(ModeIndex n, double w, const PhysicalParams& params) {
  const double k = params.hbar() * n.value() * kPi;
  return k * k / (2.0 * params.mass() * w * w);
}

double theta_linear(const LinearWalls& walls, double x, double t,
                    const PhysicalParams& params) {
  const double w = walls.width(t);
  const double dv = walls.width_rate();
  const double v1 = walls.v1;
  return params.mass() *
         (dv * x * x + 2.0 * v1 * walls.w0 * x - v1 * v1 * walls.w0 * t) /
         (2.0 * params.hbar() * w);
}

double intersection_point(const LinearWalls& walls) {
  const double dv = walls.width_rate();
  if (dv == 0.0) throw ParallelWalls("intersection_point: parallel walls");
  return -walls.v1 * walls.w0 / dv;
}

double theta_completed_square(const LinearWalls& walls, double x, double t,
                              const PhysicalParams& params) {
  const double b = intersection_point(walls);
  const double dv = walls.width_rate();
  return params.mass() * dv * (x - b) * (x - b) /
         (2.0 * params.hbar() * walls.width(t));
}

double theta_parallel(const LinearWalls& walls, double x, double t,
                      const PhysicalParams& params) {
  if (walls.v1 != walls.v2) {
    throw std::invalid_argument("theta_parallel: walls are not parallel");
  }
  const double v = walls.v1;
  return params.mass() * (v * x - 0.5 * v * v * t) / params.hbar();
}

double evaluate_phase(const PhaseSpec& spec, double x, double t,
                      const PhysicalParams& params) {
  double th = 0.0;
  switch (spec.form) {
    case PhaseForm::linear_general:
      th = theta_linear(require_linear(spec.trajectory, "linear_general"), x,
                        t, params);
      break;
    case PhaseForm::parallel:
      th = theta_parallel(require_linear(spec.trajectory, "parallel"), x, t,
                          params);
      break;
    case PhaseForm::completed_square:
      th = theta_completed_square(
          require_linear(spec.trajectory, "completed_square"), x, t, params);
      break;
    case PhaseForm::extended:
      th = extended_theta(spec.trajectory, x, t, params);
      break;
  }
  return th + spec.constant;
}

double dynamic_phase(ModeIndex n, const WallTrajectory& traj, double t,
                     const PhysicalParams& params) {
  if (const auto* l = traj.get_if<LinearWalls>()) {
    const WallState s = traj.state(t);
    return static_energy(n, l->w0, params) * l->w0 * t /
           (params.hbar() * s.w);
  }
  return integrate(
      [&](double tt) {
        return static_energy(n, traj.state(tt).w, params) / params.hbar();
      },
      0.0, t);
}

cplx moving_wall_mode(ModeIndex n, const LinearWalls& walls, double x,
                      double t, const PhysicalParams& params) {
  const WallState s = WallTrajectory(walls).state(t);
  if (!inside(x, s.w1, s.w2)) out_of_well(x, s.w1, s.w2);
  const double dyn =
      static_energy(n, walls.w0, params) * walls.w0 * t / (params.hbar() * s.w);
  const double phase = theta_linear(walls, x, t, params) - dyn;
  return sine_profile(n.value(), s.w1, s.w, x) * std::polar(1.0, phase);
}

cplx doescher_rice_mode(ModeIndex n, double w0, double dv, double x, double t,
                        const PhysicalParams& params) {
  const double w = w0 + dv * t;
  if (!(w > 0.0)) throw WallCollision("doescher_rice_mode: walls collide");
  if (!inside(x, 0.0, w)) out_of_well(x, 0.0, w);
  const double e0 = static_energy(n, w0, params);
  const double phase =
      params.mass() * dv * x * x / (2.0 * params.hbar() * w) -
      e0 * w0 * t / (params.hbar() * w);
  return sine_profile(n.value(), 0.0, w, x) * std::polar(1.0, phase);
}

double berry_connection(ModeIndex n, double w1, double w2) {
  if (!(w2 > w1)) throw std::invalid_argument("berry_connection: w2 <= w1");
  const int k = n.value();
  const double delta = 1e-3 * (w2 - w1);
  auto mode = [k, w2](double lower, double x) {
    return sine_profile(k, lower, w2 - lower, x);
  };
  auto integrand = [&](double x) {
    const double d = (-mode(w1 + 2 * delta, x) + 8.0 * mode(w1 + delta, x) -
                      8.0 * mode(w1 - delta, x) + mode(w1 - 2 * delta, x)) /
                     (12.0 * delta);
    return mode(w1, x) * d;
  };
  return adaptive_simpson(integrand, w1, w2, 1e-13);
}

cplx slow_accel_mode(ModeIndex n, const WallTrajectory& traj, double x,
                     double t, const PhysicalParams& params) {
  const WallState s = traj.state(t);
  if (!inside(x, s.w1, s.w2)) out_of_well(x, s.w1, s.w2);
  const double phase =
      extended_theta(traj, x, t, params) - dynamic_phase(n, traj, t, params);
  return sine_profile(n.value(), s.w1, s.w, x) * std::polar(1.0, phase);
}

double schrodinger_residual(const ModeEvaluator& psi, const SpatialGrid& grid,
                            double t, double dt, const PhysicalParams& params) {
  const std::size_t n = grid.size();
  const double h = grid.spacing();
  const double kin = params.hbar() * params.hbar() / (2.0 * params.mass());
  const cplx i_hbar(0.0, params.hbar());
  std::vector<cplx> now(n);
  for (std::size_t j = 0; j < n; ++j) now[j] = psi(grid.point(j), t);
  double worst = 0.0;
  double scale = 0.0;
  for (std::size_t j = 1; j + 1 < n; ++j) {
    const double x = grid.point(j);
    const cplx dxx = (now[j + 1] - 2.0 * now[j] + now[j - 1]) / (h * h);
    const cplx dt1 = (psi(x, t + dt) - psi(x, t - dt)) / (2.0 * dt);
    worst = std::max(worst, std::abs(i_hbar * dt1 + kin * dxx));
    scale = std::max(scale, std::abs(kin * dxx));
  }
  if (scale == 0.0) return worst;
  return worst / scale;
}

}  // namespace movingwell
