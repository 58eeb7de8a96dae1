#pragma once

#include <functional>
#include <span>
#include <vector>

#include "movingwell/grid.hpp"
#include "movingwell/trajectory.hpp"
#include "movingwell/units.hpp"

namespace movingwell {

// ---------------------------------------------------------------------------
// Rescaled time
// ---------------------------------------------------------------------------

/// Which evaluation route a TauMap uses for tau(t) = int_0^t dt'/w(t')^2.
enum class TauForm { linear, monomial, monomial_half, numeric };

/// tau(t) and its inverse for one trajectory. tau has units of
/// time/length^2; tau' = (hbar pi / 2m) tau is the dimensionless revival
/// clock (tau' = 1/2 is the double revival of a fixed box).
class TauMap {
 public:
  TauMap(WallTrajectory traj, PhysicalParams params);

  TauForm form() const { return form_; }
  const WallTrajectory& trajectory() const { return traj_; }
  const PhysicalParams& params() const { return params_; }

  /// hbar pi / 2m: tau' = scale * tau.
  double tau_prime_scale() const;

  double tau_of_t(double t) const;
  /// Throws OutOfRange if tau lies beyond what the trajectory attains.
  double t_of_tau(double tau) const;

  double tau_prime_of_t(double t) const { return tau_prime_scale() * tau_of_t(t); }
  double t_of_tau_prime(double tau_prime) const {
    return t_of_tau(tau_prime / tau_prime_scale());
  }

 private:
  double numeric_tau(double t) const;
  double numeric_t_of_tau(double tau) const;

  WallTrajectory traj_;
  PhysicalParams params_;
  TauForm form_;
};

/// Behaviour of tau'(t) as t runs to one end of the trajectory's domain.
struct TauLimit {
  bool finite = false;
  /// Limit of tau' (+/-inf when not finite).
  double value = 0.0;
  /// Time the limit is approached at (+/-inf, a collision time, or -T).
  double approached_at = 0.0;
  /// Limit estimated from samples rather than classified analytically.
  bool numeric = false;
};

struct TauPrimeLimits {
  TauLimit forward;   // t increasing
  TauLimit backward;  // t decreasing
};

TauPrimeLimits tau_prime_limit(const TauMap& map);

// ---------------------------------------------------------------------------
// Greenberger transformation (walls moving at constant velocity)
// ---------------------------------------------------------------------------

/// Gauge phase of the Greenberger map in the comoving coordinate
/// y = (x - v1 t)/w(t): m dv w (y - c)^2 / 2 hbar with c = -v1/dv, or the
/// parallel-wall phase (m v x - m v^2 t / 2)/hbar when dv = 0.
double greenberger_theta_y(const LinearWalls& walls, double y, double t,
                           const PhysicalParams& params);

/// phi(y) = sqrt(w) psi(x(y)) exp(-i theta). Output lives on [0, 1] with the
/// same number of points as the input.
ComplexField greenberger_forward(const ComplexField& psi,
                                 const LinearWalls& walls, double t,
                                 const PhysicalParams& params);

/// psi(x) = phi((x - v1 t)/w) exp(i theta) / sqrt(w) on [w1(t), w2(t)].
ComplexField greenberger_inverse(const ComplexField& phi,
                                 const LinearWalls& walls, double t,
                                 const PhysicalParams& params);

/// psi(x + v t) exp((i/hbar)(-m v x - m v^2 t / 2)), sampled on the input
/// grid shifted by -v t.
ComplexField galilean_boost(const ComplexField& psi, double v, double t,
                            const PhysicalParams& params);

// ---------------------------------------------------------------------------
// Extended Galilean transformations
// ---------------------------------------------------------------------------

/// A C2 displacement d(t) with its first two derivatives.
struct Displacement {
  std::function<double(double)> value;
  std::function<double(double)> velocity;
  std::function<double(double)> acceleration;

  static Displacement constant_velocity(double v);
  static Displacement zero();
};

/// (m/hbar)(d'(t) x' + 1/2 int_0^t d'^2).
double extended_galilean_theta(const Displacement& d, double t, double x_prime,
                               const PhysicalParams& params);

/// Phase of the second of two stacked translations, carrying the
/// non-inertial correction -int d1'' d2.
double galilean_noninertial_theta(const Displacement& d1,
                                  const Displacement& d2, double t, double x2,
                                  const PhysicalParams& params);

/// Total phase theta_1(x2 + d2) + theta_2(x2) of translating by d1 then d2.
double galilean_compose_theta(const Displacement& d1, const Displacement& d2,
                              double t, double x2,
                              const PhysicalParams& params);

/// Phase of the translation expressed in the original coordinate x:
/// (m/hbar)(d' x - int_0^t (d'^2/2 + d d'')).
double galilean_invert_theta(const Displacement& d, double t, double x,
                             const PhysicalParams& params);

// ---------------------------------------------------------------------------
// Extended Greenberger transformation, y = (x - w1(t))/w(t)
// ---------------------------------------------------------------------------

/// int_0^t w1'(t')^2 dt' (closed form for linear walls).
double lower_wall_kinetic_integral(const WallTrajectory& traj, double t);

/// theta(x, t) = (m/2hbar)[(w'/w)(x-w1)^2 + 2 w1'(x-w1) + int_0^t w1'^2].
double extended_theta(const WallTrajectory& traj, double x, double t,
                      const PhysicalParams& params);

/// The same phase written around the instantaneous intersection b(t):
/// (m/2hbar)[(w'/w)(x-b)^2 - w w1'^2/w' + int w1'^2]. Throws ParallelWalls
/// when w'(t) = 0.
double extended_theta_completed_square(const WallTrajectory& traj, double x,
                                       double t, const PhysicalParams& params);

/// Fixed-width form (m/hbar)(w1' x - 1/2 int w1'^2), valid where w'(t) = 0
/// up to x-independent terms.
double extended_theta_fixed_width(const WallTrajectory& traj, double x,
                                  double t, const PhysicalParams& params);

/// b(t) = w1 - w1' w / w'. Throws ParallelWalls when w'(t) = 0.
double instantaneous_intersection(const WallTrajectory& traj, double t);

/// Phase of the midpoint-centred variant y = (x - wm)/w, wm = (w1 + w2)/2,
/// obtained by using wm as the displacement in place of w1.
double symmetric_theta(const WallTrajectory& traj, double x, double t,
                       const PhysicalParams& params);

/// Lab field on [w1(t), w2(t)] to comoving field on [0, 1]:
/// phi(y) = sqrt(w) psi(w1 + w y) exp(-i theta).
ComplexField comoving_forward(const ComplexField& psi,
                              const WallTrajectory& traj, double t,
                              const PhysicalParams& params);

/// Comoving field back to the lab frame on [w1(t), w2(t)] with the same
/// number of points.
ComplexField comoving_inverse(const ComplexField& phi,
                              const WallTrajectory& traj, double t,
                              const PhysicalParams& params);

/// Lab-frame values of a comoving field at arbitrary x (zero outside the
/// well).
std::vector<cplx> comoving_inverse_at(const ComplexField& phi,
                                      const WallTrajectory& traj, double t,
                                      std::span<const double> xs,
                                      const PhysicalParams& params);

// ---------------------------------------------------------------------------
// Fictitious potentials and the slow-acceleration criterion
// ---------------------------------------------------------------------------

/// Comoving-frame perturbation f y + k y^2 / 2 induced by accelerating walls.
struct InducedPotential {
  double f = 0.0;  // m w^3 w1''
  double k = 0.0;  // m w^3 w''
};

InducedPotential induced_potential(const WallTrajectory& traj, double t,
                                   const PhysicalParams& params);

/// r_i(t) = |w_i''| 2 w^3 (m / pi hbar)^2 for the lower (i = 1) and upper
/// (i = 2) wall.
struct SlowAccelRatio {
  double lower = 0.0;
  double upper = 0.0;
  double max() const { return lower > upper ? lower : upper; }
};

SlowAccelRatio slow_accel_ratio(const WallTrajectory& traj, double t,
                                const PhysicalParams& params);

inline constexpr double kSlowAccelThreshold = 0.1;

struct SlowAccelReport {
  double max_ratio = 0.0;
  double t_at_max = 0.0;
  int wall = 0;  // 1 lower, 2 upper, 0 when both vanish
  bool slow = true;
};

/// Scans [t0, t1] (n_samples evenly spaced instants, endpoints included).
SlowAccelReport slow_accel_check(const WallTrajectory& traj, double t0,
                                 double t1, const PhysicalParams& params,
                                 std::size_t n_samples = 2001);

// ---------------------------------------------------------------------------
// Niederer symmetries of the free Schrodinger equation
// ---------------------------------------------------------------------------

struct SpaceTime {
  double x;
  double t;
};

/// Expansion [alpha]: (x, t) -> (x / (1 + alpha t), t / (1 + alpha t)).
SpaceTime expansion_apply(double alpha, SpaceTime p);
inline double expansion_compose(double alpha1, double alpha2) {
  return alpha1 + alpha2;
}

/// Appell map (x, t) -> (x / t, -1 / t) and its inverse.
SpaceTime appell_apply(SpaceTime p);
SpaceTime appell_inverse(SpaceTime p);

/// Time translation (x, t) -> (x, t + b).
SpaceTime time_translate(double b, SpaceTime p);

/// General element: dilation d, expansion alpha, time shift b, space shift
/// a, boost v.
SpaceTime niederer_apply(double d, double alpha, double b, double a, double v,
                         SpaceTime p);

}  // namespace movingwell
