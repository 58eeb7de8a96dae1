#include "movingwell/frames.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "movingwell/errors.hpp"
#include "movingwell/quadrature.hpp"

namespace movingwell {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

TauForm classify(const WallTrajectory& traj) {
  if (traj.kind() == TrajectoryKind::linear) return TauForm::linear;
  if (const auto* m = traj.get_if<MonomialWalls>()) {
    return m->n == 0.5 ? TauForm::monomial_half : TauForm::monomial;
  }
  return TauForm::numeric;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Lab samples of psi at x; uses the stored values directly when the target
// nodes coincide with the source grid.
std::vector<cplx> lab_values_at(const ComplexField& psi, const SpatialGrid& x) {
  if (psi.grid.same_as(x)) return psi.values;
  const FieldInterpolator interp(psi);
  std::vector<cplx> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = interp(x.point(i));
  return out;
}

std::vector<cplx> comoving_values_at(const ComplexField& phi,
                                     const SpatialGrid& y) {
  if (phi.grid.same_as(y)) return phi.values;
  const FieldInterpolator interp(phi);
  std::vector<cplx> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = interp(y.point(i));
  return out;
}

void require_frame(const ComplexField& f, Frame expected, const char* who) {
  if (f.frame != expected) {
    throw FrameMismatch(std::string(who) + ": field is in the wrong frame");
  }
}

double extended_theta_with(const WallState& s, double kinetic, double x,
                           const PhysicalParams& p) {
  const double u = x - s.w1;
  return p.mass() / (2.0 * p.hbar()) *
         ((s.dw / s.w) * u * u + 2.0 * s.dw1 * u + kinetic);
}

}  // namespace

// ---------------------------------------------------------------------------
// TauMap
// ---------------------------------------------------------------------------

TauMap::TauMap(WallTrajectory traj, PhysicalParams params)
    : traj_(std::move(traj)), params_(params), form_(classify(traj_)) {}

double TauMap::tau_prime_scale() const {
  return params_.hbar() * kPi / (2.0 * params_.mass());
}

double TauMap::tau_of_t(double t) const {
  const WallState s = traj_.state(t);
  switch (form_) {
    case TauForm::linear: {
      const auto& l = *traj_.get_if<LinearWalls>();
      return t / (l.w0 * s.w);
    }
    case TauForm::monomial: {
      const auto& m = *traj_.get_if<MonomialWalls>();
      const double e = 1.0 - 2.0 * m.n;
      const double u = 1.0 + t / m.T;
      // (u^e - 1)/e, written with expm1 to stay accurate near t = 0
      return m.T / (m.w0 * m.w0) * std::expm1(e * std::log(u)) / e;
    }
    case TauForm::monomial_half: {
      const auto& m = *traj_.get_if<MonomialWalls>();
      return m.T / (m.w0 * m.w0) * std::log1p(t / m.T);
    }
    case TauForm::numeric:
      return numeric_tau(t);
  }
  return 0.0;
}

double TauMap::numeric_tau(double t) const {
  return integrate(
      [this](double s) {
        const double w = traj_.state(s).w;
        return 1.0 / (w * w);
      },
      0.0, t);
}

double TauMap::t_of_tau(double tau) const {
  if (!std::isfinite(tau)) throw OutOfRange("t_of_tau: non-finite tau");
  switch (form_) {
    case TauForm::linear: {
      const auto& l = *traj_.get_if<LinearWalls>();
      const double denom = 1.0 - l.w0 * l.width_rate() * tau;
      if (!(denom > 0.0)) {
        throw OutOfRange("t_of_tau: tau = " + fmt(tau) +
                         " is never reached by this linear well");
      }
      return l.w0 * l.w0 * tau / denom;
    }
    case TauForm::monomial: {
      const auto& m = *traj_.get_if<MonomialWalls>();
      const double e = 1.0 - 2.0 * m.n;
      const double arg = e * tau * m.w0 * m.w0 / m.T;
      if (!(arg > -1.0)) {
        throw OutOfRange("t_of_tau: tau = " + fmt(tau) +
                         " is never reached by this monomial well");
      }
      return m.T * std::expm1(std::log1p(arg) / e);
    }
    case TauForm::monomial_half: {
      const auto& m = *traj_.get_if<MonomialWalls>();
      const double t = m.T * std::expm1(tau * m.w0 * m.w0 / m.T);
      if (!std::isfinite(t)) {
        throw OutOfRange("t_of_tau: tau = " + fmt(tau) + " overflows");
      }
      return t;
    }
    case TauForm::numeric:
      return numeric_t_of_tau(tau);
  }
  return 0.0;
}

double TauMap::numeric_t_of_tau(double tau) const {
  if (tau == 0.0) return 0.0;
  const auto [dlo, dhi] = traj_.domain();
  const double w0 = traj_.state(0.0).w;
  const double sign = tau > 0.0 ? 1.0 : -1.0;
  const double edge = tau > 0.0 ? dhi : dlo;

  // Grow the bracket geometrically from the fixed-width estimate.
  double near = 0.0;
  double far = tau * w0 * w0;
  for (int k = 0; k < 200; ++k) {
    if (std::isfinite(edge) && sign * far >= sign * edge) far = edge;
    const double reached = tau_of_t(far);
    if (sign * reached >= sign * tau) break;
    if (far == edge) {
      throw OutOfRange("t_of_tau: tau = " + fmt(tau) +
                       " lies beyond the tabulated trajectory");
    }
    near = far;
    far *= 2.0;
    if (k == 199) throw OutOfRange("t_of_tau: could not bracket tau");
  }
  auto g = [this](double t) { return tau_of_t(t); };
  auto dg = [this](double t) {
    const double w = traj_.state(t).w;
    return 1.0 / (w * w);
  };
  const double lo = std::min(near, far);
  const double hi = std::max(near, far);
  return solve_increasing(g, dg, tau, lo, hi, 1e-13);
}

TauPrimeLimits tau_prime_limit(const TauMap& map) {
  const WallTrajectory& traj = map.trajectory();
  const double scale = map.tau_prime_scale();
  TauPrimeLimits out;

  if (const auto* l = traj.get_if<LinearWalls>()) {
    const double dv = l->width_rate();
    if (dv == 0.0) {
      out.forward = {false, kInf, kInf};
      out.backward = {false, -kInf, -kInf};
    } else if (dv > 0.0) {
      out.forward = {true, scale / (l->w0 * dv), kInf};
      out.backward = {false, -kInf, -l->w0 / dv};
    } else {
      out.forward = {false, kInf, -l->w0 / dv};
      out.backward = {true, scale / (l->w0 * dv), -kInf};
    }
    return out;
  }

  if (const auto* m = traj.get_if<MonomialWalls>()) {
    const double e = 1.0 - 2.0 * m->n;
    // tau' = sigma (u^e - 1) with u = 1 + t/T, or sigma_half ln u at n = 1/2
    const double sigma = e == 0.0 ? scale * m->T / (m->w0 * m->w0)
                                  : scale * m->T / (m->w0 * m->w0 * e);
    auto limit_for = [&](bool u_to_infinity, double at) {
      TauLimit lim;
      lim.approached_at = at;
      const double log_dir = u_to_infinity ? 1.0 : -1.0;
      if (e == 0.0 || e * log_dir > 0.0) {
        lim.finite = false;
        lim.value = std::copysign(kInf, sigma * log_dir * (e == 0.0 ? 1.0 : e));
      } else {
        lim.finite = true;
        lim.value = -sigma;
      }
      return lim;
    };
    if (m->T > 0.0) {
      out.forward = limit_for(true, kInf);
      out.backward = limit_for(false, -m->T);
    } else {
      out.forward = limit_for(false, -m->T);
      out.backward = limit_for(true, -kInf);
    }
    return out;
  }

  if (const auto* s = traj.get_if<SinusoidalWalls>()) {
    if (std::abs(s->amplitude) < s->w0) {
      out.forward = {false, kInf, kInf};
      out.backward = {false, -kInf, -kInf};
      return out;
    }
    throw Unsupported("tau_prime_limit: sinusoidal walls that collide");
  }

  // Tabulated: the trajectory ends at the table edges, so the scan value is
  // the attainable bound.
  const auto [lo, hi] = traj.domain();
  out.forward = {true, map.tau_prime_of_t(hi), hi, true};
  out.backward = {true, map.tau_prime_of_t(lo), lo, true};
  return out;
}

// ---------------------------------------------------------------------------
// Greenberger
// ---------------------------------------------------------------------------

double greenberger_theta_y(const LinearWalls& walls, double y, double t,
                           const PhysicalParams& params) {
  const double m = params.mass();
  const double hbar = params.hbar();
  const double dv = walls.width_rate();
  const double w = walls.width(t);
  if (dv == 0.0) {
    const double v = walls.v1;
    const double x = walls.lower(t) + w * y;
    return (m * v * x - 0.5 * m * v * v * t) / hbar;
  }
  const double c = -walls.v1 / dv;
  return m * dv * w * (y - c) * (y - c) / (2.0 * hbar);
}

ComplexField greenberger_forward(const ComplexField& psi,
                                 const LinearWalls& walls, double t,
                                 const PhysicalParams& params) {
  require_frame(psi, Frame::lab_x, "greenberger_forward");
  const WallState s = WallTrajectory(walls).state(t);
  const std::size_t n = psi.grid.size();
  const SpatialGrid ygrid(0.0, 1.0, n);
  const std::vector<cplx> lab = lab_values_at(psi, SpatialGrid(s.w1, s.w2, n));
  const double root = std::sqrt(s.w);
  std::vector<cplx> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double y = ygrid.point(i);
    const double th = greenberger_theta_y(walls, y, t, params);
    out[i] = root * lab[i] * std::polar(1.0, -th);
  }
  return ComplexField(ygrid, std::move(out), Frame::comoving_y);
}

ComplexField greenberger_inverse(const ComplexField& phi,
                                 const LinearWalls& walls, double t,
                                 const PhysicalParams& params) {
  require_frame(phi, Frame::comoving_y, "greenberger_inverse");
  const WallState s = WallTrajectory(walls).state(t);
  const std::size_t n = phi.grid.size();
  const SpatialGrid ygrid(0.0, 1.0, n);
  const std::vector<cplx> co = comoving_values_at(phi, ygrid);
  const double inv_root = 1.0 / std::sqrt(s.w);
  std::vector<cplx> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double th = greenberger_theta_y(walls, ygrid.point(i), t, params);
    out[i] = inv_root * co[i] * std::polar(1.0, th);
  }
  return ComplexField(SpatialGrid(s.w1, s.w2, n), std::move(out),
                      Frame::lab_x);
}

ComplexField galilean_boost(const ComplexField& psi, double v, double t,
                            const PhysicalParams& params) {
  require_frame(psi, Frame::lab_x, "galilean_boost");
  const double shift = v * t;
  const SpatialGrid out_grid(psi.grid.lo() - shift, psi.grid.hi() - shift,
                             psi.grid.size());
  const double m = params.mass();
  const double hbar = params.hbar();
  std::vector<cplx> out(psi.values.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double x = out_grid.point(i);
    const double th = (-m * v * x - 0.5 * m * v * v * t) / hbar;
    out[i] = psi.values[i] * std::polar(1.0, th);
  }
  return ComplexField(out_grid, std::move(out), Frame::lab_x);
}

// ---------------------------------------------------------------------------
// Extended Galilean
// ---------------------------------------------------------------------------

Displacement Displacement::constant_velocity(double v) {
  return {[v](double t) { return v * t; }, [v](double) { return v; },
          [](double) { return 0.0; }};
}

Displacement Displacement::zero() { return constant_velocity(0.0); }

double extended_galilean_theta(const Displacement& d, double t, double x_prime,
                               const PhysicalParams& params) {
  const double kinetic = integrate(
      [&](double s) {
        const double v = d.velocity(s);
        return v * v;
      },
      0.0, t);
  return params.mass() / params.hbar() *
         (d.velocity(t) * x_prime + 0.5 * kinetic);
}

double galilean_noninertial_theta(const Displacement& d1,
                                  const Displacement& d2, double t, double x2,
                                  const PhysicalParams& params) {
  const double integral = integrate(
      [&](double s) {
        const double v2 = d2.velocity(s);
        return 0.5 * v2 * v2 - d1.acceleration(s) * d2.value(s);
      },
      0.0, t);
  return params.mass() / params.hbar() * (d2.velocity(t) * x2 + integral);
}

double galilean_compose_theta(const Displacement& d1, const Displacement& d2,
                              double t, double x2,
                              const PhysicalParams& params) {
  return extended_galilean_theta(d1, t, x2 + d2.value(t), params) +
         galilean_noninertial_theta(d1, d2, t, x2, params);
}

double galilean_invert_theta(const Displacement& d, double t, double x,
                             const PhysicalParams& params) {
  const double integral = integrate(
      [&](double s) {
        const double v = d.velocity(s);
        return 0.5 * v * v + d.value(s) * d.acceleration(s);
      },
      0.0, t);
  return params.mass() / params.hbar() * (d.velocity(t) * x - integral);
}

// ---------------------------------------------------------------------------
// Extended Greenberger
// ---------------------------------------------------------------------------

double lower_wall_kinetic_integral(const WallTrajectory& traj, double t) {
  if (const auto* l = traj.get_if<LinearWalls>()) return l->v1 * l->v1 * t;
  if (traj.get_if<SinusoidalWalls>()) return 0.0;
  return integrate(
      [&](double s) {
        const double v = traj.state(s).dw1;
        return v * v;
      },
      0.0, t);
}

double extended_theta(const WallTrajectory& traj, double x, double t,
                      const PhysicalParams& params) {
  return extended_theta_with(traj.state(t),
                             lower_wall_kinetic_integral(traj, t), x, params);
}

double instantaneous_intersection(const WallTrajectory& traj, double t) {
  const WallState s = traj.state(t);
  if (s.dw == 0.0) {
    throw ParallelWalls("instantaneous_intersection: w'(t) = 0");
  }
  return s.w1 - s.dw1 * s.w / s.dw;
}

double extended_theta_completed_square(const WallTrajectory& traj, double x,
                                       double t, const PhysicalParams& params) {
  const WallState s = traj.state(t);
  if (s.dw == 0.0) {
    throw ParallelWalls("extended_theta_completed_square: w'(t) = 0");
  }
  const double b = s.w1 - s.dw1 * s.w / s.dw;
  const double u = x - b;
  return params.mass() / (2.0 * params.hbar()) *
         ((s.dw / s.w) * u * u - s.w * s.dw1 * s.dw1 / s.dw +
          lower_wall_kinetic_integral(traj, t));
}

double extended_theta_fixed_width(const WallTrajectory& traj, double x,
                                  double t, const PhysicalParams& params) {
  const WallState s = traj.state(t);
  return params.mass() / params.hbar() *
         (s.dw1 * x - 0.5 * lower_wall_kinetic_integral(traj, t));
}

double symmetric_theta(const WallTrajectory& traj, double x, double t,
                       const PhysicalParams& params) {
  const WallState s = traj.state(t);
  const double wm = 0.5 * (s.w1 + s.w2);
  const double dwm = 0.5 * (s.dw1 + s.dw2);
  double kinetic = 0.0;
  if (const auto* l = traj.get_if<LinearWalls>()) {
    const double v = 0.5 * (l->v1 + l->v2);
    kinetic = v * v * t;
  } else if (!traj.get_if<MonomialWalls>()) {
    kinetic = integrate(
        [&](double tt) {
          const WallState q = traj.state(tt);
          const double v = 0.5 * (q.dw1 + q.dw2);
          return v * v;
        },
        0.0, t);
  }
  const double u = x - wm;
  return params.mass() / (2.0 * params.hbar()) *
         ((s.dw / s.w) * u * u + 2.0 * dwm * u + kinetic);
}

ComplexField comoving_forward(const ComplexField& psi,
                              const WallTrajectory& traj, double t,
                              const PhysicalParams& params) {
  require_frame(psi, Frame::lab_x, "comoving_forward");
  const WallState s = traj.state(t);
  const double kinetic = lower_wall_kinetic_integral(traj, t);
  const std::size_t n = psi.grid.size();
  const SpatialGrid ygrid(0.0, 1.0, n);
  const SpatialGrid xgrid(s.w1, s.w2, n);
  const std::vector<cplx> lab = lab_values_at(psi, xgrid);
  const double root = std::sqrt(s.w);
  std::vector<cplx> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double th = extended_theta_with(s, kinetic, xgrid.point(i), params);
    out[i] = root * lab[i] * std::polar(1.0, -th);
  }
  return ComplexField(ygrid, std::move(out), Frame::comoving_y);
}

ComplexField comoving_inverse(const ComplexField& phi,
                              const WallTrajectory& traj, double t,
                              const PhysicalParams& params) {
  require_frame(phi, Frame::comoving_y, "comoving_inverse");
  const WallState s = traj.state(t);
  const double kinetic = lower_wall_kinetic_integral(traj, t);
  const std::size_t n = phi.grid.size();
  const SpatialGrid ygrid(0.0, 1.0, n);
  const SpatialGrid xgrid(s.w1, s.w2, n);
  const std::vector<cplx> co = comoving_values_at(phi, ygrid);
  const double inv_root = 1.0 / std::sqrt(s.w);
  std::vector<cplx> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double th = extended_theta_with(s, kinetic, xgrid.point(i), params);
    out[i] = inv_root * co[i] * std::polar(1.0, th);
  }
  return ComplexField(xgrid, std::move(out), Frame::lab_x);
}

std::vector<cplx> comoving_inverse_at(const ComplexField& phi,
                                      const WallTrajectory& traj, double t,
                                      std::span<const double> xs,
                                      const PhysicalParams& params) {
  require_frame(phi, Frame::comoving_y, "comoving_inverse_at");
  const WallState s = traj.state(t);
  const double kinetic = lower_wall_kinetic_integral(traj, t);
  const FieldInterpolator interp(phi);
  const double inv_root = 1.0 / std::sqrt(s.w);
  std::vector<cplx> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double y = (xs[i] - s.w1) / s.w;
    if (y < 0.0 || y > 1.0) {
      out[i] = 0.0;
      continue;
    }
    const double th = extended_theta_with(s, kinetic, xs[i], params);
    out[i] = inv_root * interp(y) * std::polar(1.0, th);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Induced potential and slow acceleration
// ---------------------------------------------------------------------------

InducedPotential induced_potential(const WallTrajectory& traj, double t,
                                   const PhysicalParams& params) {
  const WallState s = traj.state(t);
  const double w3 = s.w * s.w * s.w;
  return {params.mass() * w3 * s.ddw1, params.mass() * w3 * s.ddw};
}

SlowAccelRatio slow_accel_ratio(const WallTrajectory& traj, double t,
                                const PhysicalParams& params) {
  const WallState s = traj.state(t);
  const double g = params.mass() / (kPi * params.hbar());
  const double factor = 2.0 * s.w * s.w * s.w * g * g;
  return {std::abs(s.ddw1) * factor, std::abs(s.ddw2) * factor};
}

SlowAccelReport slow_accel_check(const WallTrajectory& traj, double t0,
                                 double t1, const PhysicalParams& params,
                                 std::size_t n_samples) {
  if (n_samples < 2) n_samples = 2;
  SlowAccelReport report;
  report.t_at_max = t0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double t =
        i + 1 == n_samples
            ? t1
            : t0 + (t1 - t0) * static_cast<double>(i) / (n_samples - 1.0);
    const SlowAccelRatio r = slow_accel_ratio(traj, t, params);
    if (r.lower > report.max_ratio) {
      report.max_ratio = r.lower;
      report.t_at_max = t;
      report.wall = 1;
    }
    if (r.upper > report.max_ratio) {
      report.max_ratio = r.upper;
      report.t_at_max = t;
      report.wall = 2;
    }
  }
  report.slow = report.max_ratio < kSlowAccelThreshold;
  return report;
}

// ---------------------------------------------------------------------------
// Niederer maps
// ---------------------------------------------------------------------------

SpaceTime expansion_apply(double alpha, SpaceTime p) {
  const double den = 1.0 + alpha * p.t;
  if (den == 0.0) throw Singularity("expansion: 1 + alpha t = 0");
  return {p.x / den, p.t / den};
}

SpaceTime appell_apply(SpaceTime p) {
  if (p.t == 0.0) throw Singularity("appell: t = 0");
  return {p.x / p.t, -1.0 / p.t};
}

SpaceTime appell_inverse(SpaceTime p) {
  if (p.t == 0.0) throw Singularity("appell inverse: t = 0");
  return {-p.x / p.t, -1.0 / p.t};
}

SpaceTime time_translate(double b, SpaceTime p) { return {p.x, p.t + b}; }

SpaceTime niederer_apply(double d, double alpha, double b, double a, double v,
                         SpaceTime p) {
  const double den = 1.0 + alpha * (p.t + b);
  if (den == 0.0) throw Singularity("niederer: 1 + alpha (t + b) = 0");
  return {d * (p.x + v * p.t + a) / den, d * d * (p.t + b) / den};
}

}  // namespace movingwell
