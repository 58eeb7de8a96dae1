#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "movingwell/frames.hpp"
#include "movingwell/grid.hpp"
#include "movingwell/trajectory.hpp"
#include "movingwell/units.hpp"

namespace movingwell {

/// Rational rescaled time tau' = p/q, stored reduced with q >= 1. Negative
/// p denotes backward evolution.
class RevivalSpec {
 public:
  RevivalSpec(std::int64_t p, std::int64_t q);

  std::int64_t p() const { return p_; }
  std::int64_t q() const { return q_; }
  double value() const { return static_cast<double>(p_) / static_cast<double>(q_); }

 private:
  std::int64_t p_;
  std::int64_t q_;
};

/// c_s(p, 2q) = (1/2q) sum_{r=0}^{2q-1} exp(2 pi i (p r^2 + s r) / 2q).
cplx gauss_sum(std::int64_t p, std::int64_t q, std::int64_t s);

/// Closed form of gauss_sum(1, q, s): q^{-1/2} exp(i pi (1 - s^2/q)/4) when
/// s and q have the same parity, else 0.
cplx gauss_sum_closed(std::int64_t q, std::int64_t s);

/// Nonzero coefficients of theta(u, p/q) = sum_s c_s delta(u - s/2q) over
/// one period.
struct ThetaAtRational {
  std::vector<std::int64_t> indices;  // s
  std::vector<double> locations;      // s / 2q
  std::vector<cplx> coefficients;     // c_s(p, 2q)
};

ThetaAtRational theta_rational(const RevivalSpec& spec);

/// Odd, period-2 extension of a function given on [0, 1].
cplx extend_odd_periodic(const std::function<cplx(double)>& phi, double y);
cplx extend_odd_periodic(const ComplexField& phi, double y);

/// Comoving field at tau' = p/q from the field at tau' = 0:
/// sum_s conj(c_s(p, 2q)) Phi0(y - s/q), Phi0 the odd period-2 extension.
ComplexField revive_phi(const ComplexField& phi0, const RevivalSpec& spec);

struct RevivedPsi {
  ComplexField psi;
  double t_rev;
  /// Slow-acceleration margin over [0, t_rev]; zero for linear walls.
  SlowAccelReport accel;
};

/// Lab-frame revival: forward transform at t = 0, revive_phi, inverse
/// transform at t_rev. Throws UnreachableTau if p/q is never attained.
RevivedPsi revive_psi(const ComplexField& psi0, const WallTrajectory& traj,
                      const RevivalSpec& spec, const PhysicalParams& params);

/// Time at which tau' = p/q is reached. Throws UnreachableTau.
double revival_time(const TauMap& map, const RevivalSpec& spec);

struct ScheduleEntry {
  RevivalSpec spec;
  double tau_prime;
  double t_rev;
};

/// Every reduced p/q > 0 with q <= q_max that is reached by t_max, sorted
/// by revival time. At most max_entries results.
std::vector<ScheduleEntry> revival_schedule(const WallTrajectory& traj,
                                            std::int64_t q_max, double t_max,
                                            const PhysicalParams& params,
                                            std::size_t max_entries = 100000);

/// Truncated eigenmode propagator: expand phi0 in sqrt(2) sin(n pi y),
/// n = 1..n_modes, multiply by exp(-i pi n^2 tau'), resum.
ComplexField propagator_oracle(const ComplexField& phi0, double tau_prime,
                               int n_modes);

}  // namespace movingwell
