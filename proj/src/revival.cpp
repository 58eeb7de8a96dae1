#include "movingwell/revival.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "movingwell/errors.hpp"

namespace movingwell {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

std::string describe(const RevivalSpec& s) {
  std::ostringstream os;
  os << s.p() << "/" << s.q();
  return os.str();
}

}  // namespace

RevivalSpec::RevivalSpec(std::int64_t p, std::int64_t q) {
  if (q == 0) throw std::invalid_argument("RevivalSpec: q must be nonzero");
  if (q < 0) {
    p = -p;
    q = -q;
  }
  const std::int64_t g = std::gcd(p, q);
  p_ = g == 0 ? 0 : p / g;
  q_ = g == 0 ? 1 : q / g;
  if (p_ == 0) q_ = 1;
}

cplx gauss_sum(std::int64_t p, std::int64_t q, std::int64_t s) {
  if (q < 1) throw std::invalid_argument("gauss_sum: q must be >= 1");
  const std::int64_t m = 2 * q;
  const std::int64_t pm = mod(p, m);
  const std::int64_t sm = mod(s, m);
  KahanSum re;
  KahanSum im;
  for (std::int64_t r = 0; r < m; ++r) {
    const std::int64_t r2 = (r * r) % m;
    const std::int64_t e = (pm * r2 % m + sm * r % m) % m;
    const double angle = kPi * static_cast<double>(e) / static_cast<double>(q);
    re.add(std::cos(angle));
    im.add(std::sin(angle));
  }
  return cplx(re.sum, im.sum) / static_cast<double>(m);
}

cplx gauss_sum_closed(std::int64_t q, std::int64_t s) {
  if (q < 1) throw std::invalid_argument("gauss_sum_closed: q must be >= 1");
  if (mod(s - q, 2) != 0) return cplx(0.0);
  // s^2/q reduced mod 8 keeps the angle small for large s.
  const std::int64_t num = mod(s * s, 8 * q);
  const double angle =
      kPi / 4.0 * (1.0 - static_cast<double>(num) / static_cast<double>(q));
  return std::polar(1.0 / std::sqrt(static_cast<double>(q)), angle);
}

ThetaAtRational theta_rational(const RevivalSpec& spec) {
  ThetaAtRational out;
  const std::int64_t m = 2 * spec.q();
  // Coefficients either vanish exactly or have modulus at least 1/sqrt(2q).
  const double cutoff = 1e-9;
  for (std::int64_t s = 0; s < m; ++s) {
    const cplx c = gauss_sum(spec.p(), spec.q(), s);
    if (std::abs(c) < cutoff) continue;
    out.indices.push_back(s);
    out.locations.push_back(static_cast<double>(s) / static_cast<double>(m));
    out.coefficients.push_back(c);
  }
  return out;
}

cplx extend_odd_periodic(const std::function<cplx(double)>& phi, double y) {
  const double u = y - 2.0 * std::floor(0.5 * (y + 1.0));
  if (u >= 0.0) return phi(u);
  return -phi(-u);
}

cplx extend_odd_periodic(const ComplexField& phi, double y) {
  const FieldInterpolator interp(phi);
  return extend_odd_periodic([&](double v) { return interp(v); }, y);
}

ComplexField revive_phi(const ComplexField& phi0, const RevivalSpec& spec) {
  if (phi0.frame != Frame::comoving_y) {
    throw FrameMismatch("revive_phi: expects a comoving field");
  }
  if (spec.p() == 0) return phi0;
  const ThetaAtRational theta = theta_rational(spec);
  const FieldInterpolator interp(phi0);
  auto base = [&](double v) { return interp(v); };
  const double q = static_cast<double>(spec.q());
  std::vector<cplx> out(phi0.values.size(), cplx(0.0));
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double y = phi0.grid.point(i);
    cplx acc(0.0);
    for (std::size_t k = 0; k < theta.indices.size(); ++k) {
      const double shift = static_cast<double>(theta.indices[k]) / q;
      acc += std::conj(theta.coefficients[k]) *
             extend_odd_periodic(base, y - shift);
    }
    out[i] = acc;
  }
  return ComplexField(phi0.grid, std::move(out), Frame::comoving_y);
}

double revival_time(const TauMap& map, const RevivalSpec& spec) {
  const double target = spec.value();
  const WallTrajectory& traj = map.trajectory();
  if (traj.kind() != TrajectoryKind::tabulated) {
    TauPrimeLimits limits;
    bool classified = true;
    try {
      limits = tau_prime_limit(map);
    } catch (const Unsupported&) {
      classified = false;
    }
    if (classified) {
      const TauLimit& lim = target >= 0.0 ? limits.forward : limits.backward;
      const bool beyond = target >= 0.0 ? target >= lim.value : target <= lim.value;
      if (lim.finite && beyond) {
        throw UnreachableTau("tau' = " + describe(spec) +
                                 " is never reached by this trajectory",
                             lim.value);
      }
    }
  }
  try {
    return map.t_of_tau_prime(target);
  } catch (const OutOfRange& e) {
    double sup = kInf;
    if (traj.kind() == TrajectoryKind::tabulated) {
      const auto [lo, hi] = traj.domain();
      sup = map.tau_prime_of_t(target >= 0.0 ? hi : lo);
    }
    throw UnreachableTau(e.what(), sup);
  }
}

RevivedPsi revive_psi(const ComplexField& psi0, const WallTrajectory& traj,
                      const RevivalSpec& spec, const PhysicalParams& params) {
  const TauMap map(traj, params);
  const double t_rev = revival_time(map, spec);
  SlowAccelReport accel;
  if (const auto* l = traj.get_if<LinearWalls>()) {
    const ComplexField phi0 = greenberger_forward(psi0, *l, 0.0, params);
    const ComplexField phi = revive_phi(phi0, spec);
    return {greenberger_inverse(phi, *l, t_rev, params), t_rev, accel};
  }
  accel = slow_accel_check(traj, std::min(0.0, t_rev), std::max(0.0, t_rev),
                           params);
  const ComplexField phi0 = comoving_forward(psi0, traj, 0.0, params);
  const ComplexField phi = revive_phi(phi0, spec);
  return {comoving_inverse(phi, traj, t_rev, params), t_rev, accel};
}

std::vector<ScheduleEntry> revival_schedule(const WallTrajectory& traj,
                                            std::int64_t q_max, double t_max,
                                            const PhysicalParams& params,
                                            std::size_t max_entries) {
  if (q_max < 1) throw std::invalid_argument("revival_schedule: q_max < 1");
  const TauMap map(traj, params);
  std::vector<ScheduleEntry> out;
  for (std::int64_t q = 1; q <= q_max; ++q) {
    for (std::int64_t p = 1;; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const RevivalSpec spec(p, q);
      double t = 0.0;
      try {
        t = revival_time(map, spec);
      } catch (const UnreachableTau&) {
        break;
      } catch (const WallCollision&) {
        break;
      }
      if (t > t_max) break;
      out.push_back({spec, spec.value(), t});
      if (out.size() > max_entries) {
        throw OutOfRange("revival_schedule: more than max_entries revivals");
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.t_rev != b.t_rev) return a.t_rev < b.t_rev;
    return a.spec.q() < b.spec.q();
  });
  return out;
}

ComplexField propagator_oracle(const ComplexField& phi0, double tau_prime,
                               int n_modes) {
  if (n_modes < 1) throw std::invalid_argument("propagator_oracle: n_modes < 1");
  const std::size_t n = phi0.values.size();
  const double h = phi0.grid.spacing();
  const double lo = phi0.grid.lo();
  const double span = phi0.grid.hi() - lo;
  std::vector<cplx> out(n, cplx(0.0));
  std::vector<double> basis(n);
  for (int k = 1; k <= n_modes; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const double y = (phi0.grid.point(i) - lo) / span;
      basis[i] = std::sqrt(2.0) * std::sin(k * kPi * y);
    }
    cplx c = 0.5 * (basis.front() * phi0.values.front() +
                    basis.back() * phi0.values.back());
    for (std::size_t i = 1; i + 1 < n; ++i) c += basis[i] * phi0.values[i];
    c *= h / span;
    // n^2 tau' reduced mod 2 before taking the exponential
    const double k2 = static_cast<double>(k) * static_cast<double>(k);
    const double turns = std::fmod(k2 * tau_prime, 2.0);
    const cplx phase = std::polar(1.0, -kPi * turns);
    const cplx a = c * phase;
    for (std::size_t i = 0; i < n; ++i) out[i] += a * basis[i];
  }
  return ComplexField(phi0.grid, std::move(out), phi0.frame);
}

}  // namespace movingwell
