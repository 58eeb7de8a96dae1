#include "movingwell/tdse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "movingwell/errors.hpp"
#include "movingwell/frames.hpp"

namespace movingwell {

namespace {

constexpr double kPi = std::numbers::pi;

// Gaussian elimination with partial pivoting for tridiagonal systems; the
// second superdiagonal appears when rows are swapped.
void solve_pivoting(std::span<const cplx> sub, std::span<const cplx> diag,
                    std::span<const cplx> sup, std::span<cplx> rhs) {
  const std::size_t n = diag.size();
  std::vector<cplx> dl(sub.begin(), sub.end());
  std::vector<cplx> d(diag.begin(), diag.end());
  std::vector<cplx> du(sup.begin(), sup.end());
  std::vector<cplx> du2(n, cplx(0.0));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == cplx(0.0)) throw NumericalFailure("tridiagonal: singular");
      const cplx f = dl[i] / d[i];
      d[i + 1] -= f * du[i];
      rhs[i + 1] -= f * rhs[i];
      dl[i] = 0.0;
    } else {
      const cplx f = d[i] / dl[i];
      d[i] = dl[i];
      const cplx tmp = d[i + 1];
      d[i + 1] = du[i] - f * tmp;
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -f * du[i + 1];
      }
      du[i] = tmp;
      std::swap(rhs[i], rhs[i + 1]);
      rhs[i + 1] -= f * rhs[i];
    }
  }
  if (d[n - 1] == cplx(0.0)) throw NumericalFailure("tridiagonal: singular");
  rhs[n - 1] /= d[n - 1];
  if (n >= 2) rhs[n - 2] = (rhs[n - 2] - du[n - 2] * rhs[n - 1]) / d[n - 2];
  for (std::size_t k = n - 2; k-- > 0;) {
    rhs[k] = (rhs[k] - du[k] * rhs[k + 1] - du2[k] * rhs[k + 2]) / d[k];
  }
}

// Maps s = hbar tau / m to lab time t. Closed forms where the trajectory
// has them, RK4 on dt/ds = (m/hbar) w^2 otherwise.
class Clock {
 public:
  Clock(const WallTrajectory& traj, const PhysicalParams& params)
      : traj_(traj), map_(traj, params), params_(params) {
    numeric_ = map_.form() == TauForm::numeric;
  }

  double s_to_tau(double s) const { return s * params_.mass() / params_.hbar(); }

  // Lab time after advancing from the current point by ds; the midpoint
  // time is written to *mid.
  double step(double s, double t, double ds, double* mid) const {
    if (!numeric_) {
      *mid = map_.t_of_tau(s_to_tau(s + 0.5 * ds));
      return map_.t_of_tau(s_to_tau(s + ds));
    }
    *mid = rk4(t, 0.5 * ds);
    return rk4(t, ds);
  }

 private:
  double rate(double t) const {
    const double w = traj_.state(t).w;
    return params_.mass() / params_.hbar() * w * w;
  }

  double rk4(double t, double ds) const {
    const double k1 = rate(t);
    const double k2 = rate(t + 0.5 * ds * k1);
    const double k3 = rate(t + 0.5 * ds * k2);
    const double k4 = rate(t + ds * k3);
    return t + ds / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }

  const WallTrajectory& traj_;
  TauMap map_;
  PhysicalParams params_;
  bool numeric_ = false;
};

void require_sorted_nonnegative(std::span<const double> v, const char* who) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] >= 0.0) || (i > 0 && v[i] < v[i - 1])) {
      throw OutOfRange(std::string(who) +
                       ": sample times must be nondecreasing and >= 0");
    }
  }
}

std::string packet_tag(const ComplexField& psi) {
  std::ostringstream os;
  os.precision(17);
  os << "packet_points=" << psi.grid.size() << " packet_lo=" << psi.grid.lo()
     << " packet_hi=" << psi.grid.hi();
  return os.str();
}

}  // namespace

namespace detail {

void solve_tridiagonal(std::span<const cplx> sub, std::span<const cplx> diag,
                       std::span<const cplx> sup, std::span<cplx> rhs) {
  const std::size_t n = diag.size();
  if (n == 0) return;
  std::vector<cplx> c(n);
  std::vector<cplx> d(rhs.begin(), rhs.end());
  const double eps = 64.0 * std::numeric_limits<double>::epsilon();
  cplx piv = diag[0];
  bool ok = std::abs(piv) > eps * (std::abs(diag[0]) + (n > 1 ? std::abs(sup[0]) : 0.0));
  if (ok) {
    c[0] = n > 1 ? sup[0] / piv : cplx(0.0);
    d[0] /= piv;
    for (std::size_t i = 1; i < n && ok; ++i) {
      piv = diag[i] - sub[i - 1] * c[i - 1];
      const double scale = std::abs(diag[i]) + std::abs(sub[i - 1]) +
                           (i + 1 < n ? std::abs(sup[i]) : 0.0);
      if (!(std::abs(piv) > eps * scale)) {
        ok = false;
        break;
      }
      if (i + 1 < n) c[i] = sup[i] / piv;
      d[i] = (d[i] - sub[i - 1] * d[i - 1]) / piv;
    }
  }
  if (!ok) {
    solve_pivoting(sub, diag, sup, rhs);
    return;
  }
  for (std::size_t i = n - 1; i-- > 0;) d[i] -= c[i] * d[i + 1];
  std::copy(d.begin(), d.end(), rhs.begin());
}

}  // namespace detail

void SolverConfig::validate() const {
  if (n_points < 64) {
    throw std::invalid_argument("solver: n_points must be >= 64");
  }
  if (!(steps_per_unit > 0.0) || !std::isfinite(steps_per_unit)) {
    throw std::invalid_argument("solver: steps_per_unit must be > 0");
  }
}

bool SolverConfig::step_ok() const {
  return 1.0 / steps_per_unit <= 1.0 / (static_cast<double>(n_points) - 1.0);
}

ComplexField gaussian_packet(double center, double width, double momentum,
                             const SpatialGrid& grid,
                             const PhysicalParams& params, Frame frame) {
  if (!(width > 0.0)) throw std::invalid_argument("gaussian_packet: width <= 0");
  if (center < grid.lo() || center > grid.hi()) {
    throw OutOfDomain("gaussian_packet: center outside the grid");
  }
  const double k = momentum / params.hbar();
  ComplexField f = ComplexField::sample(
      grid,
      [&](double x) {
        const double u = (x - center) / width;
        return std::exp(-0.25 * u * u) * std::polar(1.0, k * x);
      },
      frame);
  f.values.front() = 0.0;
  f.values.back() = 0.0;
  const double inside = l2_norm(f);
  // integral over the real line of exp(-u^2/2) dx
  const double total = std::sqrt(width * std::sqrt(2.0 * kPi));
  const double removed = std::sqrt(std::max(0.0, total * total - inside * inside));
  if (removed > 0.5 * total || inside == 0.0) {
    std::ostringstream os;
    os << "gaussian_packet: walls cut off " << removed / total
       << " of the packet norm (center " << center << ", width " << width
       << ")";
    throw DegeneratePacket(os.str());
  }
  for (auto& v : f.values) v /= inside;
  return f;
}

double mean_momentum(const ComplexField& psi, const PhysicalParams& params) {
  const std::size_t n = psi.values.size();
  const double h = psi.grid.spacing();
  double acc = 0.0;
  const auto& v = psi.values;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const cplx d = (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]) /
                   (12.0 * h);
    acc += (std::conj(v[i]) * d).imag();
  }
  const double norm = l2_norm(psi);
  return params.hbar() * acc * h / (norm * norm);
}

std::vector<ComplexField> evolve_comoving(const ComplexField& phi0,
                                          const WallTrajectory& traj,
                                          std::span<const double> taus,
                                          const SolverConfig& config,
                                          const PhysicalParams& params) {
  config.validate();
  if (phi0.frame != Frame::comoving_y) {
    throw FrameMismatch("evolve_comoving: expects a comoving field");
  }
  require_sorted_nonnegative(taus, "evolve_comoving");

  const std::size_t n = config.n_points;
  const SpatialGrid grid(0.0, 1.0, n);
  ComplexField phi = resample(phi0, grid);
  phi.values.front() = 0.0;
  phi.values.back() = 0.0;

  const double h = grid.spacing();
  const double hbar = params.hbar();
  const double m = params.mass();
  const double ds_nominal = 1.0 / config.steps_per_unit;
  const bool free = traj.is_inertial();
  const Clock clock(traj, params);
  const double u_scale = m / (hbar * hbar);

  // Interior unknowns 1..n-2.
  const std::size_t k = n - 2;
  std::vector<double> y(k);
  for (std::size_t j = 0; j < k; ++j) y[j] = grid.point(j + 1);
  std::vector<cplx> sub(k - 1);
  std::vector<cplx> sup(k - 1);
  std::vector<cplx> diag(k);
  std::vector<cplx> rhs(k);
  std::vector<double> pot(k, 0.0);

  double s = 0.0;
  double t = 0.0;
  std::vector<ComplexField> out;
  out.reserve(taus.size());
  for (const double tau : taus) {
    const double s_target = tau * hbar / m;
    const double span = s_target - s;
    const auto n_sub = static_cast<std::size_t>(
        std::ceil(span / ds_nominal - 1e-9));
    const double ds = n_sub > 0 ? span / static_cast<double>(n_sub) : 0.0;
    const double kin = 0.5 / (h * h);
    for (std::size_t step = 0; step < n_sub; ++step) {
      double t_mid = t;
      double t_next = t;
      if (!free) {
        t_next = clock.step(s, t, ds, &t_mid);
        const InducedPotential ind = induced_potential(traj, t_mid, params);
        for (std::size_t j = 0; j < k; ++j) {
          pot[j] = u_scale * (ind.f * y[j] + 0.5 * ind.k * y[j] * y[j]);
        }
      }
      // Compact fourth-order scheme: M phi_s = -i H phi with the mass matrix
      // M = [1 10 1]/12, H = -D/2 + (M U + U M)/2. Both sides stay
      // tridiagonal and the M-norm is conserved.
      const std::vector<cplx>& v = phi.values;
      const cplx half(0.0, 0.5 * ds);
      for (std::size_t j = 0; j < k; ++j) {
        const double u0 = pot[j];
        const double ul = j > 0 ? pot[j - 1] : u0;
        const double ur = j + 1 < k ? pot[j + 1] : u0;
        const double h_diag = 2.0 * kin + 10.0 / 12.0 * u0;
        const double h_left = -kin + (u0 + ul) / 24.0;
        const double h_right = -kin + (u0 + ur) / 24.0;
        diag[j] = 10.0 / 12.0 + half * h_diag;
        if (j + 1 < k) {
          sup[j] = 1.0 / 12.0 + half * h_right;
          sub[j] = sup[j];
        }
        const cplx m_phi = (v[j] + 10.0 * v[j + 1] + v[j + 2]) / 12.0;
        const cplx h_phi = h_left * v[j] + h_diag * v[j + 1] + h_right * v[j + 2];
        rhs[j] = m_phi - half * h_phi;
      }
      detail::solve_tridiagonal(sub, diag, sup, rhs);
      std::copy(rhs.begin(), rhs.end(), phi.values.begin() + 1);
      s += ds;
      t = t_next;
    }
    s = s_target;
    out.push_back(phi);
  }
  return out;
}

std::vector<ComplexField> evolve_lab(const ComplexField& psi0,
                                     const WallTrajectory& traj,
                                     std::span<const double> times,
                                     const SolverConfig& config,
                                     const PhysicalParams& params) {
  config.validate();
  if (psi0.frame != Frame::lab_x) {
    throw FrameMismatch("evolve_lab: expects a lab-frame field");
  }
  require_sorted_nonnegative(times, "evolve_lab");
  const TauMap map(traj, params);
  std::vector<double> taus(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) taus[i] = map.tau_of_t(times[i]);

  const ComplexField phi0 = comoving_forward(psi0, traj, 0.0, params);
  const std::vector<ComplexField> phis =
      evolve_comoving(phi0, traj, taus, config, params);
  std::vector<ComplexField> out;
  out.reserve(phis.size());
  for (std::size_t i = 0; i < phis.size(); ++i) {
    out.push_back(comoving_inverse(phis[i], traj, times[i], params));
  }
  return out;
}

CarpetRecord carpet(const ComplexField& psi0, const WallTrajectory& traj,
                    double t_max, std::size_t n_t, const SolverConfig& config,
                    const PhysicalParams& params, std::size_t n_x) {
  if (n_t < 2) throw std::invalid_argument("carpet: need n_t >= 2");
  if (!(t_max > 0.0)) throw std::invalid_argument("carpet: need t_max > 0");
  if (n_x == 0) n_x = config.n_points;

  CarpetRecord rec;
  rec.t.resize(n_t);
  for (std::size_t i = 0; i < n_t; ++i) {
    rec.t[i] = i + 1 == n_t ? t_max
                            : t_max * static_cast<double>(i) / (n_t - 1.0);
  }

  // Lab rectangle: extremes of both walls over a fine scan of [0, t_max].
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  constexpr std::size_t kScan = 4001;
  for (std::size_t i = 0; i < kScan; ++i) {
    const double t = t_max * static_cast<double>(i) / (kScan - 1.0);
    const WallState s = traj.state(t);
    lo = std::min(lo, s.w1);
    hi = std::max(hi, s.w2);
  }
  for (const double t : rec.t) {
    const WallState s = traj.state(t);
    lo = std::min(lo, s.w1);
    hi = std::max(hi, s.w2);
  }
  const SpatialGrid xgrid(lo, hi, n_x);
  rec.x = xgrid.points();

  const TauMap map(traj, params);
  std::vector<double> taus(n_t);
  for (std::size_t i = 0; i < n_t; ++i) taus[i] = map.tau_of_t(rec.t[i]);
  const ComplexField phi0 = comoving_forward(psi0, traj, 0.0, params);
  const std::vector<ComplexField> phis =
      evolve_comoving(phi0, traj, taus, config, params);

  rec.amplitude.resize(n_t * n_x);
  rec.density.resize(n_t * n_x);
  rec.slice_norm.resize(n_t);
  const double h = xgrid.spacing();
  for (std::size_t i = 0; i < n_t; ++i) {
    const std::vector<cplx> row =
        comoving_inverse_at(phis[i], traj, rec.t[i], rec.x, params);
    double norm = 0.0;
    for (std::size_t j = 0; j < n_x; ++j) {
      const double d = std::norm(row[j]);
      rec.amplitude[i * n_x + j] = row[j];
      rec.density[i * n_x + j] = d;
      norm += (j == 0 || j + 1 == n_x) ? 0.5 * d : d;
    }
    rec.slice_norm[i] = norm * h;
  }

  std::ostringstream ps;
  ps.precision(17);
  ps << "units=" << to_string(params.units()) << " hbar=" << params.hbar()
     << " mass=" << params.mass();
  rec.trajectory = traj.describe();
  rec.params = ps.str();
  rec.packet = packet_tag(psi0);
  return rec;
}

}  // namespace movingwell
