#include "movingwell/trajectory.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "movingwell/errors.hpp"

namespace movingwell {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<double> column(const std::vector<WallSample>& s,
                           double WallSample::*field) {
  std::vector<double> out;
  out.reserve(s.size());
  for (const auto& row : s) out.push_back(row.*field);
  return out;
}

WallState linear_state(const LinearWalls& l, double t) {
  WallState s;
  s.w1 = l.lower(t);
  s.w2 = l.upper(t);
  s.w = s.w2 - s.w1;
  s.dw1 = l.v1;
  s.dw2 = l.v2;
  s.dw = l.v2 - l.v1;
  return s;
}

WallState monomial_state(const MonomialWalls& m, double t) {
  const double u = 1.0 + t / m.T;
  // w = w0 u^n, dw = w0 n u^(n-1) / T, ddw = w0 n (n-1) u^(n-2) / T^2
  const double w = m.w0 * std::pow(u, m.n);
  const double dw = m.w0 * m.n * std::pow(u, m.n - 1.0) / m.T;
  const double ddw =
      m.w0 * m.n * (m.n - 1.0) * std::pow(u, m.n - 2.0) / (m.T * m.T);
  WallState s;
  s.w = w;
  s.w1 = -0.5 * w;
  s.w2 = 0.5 * w;
  s.dw = dw;
  s.dw1 = -0.5 * dw;
  s.dw2 = 0.5 * dw;
  s.ddw = ddw;
  s.ddw1 = -0.5 * ddw;
  s.ddw2 = 0.5 * ddw;
  return s;
}

WallState sinusoidal_state(const SinusoidalWalls& p, double t) {
  const double sn = std::sin(p.omega * t);
  const double cs = std::cos(p.omega * t);
  WallState s;
  s.w1 = 0.0;
  s.w2 = p.w0 + p.amplitude * sn;
  s.w = s.w2;
  s.dw2 = p.amplitude * p.omega * cs;
  s.dw = s.dw2;
  s.ddw2 = -p.amplitude * p.omega * p.omega * sn;
  s.ddw = s.ddw2;
  return s;
}

WallState tabulated_state(const TabulatedWalls& tab, double t) {
  WallState s;
  s.w1 = tab.lower().value(t);
  s.w2 = tab.upper().value(t);
  s.w = s.w2 - s.w1;
  s.dw1 = tab.lower().derivative(t);
  s.dw2 = tab.upper().derivative(t);
  s.dw = s.dw2 - s.dw1;
  s.ddw1 = tab.lower().second_derivative(t);
  s.ddw2 = tab.upper().second_derivative(t);
  s.ddw = s.ddw2 - s.ddw1;
  return s;
}

}  // namespace

TabulatedWalls::TabulatedWalls(std::vector<WallSample> samples)
    : samples_(std::move(samples)) {
  if (samples_.size() < 3) {
    throw std::invalid_argument("TabulatedWalls: need at least 3 samples");
  }
  lower_ = CubicSpline(column(samples_, &WallSample::t),
                       column(samples_, &WallSample::w1));
  upper_ = CubicSpline(column(samples_, &WallSample::t),
                       column(samples_, &WallSample::w2));
}

WallTrajectory::WallTrajectory(LinearWalls w) : v_(w) {
  if (!(w.w0 > 0.0)) throw std::invalid_argument("linear: w0 must be > 0");
}

WallTrajectory::WallTrajectory(MonomialWalls w) : v_(w) {
  if (!(w.w0 > 0.0)) throw std::invalid_argument("monomial: w0 must be > 0");
  if (w.T == 0.0) throw std::invalid_argument("monomial: T must be nonzero");
}

WallTrajectory::WallTrajectory(SinusoidalWalls w) : v_(w) {
  if (!(w.w0 > 0.0)) throw std::invalid_argument("sinusoidal: w0 must be > 0");
}

WallTrajectory::WallTrajectory(TabulatedWalls w) : v_(std::move(w)) {}

TrajectoryKind WallTrajectory::kind() const {
  return static_cast<TrajectoryKind>(v_.index());
}

std::pair<double, double> WallTrajectory::domain() const {
  return std::visit(
      overloaded{
          [](const LinearWalls&) { return std::pair{-kInf, kInf}; },
          [](const MonomialWalls& m) {
            return m.T > 0.0 ? std::pair{-m.T, kInf} : std::pair{-kInf, -m.T};
          },
          [](const SinusoidalWalls&) { return std::pair{-kInf, kInf}; },
          [](const TabulatedWalls& tab) {
            return std::pair{tab.t_min(), tab.t_max()};
          },
      },
      v_);
}

bool WallTrajectory::in_domain(double t) const {
  if (!std::isfinite(t)) return false;
  const auto [lo, hi] = domain();
  if (kind() == TrajectoryKind::tabulated) return t >= lo && t <= hi;
  return t > lo && t < hi;
}

WallState WallTrajectory::state(double t) const {
  if (!in_domain(t)) {
    std::ostringstream os;
    os << "time " << t << " outside trajectory domain";
    throw OutOfDomain(os.str());
  }
  const WallState s = std::visit(
      overloaded{
          [t](const LinearWalls& l) { return linear_state(l, t); },
          [t](const MonomialWalls& m) { return monomial_state(m, t); },
          [t](const SinusoidalWalls& p) { return sinusoidal_state(p, t); },
          [t](const TabulatedWalls& tab) { return tabulated_state(tab, t); },
      },
      v_);
  if (!(s.w > 0.0)) {
    std::ostringstream os;
    os << "walls collide: width " << s.w << " at t = " << t;
    throw WallCollision(os.str());
  }
  return s;
}

bool WallTrajectory::is_inertial() const {
  if (kind() == TrajectoryKind::linear) return true;
  if (const auto* m = get_if<MonomialWalls>()) {
    return m->n == 0.0 || m->n == 1.0;
  }
  if (const auto* s = get_if<SinusoidalWalls>()) return s->amplitude == 0.0;
  return false;
}

std::string WallTrajectory::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(
      overloaded{
          [&](const LinearWalls& l) {
            os << "trajectory=linear w0=" << l.w0 << " v1=" << l.v1
               << " v2=" << l.v2;
          },
          [&](const MonomialWalls& m) {
            os << "trajectory=monomial w0=" << m.w0 << " T=" << m.T
               << " n=" << m.n;
          },
          [&](const SinusoidalWalls& p) {
            os << "trajectory=sinusoidal w0=" << p.w0
               << " amplitude=" << p.amplitude << " omega=" << p.omega;
          },
          [&](const TabulatedWalls& tab) {
            os << "trajectory=tabulated samples=" << tab.samples().size()
               << " t_min=" << tab.t_min() << " t_max=" << tab.t_max();
          },
      },
      v_);
  return os.str();
}

}  // namespace movingwell
