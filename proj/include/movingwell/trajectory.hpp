#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "movingwell/spline.hpp"

namespace movingwell {

/// w1(t) = v1 t, w2(t) = w0 + v2 t.
struct LinearWalls {
  double w0 = 1.0;
  double v1 = 0.0;
  double v2 = 0.0;

  double width_rate() const { return v2 - v1; }
  double lower(double t) const { return v1 * t; }
  double upper(double t) const { return w0 + v2 * t; }
  double width(double t) const { return w0 + (v2 - v1) * t; }
};

/// Symmetric well of width w0 (1 + t/T)^n centred on x = 0.
struct MonomialWalls {
  double w0 = 1.0;
  double T = 1.0;
  double n = 1.0;
};

/// Lower wall fixed at 0, upper wall w0 + a sin(omega t).
struct SinusoidalWalls {
  double w0 = 1.0;
  double amplitude = 0.0;
  double omega = 1.0;
};

struct WallSample {
  double t;
  double w1;
  double w2;
};

/// Time-ordered wall samples joined by natural cubic splines.
class TabulatedWalls {
 public:
  explicit TabulatedWalls(std::vector<WallSample> samples);

  const std::vector<WallSample>& samples() const { return samples_; }
  const CubicSpline& lower() const { return lower_; }
  const CubicSpline& upper() const { return upper_; }
  double t_min() const { return samples_.front().t; }
  double t_max() const { return samples_.back().t; }

 private:
  std::vector<WallSample> samples_;
  CubicSpline lower_;
  CubicSpline upper_;
};

/// Wall positions and their first two time derivatives at one instant.
struct WallState {
  double w1 = 0, w2 = 0, w = 0;
  double dw1 = 0, dw2 = 0, dw = 0;
  double ddw1 = 0, ddw2 = 0, ddw = 0;
};

enum class TrajectoryKind { linear, monomial, sinusoidal, tabulated };

class WallTrajectory {
 public:
  using Variant =
      std::variant<LinearWalls, MonomialWalls, SinusoidalWalls, TabulatedWalls>;

  WallTrajectory(LinearWalls w);
  WallTrajectory(MonomialWalls w);
  WallTrajectory(SinusoidalWalls w);
  WallTrajectory(TabulatedWalls w);

  TrajectoryKind kind() const;
  const Variant& variant() const { return v_; }

  template <typename T>
  const T* get_if() const {
    return std::get_if<T>(&v_);
  }

  /// Open domain of valid times (may be infinite at either end).
  std::pair<double, double> domain() const;
  bool in_domain(double t) const;

  /// Throws OutOfDomain for invalid t, WallCollision if w(t) <= 0.
  WallState state(double t) const;

  /// Width derivative and acceleration vanish identically.
  bool is_inertial() const;

  /// One-line `key=value` echo used in metadata sidecars.
  std::string describe() const;

 private:
  Variant v_;
};

inline WallState wall_state(const WallTrajectory& traj, double t) {
  return traj.state(t);
}

}  // namespace movingwell
