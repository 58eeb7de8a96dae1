#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "movingwell/errors.hpp"
#include "movingwell/grid.hpp"
#include "movingwell/tdse.hpp"
#include "movingwell/trajectory.hpp"
#include "movingwell/units.hpp"

namespace movingwell {

/// Bad configuration text or values. line() is 0 when the problem is not
/// tied to a line of a file.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, std::size_t line = 0)
      : Error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Flat `key = value` settings with `#` comments.
class KeyValueConfig {
 public:
  /// Throws ConfigError (with the line number) on malformed lines, unknown
  /// keys, or repeated keys.
  static KeyValueConfig parse(const std::string& text,
                              const std::string& source = "<config>");
  static KeyValueConfig load(const std::string& path);

  /// `key=value` override; unknown keys are rejected.
  void set(const std::string& assignment);
  void set(const std::string& key, const std::string& value);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::optional<std::string> get(const std::string& key) const;
  const std::map<std::string, std::string>& values() const { return values_; }

  static const std::vector<std::string>& known_keys();

 private:
  std::map<std::string, std::string> values_;
};

enum class PacketFrame { comoving, lab };

/// Initial Gaussian. In the comoving frame centre and width are fractions
/// of the initial width; in the lab frame they are lengths.
struct PacketSpec {
  double center = 0.3;
  double width = 0.04;
  double momentum = 0.0;
  PacketFrame frame = PacketFrame::comoving;
};

struct CarpetSpec {
  double t_max = 1.0;
  std::size_t n_t = 201;
  std::size_t n_x = 0;
};

struct RunConfig {
  PhysicalParams params;
  WallTrajectory trajectory = LinearWalls{};
  PacketSpec packet;
  SolverConfig solver;
  CarpetSpec carpet;
  std::string output = "movingwell";
};

/// Validates and assembles a run. `cli_units` is the --units flag; a file
/// that declares a different unit system is rejected.
RunConfig build_run_config(const KeyValueConfig& kv,
                           std::optional<UnitSystem> cli_units);

/// Samples the configured packet on [w1(0), w2(0)] with solver.n_points
/// nodes, in the lab frame.
ComplexField initial_packet(const RunConfig& run);

/// Reads `t,w1,w2` rows (header optional) for a tabulated trajectory.
TabulatedWalls load_wall_table(const std::string& path);

}  // namespace movingwell
