#include "movingwell/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "movingwell/frames.hpp"

namespace movingwell {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool known(const std::string& key) {
  const auto& keys = KeyValueConfig::known_keys();
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

double number(const KeyValueConfig& kv, const std::string& key) {
  const auto v = kv.get(key);
  if (!v) throw ConfigError("missing required key '" + key + "'");
  double out = 0.0;
  const char* first = v->data();
  const char* last = first + v->size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last || !std::isfinite(out)) {
    throw ConfigError("key '" + key + "': '" + *v + "' is not a number");
  }
  return out;
}

double number_or(const KeyValueConfig& kv, const std::string& key,
                 double fallback) {
  return kv.has(key) ? number(kv, key) : fallback;
}

std::size_t count_or(const KeyValueConfig& kv, const std::string& key,
                     std::size_t fallback) {
  if (!kv.has(key)) return fallback;
  const double v = number(kv, key);
  if (v < 0.0 || v != std::floor(v)) {
    throw ConfigError("key '" + key + "' must be a non-negative integer");
  }
  return static_cast<std::size_t>(v);
}

double positive(const KeyValueConfig& kv, const std::string& key) {
  const double v = number(kv, key);
  if (!(v > 0.0)) throw ConfigError("key '" + key + "' must be > 0");
  return v;
}

// Keys each trajectory kind accepts beyond the common ones.
const std::map<std::string, std::vector<std::string>>& trajectory_keys() {
  static const std::map<std::string, std::vector<std::string>> keys = {
      {"linear", {"w0", "v1", "v2"}},
      {"monomial", {"w0", "T", "n"}},
      {"sinusoidal", {"w0", "amplitude", "omega"}},
      {"tabulated", {"table"}},
  };
  return keys;
}

WallTrajectory build_trajectory(const KeyValueConfig& kv, UnitSystem units) {
  // A unit-width well is the natural default; SI runs must state a width.
  auto width = [&] {
    if (units == UnitSystem::natural && !kv.has("w0")) return 1.0;
    return positive(kv, "w0");
  };
  const std::string kind = kv.get("trajectory").value_or("linear");
  const auto& table = trajectory_keys();
  const auto it = table.find(kind);
  if (it == table.end()) {
    throw ConfigError("unknown trajectory '" + kind + "'");
  }
  for (const auto& [other, keys] : table) {
    if (other == kind) continue;
    for (const auto& key : keys) {
      const auto& mine = it->second;
      if (kv.has(key) && std::find(mine.begin(), mine.end(), key) == mine.end()) {
        throw ConfigError("key '" + key + "' does not apply to trajectory '" +
                          kind + "'");
      }
    }
  }
  try {
    if (kind == "linear") {
      return LinearWalls{width(), number_or(kv, "v1", 0.0),
                         number_or(kv, "v2", 0.0)};
    }
    if (kind == "monomial") {
      const double T = number(kv, "T");
      if (T == 0.0) throw ConfigError("key 'T' must be nonzero");
      return MonomialWalls{width(), T, number(kv, "n")};
    }
    if (kind == "sinusoidal") {
      return SinusoidalWalls{width(), number(kv, "amplitude"),
                             number(kv, "omega")};
    }
    const auto path = kv.get("table");
    if (!path) throw ConfigError("missing required key 'table'");
    return load_wall_table(*path);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

const std::vector<std::string>& KeyValueConfig::known_keys() {
  static const std::vector<std::string> keys = {
      "units",           "mass",          "trajectory",
      "w0",              "v1",            "v2",
      "T",               "n",             "amplitude",
      "omega",           "table",         "packet.center",
      "packet.width",    "packet.momentum", "packet.frame",
      "solver.n_points", "solver.steps_per_unit", "carpet.t_max",
      "carpet.n_t",      "carpet.n_x",    "output",
  };
  return keys;
}

KeyValueConfig KeyValueConfig::parse(const std::string& text,
                                     const std::string& source) {
  KeyValueConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = source + ":" + std::to_string(lineno) + ": ";
    if (eq == std::string::npos) {
      throw ConfigError(where + "expected 'key = value'", lineno);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError(where + "expected 'key = value'", lineno);
    }
    if (!known(key)) {
      throw ConfigError(where + "unknown key '" + key + "'", lineno);
    }
    if (cfg.has(key)) {
      throw ConfigError(where + "key '" + key + "' given twice", lineno);
    }
    cfg.values_[key] = value;
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

void KeyValueConfig::set(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("override '" + assignment + "' is not key=value");
  }
  set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
  if (!known(key)) throw ConfigError("unknown key '" + key + "'");
  if (value.empty()) throw ConfigError("empty value for key '" + key + "'");
  values_[key] = value;
}

std::optional<std::string> KeyValueConfig::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

RunConfig build_run_config(const KeyValueConfig& kv,
                           std::optional<UnitSystem> cli_units) {
  UnitSystem units = cli_units.value_or(UnitSystem::natural);
  if (const auto u = kv.get("units")) {
    UnitSystem declared;
    try {
      declared = parse_unit_system(*u);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    if (cli_units && *cli_units != declared) {
      throw ConfigError("config declares units=" + *u + " but --units " +
                        std::string(to_string(*cli_units)) + " was given");
    }
    units = declared;
  }

  RunConfig run;
  try {
    if (units == UnitSystem::si) {
      run.params = PhysicalParams::si(number_or(kv, "mass", kElectronMassSI));
    } else {
      run.params = PhysicalParams::natural(number_or(kv, "mass", 1.0));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  run.trajectory = build_trajectory(kv, units);

  run.packet.center = number_or(kv, "packet.center", run.packet.center);
  run.packet.width = number_or(kv, "packet.width", run.packet.width);
  run.packet.momentum = number_or(kv, "packet.momentum", 0.0);
  if (!(run.packet.width > 0.0)) throw ConfigError("packet.width must be > 0");
  const std::string frame = kv.get("packet.frame").value_or("comoving");
  if (frame == "comoving") {
    run.packet.frame = PacketFrame::comoving;
  } else if (frame == "lab") {
    run.packet.frame = PacketFrame::lab;
  } else {
    throw ConfigError("packet.frame must be 'comoving' or 'lab'");
  }

  run.solver.n_points = count_or(kv, "solver.n_points", run.solver.n_points);
  run.solver.steps_per_unit =
      number_or(kv, "solver.steps_per_unit", run.solver.steps_per_unit);
  try {
    run.solver.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  run.carpet.t_max = number_or(kv, "carpet.t_max", run.carpet.t_max);
  run.carpet.n_t = count_or(kv, "carpet.n_t", run.carpet.n_t);
  run.carpet.n_x = count_or(kv, "carpet.n_x", run.carpet.n_x);
  if (!(run.carpet.t_max > 0.0)) throw ConfigError("carpet.t_max must be > 0");
  if (run.carpet.n_t < 2) throw ConfigError("carpet.n_t must be >= 2");

  run.output = kv.get("output").value_or(run.output);
  return run;
}

ComplexField initial_packet(const RunConfig& run) {
  const WallState s0 = run.trajectory.state(0.0);
  const std::size_t n = run.solver.n_points;
  if (run.packet.frame == PacketFrame::lab) {
    return gaussian_packet(run.packet.center, run.packet.width,
                           run.packet.momentum, SpatialGrid(s0.w1, s0.w2, n),
                           run.params, Frame::lab_x);
  }
  const ComplexField phi0 =
      gaussian_packet(run.packet.center, run.packet.width, run.packet.momentum,
                      SpatialGrid(0.0, 1.0, n), run.params, Frame::comoving_y);
  return comoving_inverse(phi0, run.trajectory, 0.0, run.params);
}

TabulatedWalls load_wall_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read wall table '" + path + "'");
  std::vector<WallSample> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (lineno == 1 && !(std::isdigit(static_cast<unsigned char>(t[0])) ||
                         t[0] == '-' || t[0] == '+' || t[0] == '.')) {
      continue;  // header
    }
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    WallSample s{};
    if (!(row >> s.t >> s.w1 >> s.w2)) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                            ": expected t, w1, w2",
                        lineno);
    }
    if (!rows.empty() && !(s.t > rows.back().t)) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                            ": times must increase",
                        lineno);
    }
    rows.push_back(s);
  }
  try {
    return TabulatedWalls(std::move(rows));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

}  // namespace movingwell
