#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "movingwell/config.hpp"
#include "movingwell/errors.hpp"
#include "movingwell/frames.hpp"
#include "movingwell/io.hpp"
#include "movingwell/revival.hpp"
#include "movingwell/tdse.hpp"

namespace mw = movingwell;

namespace {

enum ExitCode : int {
  kOk = 0,
  kConfig = 2,
  kCollision = 3,
  kNumerical = 4,
  kUnreachable = 5,
};

struct GlobalOptions {
  std::string config_path;
  std::string units;
  std::vector<std::string> overrides;
  std::string sweep;
};

mw::KeyValueConfig load_kv(const GlobalOptions& g) {
  mw::KeyValueConfig kv;
  if (!g.config_path.empty()) kv = mw::KeyValueConfig::load(g.config_path);
  for (const auto& o : g.overrides) kv.set(o);
  return kv;
}

std::optional<mw::UnitSystem> cli_units(const GlobalOptions& g) {
  if (g.units.empty()) return std::nullopt;
  try {
    return mw::parse_unit_system(g.units);
  } catch (const std::invalid_argument& e) {
    throw mw::ConfigError(e.what());
  }
}

mw::RunConfig load_run(const GlobalOptions& g) {
  return mw::build_run_config(load_kv(g), cli_units(g));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

std::string unit_suffix(const mw::RunConfig& run, const char* natural,
                        const char* si) {
  return run.params.units() == mw::UnitSystem::si ? si : natural;
}

struct SimulateSummary {
  std::size_t nx = 0;
  std::size_t nt = 0;
  double max_norm_error = 0.0;
};

SimulateSummary simulate_one(const mw::RunConfig& run) {
  const mw::ComplexField psi0 = mw::initial_packet(run);
  const mw::CarpetRecord rec =
      mw::carpet(psi0, run.trajectory, run.carpet.t_max, run.carpet.n_t,
                 run.solver, run.params, run.carpet.n_x);
  mw::write_carpet_csv(rec, run.output + ".csv");
  mw::write_carpet_binary(rec, run.output + ".bin");
  mw::write_carpet_meta(rec, run.output + ".meta");
  SimulateSummary s{rec.x.size(), rec.t.size(), 0.0};
  for (const double n : rec.slice_norm) {
    s.max_norm_error = std::max(s.max_norm_error, std::abs(n - 1.0));
  }
  return s;
}

void print_summary(const mw::RunConfig& run, const SimulateSummary& s) {
  std::cout << "wrote " << run.output << ".{csv,bin,meta} (" << s.nt
            << " slices x " << s.nx << " points)\n";
  std::cout << std::setprecision(3) << std::scientific
            << "max |norm - 1| over slices: " << s.max_norm_error << "\n"
            << std::defaultfloat;
}

std::size_t thread_cap() {
  std::size_t cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MOVINGWELL_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) cap = static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      throw mw::ConfigError("MOVINGWELL_THREADS must be a positive integer");
    }
  }
  return cap;
}

int cmd_simulate(const GlobalOptions& g) {
  if (g.sweep.empty()) {
    const mw::RunConfig run = load_run(g);
    print_summary(run, simulate_one(run));
    return kOk;
  }

  const auto eq = g.sweep.find('=');
  if (eq == std::string::npos) {
    throw mw::ConfigError("--sweep expects key=a,b,c");
  }
  const std::string key = g.sweep.substr(0, eq);
  const std::vector<std::string> values = split(g.sweep.substr(eq + 1), ',');
  if (values.empty()) throw mw::ConfigError("--sweep has no values");

  // Everything is validated up front so a bad value fails before any work.
  const mw::KeyValueConfig base = load_kv(g);
  const auto units = cli_units(g);
  std::vector<mw::RunConfig> runs;
  for (std::size_t i = 0; i < values.size(); ++i) {
    mw::KeyValueConfig kv = base;
    kv.set(key, values[i]);
    mw::RunConfig run = mw::build_run_config(kv, units);
    run.output += "_" + std::to_string(i);
    runs.push_back(std::move(run));
  }

  std::vector<SimulateSummary> summaries(runs.size());
  std::vector<std::exception_ptr> errors(runs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < runs.size(); i = next++) {
      try {
        summaries[i] = simulate_one(runs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n_threads = std::min(thread_cap(), runs.size());
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    std::cout << key << "=" << values[i] << ": ";
    print_summary(runs[i], summaries[i]);
  }
  return kOk;
}

int cmd_revive(const GlobalOptions& g, std::int64_t p, std::int64_t q,
               std::string out) {
  const mw::RunConfig run = load_run(g);
  const mw::RevivalSpec spec(p, q);
  const mw::ComplexField psi0 = mw::initial_packet(run);
  const mw::RevivedPsi rev =
      mw::revive_psi(psi0, run.trajectory, spec, run.params);
  if (out.empty()) out = run.output + "_revive.csv";
  mw::write_field_csv(rev.psi, rev.t_rev, out);

  std::cout << std::setprecision(10);
  std::cout << "tau' = " << spec.p() << "/" << spec.q() << "\n";
  std::cout << "t_rev = " << rev.t_rev << unit_suffix(run, "", " s") << "\n";
  const mw::ThetaAtRational theta = mw::theta_rational(spec);
  std::cout << "coefficients (s, shift s/q, re, im):\n";
  for (std::size_t k = 0; k < theta.indices.size(); ++k) {
    const auto c = theta.coefficients[k];
    std::cout << "  " << theta.indices[k] << "  "
              << static_cast<double>(theta.indices[k]) /
                     static_cast<double>(spec.q())
              << "  " << c.real() << "  " << c.imag() << "\n";
  }
  if (rev.accel.max_ratio > 0.0) {
    std::cout << "slow-acceleration margin r = " << rev.accel.max_ratio
              << (rev.accel.slow ? " (ok)" : " (warn: well is not slowly "
                                              "accelerating)")
              << "\n";
  }
  std::cout << "wrote " << out << "\n";
  return kOk;
}

int cmd_schedule(const GlobalOptions& g, std::int64_t q_max, double t_max) {
  const mw::RunConfig run = load_run(g);
  const auto rows =
      mw::revival_schedule(run.trajectory, q_max, t_max, run.params);
  std::cout << "p/q,tau_prime,t_rev\n" << std::setprecision(17);
  for (const auto& r : rows) {
    std::cout << r.spec.p() << "/" << r.spec.q() << "," << r.tau_prime << ","
              << r.t_rev << "\n";
  }
  return kOk;
}

int cmd_transform(const GlobalOptions& g, const std::string& direction,
                  double t, const std::string& in, const std::string& out) {
  const mw::RunConfig run = load_run(g);
  if (direction == "forward") {
    mw::ComplexField psi =
        in.empty() ? mw::initial_packet(run)
                   : mw::read_field_csv(in, mw::Frame::lab_x).field;
    if (in.empty() && t != 0.0) {
      throw mw::ConfigError("transform without --in only supports --t 0");
    }
    const mw::ComplexField phi =
        mw::comoving_forward(psi, run.trajectory, t, run.params);
    mw::write_field_csv(phi, t, out);
  } else if (direction == "inverse") {
    if (in.empty()) throw mw::ConfigError("inverse transform needs --in");
    const mw::ComplexField phi =
        mw::read_field_csv(in, mw::Frame::comoving_y).field;
    const mw::ComplexField psi =
        mw::comoving_inverse(phi, run.trajectory, t, run.params);
    mw::write_field_csv(psi, t, out);
  } else {
    throw mw::ConfigError("--direction must be forward or inverse");
  }
  std::cout << "wrote " << out << "\n";
  return kOk;
}

int cmd_check(const GlobalOptions& g, double t0, double t1) {
  const mw::RunConfig run = load_run(g);
  if (!(t1 >= t0)) throw mw::ConfigError("check needs t1 >= t0");
  const mw::SlowAccelReport r =
      mw::slow_accel_check(run.trajectory, t0, t1, run.params);
  std::cout << std::setprecision(6);
  std::cout << "max r = " << r.max_ratio << " at t = " << r.t_at_max;
  if (r.wall != 0) std::cout << " (" << (r.wall == 1 ? "lower" : "upper") << " wall)";
  std::cout << "\nthreshold = " << mw::kSlowAccelThreshold << "\n";
  std::cout << "verdict: " << (r.slow ? "pass" : "warn") << "\n";
  return kOk;
}

int run(int argc, char** argv) {
  CLI::App app{"Wave packets in infinite wells with moving walls"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("-c,--config", g.config_path, "key = value config file");
  app.add_option("--units", g.units, "natural or si")
      ->check(CLI::IsMember({"natural", "si"}));
  app.add_option("--set", g.overrides, "override a config key (key=value)");

  auto* simulate = app.add_subcommand("simulate", "write a lab-frame carpet");
  simulate->add_option("--sweep", g.sweep,
                       "run key=a,b,c concurrently, one carpet per value");

  std::int64_t p = 0;
  std::int64_t q = 1;
  std::string revive_out;
  auto* revive = app.add_subcommand("revive", "predicted field at tau' = p/q");
  revive->add_option("p", p)->required();
  revive->add_option("q", q)->required();
  revive->add_option("-o,--out", revive_out, "output CSV");

  std::int64_t q_max = 4;
  double t_max = 1.0;
  auto* schedule = app.add_subcommand("schedule", "list revival times");
  schedule->add_option("--q-max", q_max)->check(CLI::PositiveNumber);
  schedule->add_option("--t-max", t_max);

  std::string direction = "forward";
  double t_at = 0.0;
  std::string in_path;
  std::string out_path;
  auto* transform =
      app.add_subcommand("transform", "map a field file between frames");
  transform->add_option("--direction", direction)
      ->check(CLI::IsMember({"forward", "inverse"}));
  transform->add_option("--t", t_at, "time of the transform");
  transform->add_option("--in", in_path, "input field CSV");
  transform->add_option("--out", out_path, "output field CSV")->required();

  double t0 = 0.0;
  double t1 = 1.0;
  auto* check =
      app.add_subcommand("check", "slow-acceleration margin over [t0, t1]");
  check->add_option("--t0", t0);
  check->add_option("--t1", t1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    if (*simulate) return cmd_simulate(g);
    if (*revive) return cmd_revive(g, p, q, revive_out);
    if (*schedule) return cmd_schedule(g, q_max, t_max);
    if (*transform) return cmd_transform(g, direction, t_at, in_path, out_path);
    if (*check) return cmd_check(g, t0, t1);
  } catch (const mw::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const mw::DegeneratePacket& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const mw::WallCollision& e) {
    std::cerr << "wall collision: " << e.what() << "\n";
    return kCollision;
  } catch (const mw::UnreachableTau& e) {
    std::cerr << "unreachable: " << e.what() << "\n"
              << std::setprecision(17) << "supremum tau' = " << e.supremum()
              << "\n";
    return kUnreachable;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  }
  return kConfig;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
