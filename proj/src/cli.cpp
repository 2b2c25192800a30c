#include "tanhsim/cli.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "tanhsim/errors.hpp"
#include "tanhsim/limits.hpp"
#include "tanhsim/output.hpp"
#include "tanhsim/verify.hpp"

namespace tanhsim {
namespace {

using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ordered_json axis_json(const AxisSpec& a) {
  return {{"name", to_string(a.name)}, {"min", a.min}, {"max", a.max}, {"count", a.count}};
}

// Everything a run produces besides its data files.
struct Outcome {
  std::vector<std::string> files;
  std::vector<std::string> warnings;
  std::optional<double> max_deviation;
  std::optional<PgmScale> scale;
  ordered_json extra = ordered_json::object();
  bool numerical_fail = false;
};

void append(std::vector<std::string>& to, const std::vector<std::string>& from) {
  to.insert(to.end(), from.begin(), from.end());
}

void write_series(const RunConfig& c, Outcome& o, const ScanResult& r) {
  for (const auto& [obs, series] : r.series) {
    const std::string name = std::string(to_string(obs)) + ".csv";
    write_grid_csv(c.out_dir / name, {r.axes[0]}, series);
    o.files.push_back(name);
  }
}

void write_map(const RunConfig& c, Outcome& o, const ScanResult& r) {
  write_grid_csv(c.out_dir / (c.subcommand + ".csv"), r.axes, r.values);
  o.scale = write_pgm(c.out_dir / (c.subcommand + ".pgm"), r.values);
  o.files.push_back(c.subcommand + ".csv");
  o.files.push_back(c.subcommand + ".pgm");
}

void record_scan(Outcome& o, const ScanResult& r) {
  append(o.warnings, r.warnings);
  o.max_deviation = r.max_deviation;
  o.extra["fallback_points"] = r.fallback_points;
  o.extra["observable"] = to_string(r.observable);
  ordered_json axes = ordered_json::array();
  for (const AxisSpec& a : r.axes) axes.push_back(axis_json(a));
  o.extra["axes"] = axes;
}

AxisSpec time_axis(const RunConfig& c) { return AxisSpec{AxisName::T, c.solver.t0, c.solver.t1, c.points}; }

Outcome run_evolve(const RunConfig& c) {
  Outcome o;
  const ScanResult r = run_time_series(c.params, time_axis(c), c.solver);
  record_scan(o, r);
  write_series(c, o, r);
  return o;
}

Outcome run_scan1d(const RunConfig& c) {
  Outcome o;
  const ScanResult r = run_parameter_sweep(c.params, *c.axis1, c.observable, c.solver);
  record_scan(o, r);
  write_grid_csv(c.out_dir / "scan.csv", r.axes, r.values);
  o.files.push_back("scan.csv");
  return o;
}

Outcome run_interferogram_cmd(const RunConfig& c) {
  Outcome o;
  const ScanResult r = c.model == CompareModel::Tanh
                           ? run_interferogram(c.params, *c.axis1, *c.axis2, c.observable, c.solver)
                           : run_limit_map(c.params, c.model, *c.axis1, *c.axis2, c.observable, c.solver);
  record_scan(o, r);
  write_map(c, o, r);
  return o;
}

Outcome run_energy_map_cmd(const RunConfig& c) {
  Outcome o;
  const ScanResult r = run_energy_map(c.params, *c.axis1, *c.axis2, c.observable, c.solver, c.gap_threshold);
  record_scan(o, r);
  write_map(c, o, r);
  return o;
}

Outcome run_compare_cmd(const RunConfig& c) {
  Outcome o;
  const CompareReport r = run_compare(c.params, c.solver.t0, c.solver.t1, c.points, c.model, c.solver, c.bar);
  const std::filesystem::path path = c.out_dir / "compare.csv";
  std::ofstream out(path, std::ios::out | std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << "t,closed_population1,closed_population2,numeric_population1,numeric_population2,deviation\n";
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    const double dev = (r.closed_form[i] - r.numeric[i]).cwiseAbs().maxCoeff();
    out << format_value(r.times[i]) << ',' << format_value(r.closed_form[i](0)) << ','
        << format_value(r.closed_form[i](1)) << ',' << format_value(r.numeric[i](0)) << ','
        << format_value(r.numeric[i](1)) << ',' << format_value(dev) << '\n';
  }
  if (!out) throw Error("write failed: " + path.string());
  o.files.push_back("compare.csv");
  append(o.warnings, r.warnings);
  o.max_deviation = r.max_deviation;
  o.extra["model"] = to_string(r.model);
  o.extra["mean_deviation"] = r.mean_deviation;
  o.extra["bar"] = r.bar;
  o.extra["pass"] = r.pass;
  o.numerical_fail = !r.pass;
  std::cout << "compare " << to_string(r.model) << ": max deviation " << format_value(r.max_deviation) << " (bar "
            << format_value(r.bar) << ") " << (r.pass ? "pass" : "FAIL") << '\n';
  return o;
}

Outcome run_limits_cmd(const RunConfig& c) {
  Outcome o;
  const AxisSpec axis = time_axis(c);
  Eigen::VectorXd p1(axis.count), p2(axis.count);
  std::optional<LZPropagator> lz;
  if (c.model == CompareModel::LandauZener) lz.emplace(c.params, axis.min);
  for (int i = 0; i < axis.count; ++i) {
    const double t = axis.value(i);
    const StateVector psi = lz ? (*lz)(t) : rabi_amplitudes(t - axis.min, c.params);
    p1(i) = std::norm(psi(0));
    p2(i) = std::norm(psi(1));
  }
  if (!p1.allFinite() || !p2.allFinite()) throw NumericalFailure("limits: non-finite population");
  write_grid_csv(c.out_dir / "population1.csv", {axis}, p1);
  write_grid_csv(c.out_dir / "population2.csv", {axis}, p2);
  o.files = {"population1.csv", "population2.csv"};
  o.extra["model"] = to_string(c.model);
  o.extra["initial_level"] = 1;
  return o;
}

Outcome run_verify_cmd(const RunConfig& c) {
  Outcome o;
  const VerifyReport r = run_verify(c.quick, c.seed, c.solver.workers);
  const std::filesystem::path path = c.out_dir / "verify.csv";
  std::ofstream out(path, std::ios::out | std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << "case,max_deviation,bar,pass\n";
  double worst = 0.0;
  for (const VerifyCase& vc : r.cases) {
    out << vc.name << ',' << format_value(vc.max_deviation) << ',' << format_value(vc.bar) << ','
        << (vc.pass ? "true" : "false") << '\n';
    std::cout << vc.name << ": max deviation " << format_value(vc.max_deviation) << " (bar "
              << format_value(vc.bar) << ") " << (vc.pass ? "pass" : "FAIL") << '\n';
    worst = std::max(worst, vc.max_deviation);
  }
  if (!out) throw Error("write failed: " + path.string());
  o.files.push_back("verify.csv");
  append(o.warnings, r.warnings);
  o.max_deviation = worst;
  o.extra["cases"] = r.cases.size();
  o.extra["pass"] = r.pass;
  o.numerical_fail = !r.pass;
  return o;
}

ordered_json config_echo(const RunConfig& c) {
  ordered_json echo = ordered_json::object();
  for (const auto& [key, entry] : c.echo) echo[key] = {{"value", entry.first}, {"source", entry.second}};
  return echo;
}

ordered_json manifest_base(const RunConfig& c) {
  ordered_json m;
  m["subcommand"] = c.subcommand;
  m["preset"] = c.preset ? ordered_json(*c.preset) : ordered_json(nullptr);
  m["config"] = config_echo(c);
  if (c.subcommand != "verify") {
    m["parameters"] = {{"P", c.params.P},
                       {"alpha", c.params.alpha},
                       {"beta", c.params.beta},
                       {"kappa", c.params.kappa},
                       {"delta", c.params.delta}};
    m["solver"] = {{"name", to_string(c.solver.solver)}, {"t0", c.solver.t0}, {"t1", c.solver.t1}};
    m["tolerances"] = {{"rel_tol", c.solver.rel_tol}, {"abs_tol", c.solver.abs_tol}};
  } else {
    m["solver"] = {{"name", "both"}};
    m["verify"] = {{"quick", c.quick}, {"seed", c.seed}};
  }
  return m;
}

void write_manifest(const std::filesystem::path& dir, const ordered_json& m) {
  std::ofstream out(dir / "manifest.json", std::ios::out | std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write manifest in " + dir.string());
  out << m.dump(2) << '\n';
}

}  // namespace

ExitCode dispatch(const RunConfig& config) {
  namespace fs = std::filesystem;
  if (fs::exists(config.out_dir / "manifest.json")) {
    throw ConfigError("out: " + config.out_dir.string() + " already holds a run");
  }
  fs::create_directories(config.out_dir);

  ordered_json m = manifest_base(config);
  const std::string started = utc_now();
  const auto start = Clock::now();
  Outcome o;
  ExitCode code = ExitCode::Ok;
  std::string error;
  try {
    if (config.subcommand == "evolve") {
      o = run_evolve(config);
    } else if (config.subcommand == "scan1d") {
      o = run_scan1d(config);
    } else if (config.subcommand == "interferogram") {
      o = run_interferogram_cmd(config);
    } else if (config.subcommand == "energy-map") {
      o = run_energy_map_cmd(config);
    } else if (config.subcommand == "compare") {
      o = run_compare_cmd(config);
    } else if (config.subcommand == "limits") {
      o = run_limits_cmd(config);
    } else if (config.subcommand == "verify") {
      o = run_verify_cmd(config);
    } else {
      throw ConfigError("subcommand: unknown '" + config.subcommand + "'");
    }
    if (o.numerical_fail) {
      code = ExitCode::NumericalFailure;
      error = "deviation above bar";
    }
  } catch (const ConfigError& e) {
    code = ExitCode::ConfigError;
    error = e.what();
  } catch (const InvalidArgument& e) {
    code = ExitCode::ConfigError;
    error = e.what();
  } catch (const std::exception& e) {
    code = ExitCode::NumericalFailure;
    error = e.what();
  }
  const double wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();

  m["status"] = code == ExitCode::Ok ? "ok" : "failed";
  m["exit_code"] = static_cast<int>(code);
  m["error"] = error.empty() ? ordered_json(nullptr) : ordered_json(error);
  m["warnings"] = o.warnings;
  m["max_deviation"] = o.max_deviation ? ordered_json(*o.max_deviation) : ordered_json(nullptr);
  m["files"] = o.files;
  if (o.scale) m["image_scale"] = {{"min", o.scale->min}, {"max", o.scale->max}, {"levels", 256}};
  m["details"] = o.extra;
  m["timestamps"] = {{"started", started}, {"finished", utc_now()}};
  m["wall_time_ms"] = wall_ms;
  m["run"] = {{"out_dir", config.out_dir.string()}, {"workers", config.solver.workers}};
  write_manifest(config.out_dir, m);

  if (!error.empty()) std::cerr << "tanhsim: " << error << '\n';
  for (const std::string& w : o.warnings) std::cerr << "warning: " << w << '\n';
  if (code == ExitCode::Ok) std::cout << "wrote " << (config.out_dir / "manifest.json").string() << '\n';
  return code;
}

int run_cli(const std::vector<std::string>& args) {
  try {
    const std::optional<RunConfig> config = parse_config(args);
    if (!config) return static_cast<int>(ExitCode::Ok);
    return static_cast<int>(dispatch(*config));
  } catch (const ConfigError& e) {
    std::cerr << "tanhsim: " << e.what() << '\n';
    return static_cast<int>(ExitCode::ConfigError);
  } catch (const std::exception& e) {
    std::cerr << "tanhsim: " << e.what() << '\n';
    return static_cast<int>(ExitCode::NumericalFailure);
  }
}

}  // namespace tanhsim
