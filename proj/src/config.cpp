#include <charconv>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tanhsim/cli.hpp"
#include "tanhsim/errors.hpp"
#include "tanhsim/presets.hpp"

namespace tanhsim {
namespace {

std::string number(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string axis_text(const AxisSpec& a) {
  return std::string(to_string(a.name)) + ":" + number(a.min) + ":" + number(a.max) + ":" + std::to_string(a.count);
}

AxisSpec parse_axis(const std::string& key, const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  for (std::string part; std::getline(in, part, ':');) parts.push_back(part);
  if (parts.size() != 4) throw ConfigError(key + ": expected name:min:max:count, got '" + text + "'");
  AxisSpec a;
  try {
    a.name = parse_axis_name(parts[0]);
    std::size_t used = 0;
    a.min = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
    a.max = std::stod(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument(parts[2]);
    a.count = std::stoi(parts[3], &used);
    if (used != parts[3].size()) throw std::invalid_argument(parts[3]);
    validate(a);
  } catch (const std::exception& e) {
    throw ConfigError(key + ": invalid axis '" + text + "' (" + e.what() + ")");
  }
  return a;
}

// Options shared by every subcommand except verify, bound to optionals so
// that "not given" stays distinguishable from any value.
struct Raw {
  std::optional<std::string> preset;
  std::optional<double> P, alpha, beta, kappa, delta;
  std::optional<std::string> solver;
  std::optional<double> rel_tol, abs_tol, t0, t1;
  std::optional<int> points;
  std::optional<std::string> axis1, axis2, observable, model;
  std::optional<double> bar, gap_threshold;
  std::optional<int> workers;
  std::optional<std::string> out;
  bool quick = false;
  std::optional<std::uint64_t> seed;
};

class Resolver {
 public:
  Resolver(CLI::App* sub, const std::vector<std::string>& args, const Preset* preset, RunConfig& cfg)
      : sub_(sub), args_(args), preset_(preset), cfg_(cfg) {}

  // Source of an option given to CLI11: the command line or the config file.
  std::optional<std::string> given(const std::string& key) const {
    const CLI::Option* opt = sub_->get_option_no_throw("--" + key);
    if (opt == nullptr || opt->count() == 0) return std::nullopt;
    for (const std::string& a : args_) {
      if (a == "--" + key || a.rfind("--" + key + "=", 0) == 0) return "flag";
    }
    return "config";
  }

  template <typename T>
  T pick(const std::string& key, const std::optional<T>& raw, std::optional<T> from_preset, std::optional<T> fallback,
         const std::function<std::string(const T&)>& show) {
    T value{};
    std::string source;
    if (auto src = given(key); src && raw) {
      value = *raw;
      source = *src;
    } else if (from_preset) {
      value = *from_preset;
      source = "preset";
    } else if (fallback) {
      value = *fallback;
      source = "default";
    } else {
      throw ConfigError("missing value for '" + key + "' (give --" + key + ", a config entry or --preset)");
    }
    cfg_.echo[key] = {show(value), source};
    return value;
  }

  double real(const std::string& key, const std::optional<double>& raw, std::optional<double> from_preset,
              std::optional<double> fallback) {
    return pick<double>(key, raw, from_preset, fallback, number);
  }

  const Preset* preset() const { return preset_; }

 private:
  CLI::App* sub_;
  const std::vector<std::string>& args_;
  const Preset* preset_;
  RunConfig& cfg_;
};

template <typename T>
std::optional<T> from(const Preset* p, T Preset::*field) {
  if (p == nullptr) return std::nullopt;
  return p->*field;
}

std::optional<double> param_from(const Preset* p, double ModelParams::*field) {
  if (p == nullptr) return std::nullopt;
  return p->params.*field;
}

std::filesystem::path default_out_dir(const RunConfig& cfg) {
  std::filesystem::path root = "tanhsim-out";
  if (const char* env = std::getenv("TANHSIM_OUT"); env != nullptr && *env != '\0') root = env;
  return root / (cfg.subcommand + "-" + cfg.preset.value_or("custom"));
}

template <typename Fn>
auto convert(const std::string& key, Fn fn) {
  try {
    return fn();
  } catch (const InvalidArgument& e) {
    throw ConfigError(key + ": " + e.what());
  }
}

}  // namespace

std::optional<RunConfig> parse_config(const std::vector<std::string>& args) {
  CLI::App app{"Two-level tanh level-crossing model with an imaginary coupling: exact propagator, numeric "
               "integration, limit models and parameter scans.",
               "tanhsim"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "INI file; one [section] per subcommand, keys are option names");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.footer(preset_listing() +
             "\nExit codes: 0 success, 1 numerical failure, 2 configuration error.\n"
             "TANHSIM_OUT sets the default output root (default ./tanhsim-out).");

  Raw raw;
  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {"evolve", "populations vs time on [t0, t1] starting in level 2"},
      {"scan1d", "population vs one axis (t, or a parameter sampled at t1)"},
      {"interferogram", "population map over two axes (model tanh, rabi or lz)"},
      {"energy-map", "Re E+, Im E+ or zone label over two axes at time t1"},
      {"compare", "closed form vs numeric integration (model tanh, rabi or lz)"},
      {"limits", "closed-form Rabi or Landau-Zener populations on [t0, t1]"},
      {"verify", "closed form vs numeric integration over the verification corpus"},
  };
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("--workers", raw.workers, "worker threads (results do not depend on it)");
    sub->add_option("--out", raw.out, "output directory (must not already hold a run)");
    if (std::string(s.name) == "verify") {
      sub->add_flag("--quick", raw.quick, "reduced random corpus");
      sub->add_option("--seed", raw.seed, "seed of the random corpus (default 1)");
      continue;
    }
    sub->add_option("--preset", raw.preset, "named parameter set, see the list below");
    sub->add_option("--P", raw.P, "detuning amplitude P");
    sub->add_option("--alpha", raw.alpha, "sweep rate alpha > 0 (default 1)");
    sub->add_option("--beta", raw.beta, "phase beta (default 0)");
    sub->add_option("--kappa", raw.kappa, "shift kappa");
    sub->add_option("--delta", raw.delta, "imaginary coupling delta");
    sub->add_option("--solver", raw.solver, "analytic | numeric | both");
    sub->add_option("--rel-tol", raw.rel_tol, "integrator relative tolerance (default 1e-10)");
    sub->add_option("--abs-tol", raw.abs_tol, "integrator absolute tolerance (default 1e-10)");
    sub->add_option("--t0", raw.t0, "start time");
    sub->add_option("--t1", raw.t1, "end or sampling time");
    sub->add_option("--points", raw.points, "number of time samples");
    const std::string name = s.name;
    if (name == "scan1d" || name == "interferogram" || name == "energy-map") {
      sub->add_option("--axis1", raw.axis1, "first axis as name:min:max:count (t, delta, kappa, beta, P, alpha)");
      sub->add_option("--observable", raw.observable, "population1 | population2 | reE | imE | zone");
    }
    if (name == "interferogram" || name == "energy-map") sub->add_option("--axis2", raw.axis2, "second axis");
    if (name == "energy-map") sub->add_option("--gap-threshold", raw.gap_threshold, "zone threshold (default 1e-9)");
    if (name == "interferogram" || name == "compare" || name == "limits") {
      sub->add_option("--model", raw.model, "tanh | rabi | lz");
    }
    if (name == "compare") sub->add_option("--bar", raw.bar, "pass bar on the max deviation");
  }

  std::vector<const char*> argv = {"tanhsim"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  RunConfig cfg;
  CLI::App* sub = app.get_subcommands().front();
  cfg.subcommand = sub->get_name();

  const Preset* preset = nullptr;
  if (raw.preset) {
    preset = find_preset(*raw.preset);
    if (preset == nullptr) throw ConfigError("preset: unknown preset '" + *raw.preset + "'");
  }
  Resolver r(sub, args, preset, cfg);
  if (preset != nullptr) {
    cfg.preset = preset->name;
    cfg.echo["preset"] = {preset->name, r.given("preset").value_or("flag")};
  }

  cfg.solver.workers = raw.workers.value_or(1);
  if (cfg.solver.workers < 1) throw ConfigError("workers: must be at least 1");

  if (cfg.subcommand == "verify") {
    cfg.quick = raw.quick;
    cfg.seed = raw.seed.value_or(1);
    cfg.echo["quick"] = {raw.quick ? "true" : "false", raw.quick ? "flag" : "default"};
    cfg.echo["seed"] = {std::to_string(cfg.seed), r.given("seed").value_or("default")};
    cfg.out_dir = raw.out ? std::filesystem::path(*raw.out) : default_out_dir(cfg);
    return cfg;
  }

  ModelParams& p = cfg.params;
  p.P = r.real("P", raw.P, param_from(preset, &ModelParams::P), std::nullopt);
  p.alpha = r.real("alpha", raw.alpha, param_from(preset, &ModelParams::alpha), 1.0);
  p.beta = r.real("beta", raw.beta, param_from(preset, &ModelParams::beta), 0.0);
  p.kappa = r.real("kappa", raw.kappa, param_from(preset, &ModelParams::kappa), std::nullopt);
  p.delta = r.real("delta", raw.delta, param_from(preset, &ModelParams::delta), std::nullopt);
  convert("parameters", [&] {
    validate(p);
    return 0;
  });

  const bool limit_like = cfg.subcommand == "limits" || cfg.subcommand == "compare" ||
                          cfg.subcommand == "interferogram";
  if (limit_like) {
    std::optional<std::string> preset_model;
    if (preset) preset_model = std::string(to_string(preset->model));
    const std::string fallback = cfg.subcommand == "limits" ? "rabi" : "tanh";
    const std::string m = r.pick<std::string>("model", raw.model, preset_model, fallback, [](const auto& s) { return s; });
    cfg.model = convert("model", [&] { return parse_compare_model(m); });
    if (cfg.subcommand == "limits" && cfg.model == CompareModel::Tanh) {
      throw ConfigError("model: limits needs rabi or lz");
    }
  }

  const std::string solver_default = cfg.subcommand == "evolve" ? "both" : "analytic";
  const std::string solver_name =
      r.pick<std::string>("solver", raw.solver, std::nullopt, solver_default, [](const auto& s) { return s; });
  cfg.solver.solver = convert("solver", [&] { return parse_solver(solver_name); });
  cfg.solver.rel_tol = r.real("rel-tol", raw.rel_tol, preset ? preset->rel_tol : std::nullopt, 1e-10);
  cfg.solver.abs_tol = r.real("abs-tol", raw.abs_tol, preset ? preset->abs_tol : std::nullopt, 1e-10);
  if (!(cfg.solver.rel_tol >= 1e-14 && cfg.solver.rel_tol <= 1e-2)) throw ConfigError("rel-tol: must lie in [1e-14, 1e-2]");
  if (!(cfg.solver.abs_tol >= 1e-14 && cfg.solver.abs_tol <= 1e-2)) throw ConfigError("abs-tol: must lie in [1e-14, 1e-2]");
  cfg.solver.t0 = r.real("t0", raw.t0, from(preset, &Preset::t0), -5.0);
  cfg.solver.t1 = r.real("t1", raw.t1, from(preset, &Preset::t1), 5.0);
  cfg.points = r.pick<int>("points", raw.points, from(preset, &Preset::points), 200,
                           [](const int& v) { return std::to_string(v); });
  const bool needs_window = cfg.subcommand == "evolve" || cfg.subcommand == "compare" || cfg.subcommand == "limits";
  if (needs_window) {
    if (!(cfg.solver.t0 < cfg.solver.t1)) throw ConfigError("t1: must exceed t0");
    if (cfg.points < 2) throw ConfigError("points: need at least 2");
  }

  auto resolve_axis = [&](const std::string& key, const std::optional<std::string>& text,
                          std::optional<AxisSpec> preset_axis) {
    std::optional<std::string> preset_text;
    if (preset_axis) preset_text = axis_text(*preset_axis);
    const std::string t = r.pick<std::string>(key, text, preset_text, std::nullopt, [](const auto& s) { return s; });
    return parse_axis(key, t);
  };
  const bool one_axis = cfg.subcommand == "scan1d";
  const bool two_axes = cfg.subcommand == "interferogram" || cfg.subcommand == "energy-map";
  if (one_axis || two_axes) {
    cfg.axis1 = resolve_axis("axis1", raw.axis1, preset ? preset->axis1 : std::nullopt);
    if (two_axes) {
      cfg.axis2 = resolve_axis("axis2", raw.axis2, preset ? preset->axis2 : std::nullopt);
      if (cfg.axis1->name == cfg.axis2->name) throw ConfigError("axis2: must differ from axis1");
    }
    std::optional<std::string> preset_obs;
    if (preset) preset_obs = std::string(to_string(preset->observable));
    const std::string fallback = cfg.subcommand == "energy-map" ? "reE" : "population2";
    const std::string o =
        r.pick<std::string>("observable", raw.observable, preset_obs, fallback, [](const auto& s) { return s; });
    cfg.observable = convert("observable", [&] { return parse_observable(o); });
    const bool population = cfg.observable == Observable::Population1 || cfg.observable == Observable::Population2;
    if (cfg.subcommand == "energy-map" && population) throw ConfigError("observable: energy-map needs reE, imE or zone");
    if (cfg.subcommand != "energy-map" && !population) {
      throw ConfigError("observable: " + cfg.subcommand + " needs population1 or population2");
    }
  }
  if (cfg.subcommand == "interferogram" && cfg.model != CompareModel::Tanh) {
    if (cfg.axis1->name != AxisName::T) throw ConfigError("axis1: rabi and lz maps need a t axis first");
  }
  if (cfg.subcommand == "energy-map") {
    cfg.gap_threshold = r.real("gap-threshold", raw.gap_threshold, std::nullopt, kDefaultGapThreshold);
    if (!(cfg.gap_threshold > 0.0)) throw ConfigError("gap-threshold: must be positive");
  }
  if (cfg.subcommand == "compare") {
    cfg.bar = r.real("bar", raw.bar, from(preset, &Preset::bar), 1e-6);
    if (!(cfg.bar > 0.0)) throw ConfigError("bar: must be positive");
  }
  cfg.out_dir = raw.out ? std::filesystem::path(*raw.out) : default_out_dir(cfg);
  return cfg;
}

}  // namespace tanhsim
