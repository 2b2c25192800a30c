#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tanhsim/model.hpp"
#include "tanhsim/scan.hpp"

namespace tanhsim {

enum class ExitCode : int { Ok = 0, NumericalFailure = 1, ConfigError = 2 };

/// A fully resolved run. Every setting carries the layer it came from:
/// "flag", "config", "preset" or "default".
struct RunConfig {
  std::string subcommand;
  std::optional<std::string> preset;
  ModelParams params;
  SolverSettings solver;
  int points = 200;
  std::optional<AxisSpec> axis1;
  std::optional<AxisSpec> axis2;
  Observable observable = Observable::Population2;
  CompareModel model = CompareModel::Tanh;
  double bar = 1e-6;
  double gap_threshold = kDefaultGapThreshold;
  bool quick = false;
  std::uint64_t seed = 1;
  std::filesystem::path out_dir;
  std::map<std::string, std::pair<std::string, std::string>> echo;  // key -> (value, source)
};

/// Parses `tanhsim <subcommand> [options]`. Precedence: flag > config file
/// (--config, INI with one section per subcommand) > preset > default.
/// Throws ConfigError naming the offending key. Returns nullopt after
/// printing --help.
std::optional<RunConfig> parse_config(const std::vector<std::string>& args);

/// Runs a resolved config, writing the manifest and data files into
/// config.out_dir. Returns 0 on success and 1 on numerical failure.
ExitCode dispatch(const RunConfig& config);

/// parse_config + dispatch with every error mapped onto the exit-code
/// contract {0, 1, 2}. Messages go to stderr.
int run_cli(const std::vector<std::string>& args);

}  // namespace tanhsim
