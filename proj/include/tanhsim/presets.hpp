#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tanhsim/model.hpp"
#include "tanhsim/scan.hpp"

namespace tanhsim {

/// Named parameter set reproducing one figure panel. Values the figure does
/// not fix are listed in `assumed`.
struct Preset {
  std::string name;
  std::string figure;      // e.g. "figure 2 panel a1"
  std::string summary;
  std::string subcommand;  // the subcommand the preset was written for
  ModelParams params;
  double t0 = -5.0;
  double t1 = 5.0;
  int points = 200;
  std::optional<AxisSpec> axis1;
  std::optional<AxisSpec> axis2;
  Observable observable = Observable::Population2;
  CompareModel model = CompareModel::Tanh;
  double bar = 1e-6;
  // Integrator tolerances the preset needs to meet its bar, if tighter than
  // the defaults.
  std::optional<double> rel_tol;
  std::optional<double> abs_tol;
  std::vector<std::string> assumed;
};

const std::vector<Preset>& presets();

/// Looks up a preset by name or alias (fig7 -> fig7a, fig8 -> fig8a).
/// Returns nullptr when there is no such preset.
const Preset* find_preset(std::string_view name);

/// One line per preset for --help output.
std::string preset_listing();

}  // namespace tanhsim
