#include "tanhsim/presets.hpp"

#include <sstream>
#include <tuple>

namespace tanhsim {
namespace {

// Natural units: alpha = 1 sets the time unit unless a preset says otherwise.
// Caption values written as x/alpha or x/epsilon are taken as plain numbers.

Preset time_series(std::string name, std::string figure, std::string summary, ModelParams p, double t0, double t1,
                   std::vector<std::string> assumed) {
  Preset s;
  s.name = std::move(name);
  s.figure = std::move(figure);
  s.summary = std::move(summary);
  s.subcommand = "evolve";
  s.params = p;
  s.t0 = t0;
  s.t1 = t1;
  s.points = 200;
  s.axis1 = AxisSpec{AxisName::T, t0, t1, 200};
  s.assumed = std::move(assumed);
  return s;
}

Preset map(std::string name, std::string figure, std::string summary, std::string subcommand, ModelParams p,
           AxisSpec a1, AxisSpec a2, Observable o, std::vector<std::string> assumed) {
  Preset s;
  s.name = std::move(name);
  s.figure = std::move(figure);
  s.summary = std::move(summary);
  s.subcommand = std::move(subcommand);
  s.params = p;
  s.axis1 = a1;
  s.axis2 = a2;
  s.observable = o;
  s.assumed = std::move(assumed);
  return s;
}

std::vector<Preset> build() {
  std::vector<Preset> v;
  const std::vector<std::string> fig2_assumed = {"beta = 0", "t in [-5, 5]"};
  v.push_back(time_series("fig2a1", "figure 2 panel a1", "populations vs time, delta = 1", {8, 1, 0, 5, 1}, -5, 5,
                          fig2_assumed));
  v.push_back(time_series("fig2a2", "figure 2 panel a2", "populations vs time, Hermitian (delta = 0)",
                          {8, 1, 0, 5, 0}, -5, 5, fig2_assumed));
  const AxisSpec fig2_t{AxisName::T, -5, 5, 200};
  const AxisSpec fig2_delta{AxisName::Delta, 0, 2, 101};
  v.push_back(map("fig2a3", "figure 2 panel a3", "interferogram of population2 over (t, delta)", "interferogram",
                  {8, 1, 0, 5, 0}, fig2_t, fig2_delta, Observable::Population2,
                  {"beta = 0", "delta in [0, 2]", "population2 shown"}));
  v.push_back(map("fig2a4", "figure 2 panel a4", "interferogram of population1 over (t, delta)", "interferogram",
                  {8, 1, 0, 5, 0}, fig2_t, fig2_delta, Observable::Population1,
                  {"beta = 0", "delta in [0, 2]", "population1 shown"}));

  const std::vector<std::string> fig3_assumed = {"kappa = 10 (a high shift)", "beta = 2", "t in [-5, 5]"};
  v.push_back(time_series("fig3b1", "figure 3 panel b1", "populations vs time at a high shift, delta = 1",
                          {8, 1, 2, 10, 1}, -5, 5, fig3_assumed));
  v.push_back(time_series("fig3b2", "figure 3 panel b2", "populations vs time at a high shift, delta = 0",
                          {8, 1, 2, 10, 0}, -5, 5, fig3_assumed));
  const AxisSpec fig3_delta{AxisName::Delta, 0, 2, 101};
  const AxisSpec fig3_beta{AxisName::Beta, -5, 5, 101};
  for (auto [name, panel, obs] : {std::tuple{"fig3b3", "b3", Observable::Population2},
                                  std::tuple{"fig3b4", "b4", Observable::Population1}}) {
    Preset s = map(name, std::string("figure 3 panel ") + panel,
                   std::string("interferogram of ") + std::string(to_string(obs)) + " over (delta, beta) at t = 5",
                   "interferogram", {8, 1, 0, 10, 0}, fig3_delta, fig3_beta, obs,
                   {"kappa = 10", "sampled at t = 5 after starting at t = -5", "delta in [0, 2]", "beta in [-5, 5]"});
    v.push_back(s);
  }

  const std::vector<std::string> fig4_assumed = {"kappa = 5", "t in [-12, -2] (centred on the crossing at t = -7)"};
  v.push_back(time_series("fig4c1", "figure 4 panel c1", "populations vs time, P = 8, beta = 7, delta = 1",
                          {8, 1, 7, 5, 1}, -12, -2, fig4_assumed));
  v.push_back(time_series("fig4c2", "figure 4 panel c2", "populations vs time, P = 8, beta = 7, delta = 0",
                          {8, 1, 7, 5, 0}, -12, -2, fig4_assumed));
  const AxisSpec fig4_t{AxisName::T, -12, -2, 200};
  const AxisSpec fig4_kappa{AxisName::Kappa, 0, 10, 101};
  v.push_back(map("fig4c3", "figure 4 panel c3", "interferogram of population2 over (t, kappa)", "interferogram",
                  {8, 1, 7, 5, 1}, fig4_t, fig4_kappa, Observable::Population2, {"kappa in [0, 10]"}));
  v.push_back(map("fig4c4", "figure 4 panel c4", "interferogram of population1 over (t, kappa)", "interferogram",
                  {8, 1, 7, 5, 1}, fig4_t, fig4_kappa, Observable::Population1, {"kappa in [0, 10]"}));

  // alpha t + beta = 100 + beta at t = 5, so beta is swept around -100 where
  // the detuning actually changes.
  const AxisSpec fig5_delta{AxisName::Delta, 0, 10, 201};
  const AxisSpec fig5_beta{AxisName::Beta, -105, -95, 201};
  for (auto [name, panel, amplitude] : {std::tuple{"fig5a", "a", 2.0}, std::tuple{"fig5b", "b", 3.0},
                                        std::tuple{"fig5c", "c", 5.0}, std::tuple{"fig5d", "d", 8.0}}) {
    std::ostringstream summary;
    summary << "Re E+ over (delta, beta), P = " << amplitude << ", t = 5, alpha = 20";
    Preset s = map(name, std::string("figure 5 panel ") + panel, summary.str(), "energy-map",
                   {amplitude, 20, 0, 0, 0}, fig5_delta, fig5_beta, Observable::ReE,
                   {"P = 2, 3, 5, 8 across panels", "kappa = 0", "delta in [0, 10]", "beta in [-105, -95]"});
    s.t1 = 5;
    v.push_back(s);
  }
  const AxisSpec fig6_delta{AxisName::Delta, 0, 30, 201};
  const AxisSpec fig6_beta{AxisName::Beta, 0, 20, 201};
  for (auto [name, panel, shift] : {std::tuple{"fig6a", "a", 0.0}, std::tuple{"fig6b", "b", 5.0}}) {
    std::ostringstream summary;
    summary << "Im E+ over (delta, beta), P = 25, t = -0.5, alpha = 20, kappa = " << shift;
    Preset s = map(name, std::string("figure 6 panel ") + panel, summary.str(), "energy-map", {25, 20, 0, shift, 0},
                   fig6_delta, fig6_beta, Observable::ImE,
                   {"kappa = 0 and 5 across panels", "delta in [0, 30]", "beta in [0, 20]"});
    s.t1 = -0.5;
    v.push_back(s);
  }

  Preset rabi;
  rabi.name = "fig7a";
  rabi.figure = "figure 7 panel a";
  rabi.summary = "Rabi closed form vs constant-detuning integration, kappa = 0.3, delta = 0.3";
  rabi.subcommand = "compare";
  rabi.params = {0, 1, 0, 0.3, 0.3};
  rabi.t0 = 0;
  rabi.t1 = 40;
  rabi.points = 400;
  rabi.axis1 = AxisSpec{AxisName::T, 0, 40, 400};
  rabi.model = CompareModel::Rabi;
  rabi.bar = 1e-8;
  // Populations grow to about 8e3 on this window, so 1e-10 misses the bar.
  rabi.rel_tol = 1e-13;
  rabi.abs_tol = 1e-13;
  rabi.assumed = {"delta = 0.3", "t in [0, 40]"};
  v.push_back(rabi);
  Preset rabi_map = map("fig7b", "figure 7 panel b", "Rabi population2 over (t, kappa), delta = 0.3",
                        "interferogram", {0, 1, 0, 0.3, 0.3}, AxisSpec{AxisName::T, 0, 40, 400},
                        AxisSpec{AxisName::Kappa, 0, 1, 101}, Observable::Population2,
                        {"delta = 0.3", "kappa in [0, 1]", "t in [0, 40]"});
  rabi_map.model = CompareModel::Rabi;
  rabi_map.t0 = 0;
  rabi_map.t1 = 40;
  v.push_back(rabi_map);

  // |z| <= 8 on [-3.9, 3.9] for alpha P = 4, kappa = 0.3.
  Preset lz;
  lz.name = "fig8a";
  lz.figure = "figure 8 panel a";
  lz.summary = "Landau-Zener closed form vs linear-detuning integration, kappa = 0.3, P = 4, delta = 0.3";
  lz.subcommand = "compare";
  lz.params = {4, 1, 0, 0.3, 0.3};
  lz.t0 = -3.9;
  lz.t1 = 3.9;
  lz.points = 100;
  lz.axis1 = AxisSpec{AxisName::T, -3.9, 3.9, 100};
  lz.model = CompareModel::LandauZener;
  lz.bar = 1e-5;
  lz.assumed = {"delta = 0.3", "t in [-3.9, 3.9]"};
  v.push_back(lz);
  Preset lz_map = map("fig8b", "figure 8 panel b", "Landau-Zener population2 over (t, kappa), P = 4, delta = 0.3",
                      "interferogram", {4, 1, 0, 0.3, 0.3}, AxisSpec{AxisName::T, -3.9, 3.9, 200},
                      AxisSpec{AxisName::Kappa, 0, 1, 101}, Observable::Population2,
                      {"delta = 0.3", "kappa in [0, 1]", "t in [-3.9, 3.9]"});
  lz_map.model = CompareModel::LandauZener;
  lz_map.t0 = -3.9;
  lz_map.t1 = 3.9;
  v.push_back(lz_map);
  return v;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build();
  return all;
}

const Preset* find_preset(std::string_view name) {
  if (name == "fig7") name = "fig7a";
  if (name == "fig8") name = "fig8a";
  for (const Preset& p : presets()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

std::string preset_listing() {
  std::ostringstream out;
  out << "Presets (natural units, alpha = 1 unless stated; fig7 and fig8 alias fig7a and fig8a):\n";
  for (const Preset& p : presets()) {
    out << "  " << p.name << std::string(p.name.size() < 8 ? 8 - p.name.size() : 1, ' ') << p.figure << " ["
        << p.subcommand << "]: " << p.summary << '\n';
  }
  return out.str();
}

}  // namespace tanhsim
