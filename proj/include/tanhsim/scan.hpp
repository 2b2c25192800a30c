#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "tanhsim/model.hpp"

namespace tanhsim {

enum class AxisName { T, Delta, Kappa, Beta, P, Alpha };

std::string_view to_string(AxisName a);
/// Accepts t, delta, kappa, beta, P, alpha. Throws InvalidArgument otherwise.
AxisName parse_axis_name(std::string_view s);

struct AxisSpec {
  AxisName name = AxisName::T;
  double min = 0.0;
  double max = 1.0;
  int count = 2;

  double value(int i) const { return i == count - 1 ? max : min + (max - min) * i / (count - 1); }
  std::vector<double> values() const;
};

/// count >= 2, min < max, finite bounds, and an alpha axis must stay positive.
void validate(const AxisSpec& axis);

/// Copy of p with the swept parameter replaced (the t axis leaves p unchanged).
ModelParams with_axis_value(const ModelParams& p, AxisName name, double v);

enum class Observable { Population1, Population2, ReE, ImE, Zone, Deviation };
enum class Solver { Analytic, Numeric, Both };

std::string_view to_string(Observable o);
std::string_view to_string(Solver s);
Observable parse_observable(std::string_view s);
Solver parse_solver(std::string_view s);

/// Closed-form model paired with its numeric counterpart.
enum class CompareModel { Tanh, Rabi, LandauZener };

std::string_view to_string(CompareModel m);
CompareModel parse_compare_model(std::string_view s);

struct SolverSettings {
  Solver solver = Solver::Analytic;
  double rel_tol = 1e-10;
  double abs_tol = 1e-10;
  /// Start time for runs whose axes do not include t.
  double t0 = -5.0;
  /// Sampling time for runs whose axes do not include t.
  double t1 = 5.0;
  int workers = 1;
};

/// Outcome of a scan. `values` has one row per point of the first axis and
/// one column per point of the second (a single column for 1-D runs). Extra
/// 1-D series (both populations, deviation) are kept in `series`.
struct ScanResult {
  std::vector<AxisSpec> axes;
  Observable observable = Observable::Population2;
  Eigen::MatrixXd values;
  std::vector<std::pair<Observable, Eigen::VectorXd>> series;
  std::vector<std::string> warnings;
  std::optional<double> max_deviation;
  std::size_t fallback_points = 0;
  double wall_time_ms = 0.0;
};

/// Runs body(i) for i in [0, n) on up to `workers` threads. Exceptions are
/// collected and the one with the lowest index is rethrown, so the outcome
/// does not depend on the schedule.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& body);

/// Populations of the state that starts in level 2 at axis.min. With
/// Solver::Both both solvers run and the deviation series is attached.
ScanResult run_time_series(const ModelParams& p, const AxisSpec& axis, const SolverSettings& settings);

/// Population at settings.t1 (evolved from settings.t0 in level 2) against a
/// single parameter axis. A t axis is delegated to run_time_series.
ScanResult run_parameter_sweep(const ModelParams& p, const AxisSpec& axis, Observable observable,
                               const SolverSettings& settings);

/// Population map over two distinct axes. When one axis is t, each value of
/// the other axis is one time series started at the t-axis minimum;
/// otherwise every point evolves from settings.t0 to settings.t1.
/// A point whose analytic evaluation fails is recomputed numerically and
/// counted; more than 1% of such points aborts with NumericalFailure.
ScanResult run_interferogram(const ModelParams& p, const AxisSpec& ax1, const AxisSpec& ax2,
                             Observable observable, const SolverSettings& settings);

/// Closed-form Rabi or Landau-Zener population map over a t axis and one
/// parameter axis, started in level 1 at the t-axis minimum.
ScanResult run_limit_map(const ModelParams& p, CompareModel model, const AxisSpec& t_axis, const AxisSpec& other,
                         Observable observable, const SolverSettings& settings);

/// Re E+, Im E+ or zone label (1 = Forbidden) over two axes at time settings.t1
/// (or the t-axis value).
ScanResult run_energy_map(const ModelParams& p, const AxisSpec& ax1, const AxisSpec& ax2, Observable part,
                          const SolverSettings& settings, double gap_threshold = kDefaultGapThreshold);

struct CompareReport {
  CompareModel model = CompareModel::Tanh;
  std::vector<double> times;
  std::vector<Eigen::Vector2d> closed_form;
  std::vector<Eigen::Vector2d> numeric;
  double max_deviation = 0.0;
  double mean_deviation = 0.0;
  double bar = 1e-6;
  bool pass = false;
  std::vector<std::string> warnings;
  double wall_time_ms = 0.0;
};

/// Closed-form against numeric populations on n uniform times in [t0, t1].
/// Tanh: analytic propagator against the ODE, started in level 2. Rabi:
/// constant detuning kappa, LandauZener: detuning alpha P t + kappa; both
/// started in level 1 at t0 and integrated numerically with the same
/// Hamiltonian.
CompareReport run_compare(const ModelParams& p, double t0, double t1, int n, CompareModel model,
                          const SolverSettings& settings, double bar = 1e-6);

}  // namespace tanhsim
