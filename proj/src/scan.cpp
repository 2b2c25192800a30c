#include "tanhsim/scan.hpp"

#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <span>
#include <thread>

#include "tanhsim/analytic.hpp"
#include "tanhsim/errors.hpp"
#include "tanhsim/limits.hpp"
#include "tanhsim/ode.hpp"

namespace tanhsim {
namespace {

constexpr double kMaxFallbackFraction = 0.01;

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view s, const std::array<std::pair<std::string_view, Enum>, N>& table,
                std::string_view what) {
  for (const auto& [name, value] : table) {
    if (name == s) return value;
  }
  throw InvalidArgument(std::string("unknown ") + std::string(what) + " '" + std::string(s) + "'");
}

template <typename Enum, std::size_t N>
std::string_view enum_name(Enum e, const std::array<std::pair<std::string_view, Enum>, N>& table) {
  for (const auto& [name, value] : table) {
    if (value == e) return name;
  }
  return "?";
}

constexpr std::array<std::pair<std::string_view, AxisName>, 6> kAxisNames = {{{"t", AxisName::T},
                                                                              {"delta", AxisName::Delta},
                                                                              {"kappa", AxisName::Kappa},
                                                                              {"beta", AxisName::Beta},
                                                                              {"P", AxisName::P},
                                                                              {"alpha", AxisName::Alpha}}};

constexpr std::array<std::pair<std::string_view, Observable>, 6> kObservables = {
    {{"population1", Observable::Population1},
     {"population2", Observable::Population2},
     {"reE", Observable::ReE},
     {"imE", Observable::ImE},
     {"zone", Observable::Zone},
     {"deviation", Observable::Deviation}}};

constexpr std::array<std::pair<std::string_view, Solver>, 3> kSolvers = {
    {{"analytic", Solver::Analytic}, {"numeric", Solver::Numeric}, {"both", Solver::Both}}};

constexpr std::array<std::pair<std::string_view, CompareModel>, 3> kCompareModels = {
    {{"tanh", CompareModel::Tanh}, {"rabi", CompareModel::Rabi}, {"lz", CompareModel::LandauZener}}};

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

IntegrationSpec make_spec(double t0, double t1, const SolverSettings& s) {
  IntegrationSpec spec;
  spec.t0 = t0;
  spec.t1 = t1;
  spec.rel_tol = s.rel_tol;
  spec.abs_tol = s.abs_tol;
  return spec;
}

struct SeriesOutcome {
  std::vector<Eigen::Vector2d> pops;
  std::size_t fallback = 0;
  std::vector<std::string> warnings;
};

SeriesOutcome numeric_series(const ModelParams& p, double t0, std::span<const double> times,
                             const SolverSettings& s) {
  const double t1 = times.empty() ? t0 : times.back();
  const auto states = evolve_on_grid(TanhHamiltonian{p}, make_spec(t0, t1, s), StateVector(0.0, 1.0), times);
  SeriesOutcome out;
  out.pops.reserve(states.size());
  for (const auto& psi : states) out.pops.push_back(populations(psi));
  return out;
}

// Analytic populations with a numeric recomputation of every point that
// fails; the number of such points is reported.
SeriesOutcome analytic_series(const ModelParams& p, double t0, std::span<const double> times,
                              const SolverSettings& s) {
  SeriesOutcome out;
  out.pops.resize(times.size());
  std::vector<std::size_t> failed;
  std::optional<AnalyticPropagator> prop;
  try {
    prop.emplace(p, t0);
    out.warnings = prop->warnings();
  } catch (const Error& e) {
    out.warnings.push_back(std::string("analytic propagator unavailable: ") + e.what());
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!prop) {
      failed.push_back(i);
      continue;
    }
    try {
      const StateVector psi = (*prop)(times[i]).col(1);
      if (!psi.allFinite()) throw NumericalFailure("non-finite analytic value");
      out.pops[i] = populations(psi);
    } catch (const Error&) {
      failed.push_back(i);
    }
  }
  if (!failed.empty()) {
    const SeriesOutcome num = numeric_series(p, t0, times, s);
    for (std::size_t i : failed) out.pops[i] = num.pops[i];
    out.fallback = failed.size();
  }
  return out;
}

void require_finite(const Eigen::MatrixXd& m) {
  if (!m.allFinite()) throw NumericalFailure("scan produced a non-finite value");
}

void check_fallback(std::size_t fallback, std::size_t total, ScanResult& r) {
  r.fallback_points = fallback;
  if (fallback == 0) return;
  r.warnings.push_back(std::to_string(fallback) + " of " + std::to_string(total) +
                       " points recomputed numerically after an analytic failure");
  if (static_cast<double>(fallback) > kMaxFallbackFraction * static_cast<double>(total)) {
    throw NumericalFailure("more than 1% of grid points failed in the analytic solver");
  }
}

double population_of(const Eigen::Vector2d& pops, Observable o) {
  return o == Observable::Population1 ? pops(0) : pops(1);
}

}  // namespace

std::string_view to_string(AxisName a) { return enum_name(a, kAxisNames); }
AxisName parse_axis_name(std::string_view s) { return parse_enum(s, kAxisNames, "axis"); }
std::string_view to_string(Observable o) { return enum_name(o, kObservables); }
Observable parse_observable(std::string_view s) { return parse_enum(s, kObservables, "observable"); }
std::string_view to_string(Solver s) { return enum_name(s, kSolvers); }
Solver parse_solver(std::string_view s) { return parse_enum(s, kSolvers, "solver"); }
std::string_view to_string(CompareModel m) { return enum_name(m, kCompareModels); }
CompareModel parse_compare_model(std::string_view s) { return parse_enum(s, kCompareModels, "model"); }

std::vector<double> AxisSpec::values() const {
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i) v[i] = value(i);
  return v;
}

void validate(const AxisSpec& axis) {
  const std::string name(to_string(axis.name));
  if (axis.count < 2) throw InvalidArgument("axis " + name + ": count must be at least 2");
  if (!std::isfinite(axis.min) || !std::isfinite(axis.max) || !(axis.min < axis.max)) {
    throw InvalidArgument("axis " + name + ": need finite min < max");
  }
  if (axis.name == AxisName::Alpha && !(axis.min > 0.0)) {
    throw InvalidArgument("axis alpha: the sweep rate must stay positive");
  }
}

ModelParams with_axis_value(const ModelParams& p, AxisName name, double v) {
  ModelParams q = p;
  switch (name) {
    case AxisName::T: break;
    case AxisName::Delta: q.delta = v; break;
    case AxisName::Kappa: q.kappa = v; break;
    case AxisName::Beta: q.beta = v; break;
    case AxisName::P: q.P = v; break;
    case AxisName::Alpha: q.alpha = v; break;
  }
  return q;
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& body) {
  const std::size_t threads = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, workers)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex guard;
  std::size_t first_failure = n;
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(guard);
        if (i < first_failure) {
          first_failure = i;
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::size_t k = 0; k < threads; ++k) pool.emplace_back(worker);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

ScanResult run_time_series(const ModelParams& p, const AxisSpec& axis, const SolverSettings& settings) {
  const auto start = Clock::now();
  validate(p);
  validate(axis);
  if (axis.name != AxisName::T) throw InvalidArgument("time series: the axis must be t");
  const std::vector<double> times = axis.values();
  const double t0 = times.front();

  ScanResult r;
  r.axes = {axis};
  const bool analytic = settings.solver != Solver::Numeric;
  SeriesOutcome main = analytic ? analytic_series(p, t0, times, settings) : numeric_series(p, t0, times, settings);
  r.warnings = main.warnings;
  check_fallback(main.fallback, times.size(), r);

  const Eigen::Index n = static_cast<Eigen::Index>(times.size());
  Eigen::VectorXd p1(n), p2(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    p1(i) = main.pops[i](0);
    p2(i) = main.pops[i](1);
  }
  r.series = {{Observable::Population1, p1}, {Observable::Population2, p2}};
  if (settings.solver == Solver::Both) {
    const SeriesOutcome num = numeric_series(p, t0, times, settings);
    Eigen::VectorXd dev(n);
    for (Eigen::Index i = 0; i < n; ++i) dev(i) = (main.pops[i] - num.pops[i]).cwiseAbs().maxCoeff();
    r.max_deviation = dev.maxCoeff();
    r.series.emplace_back(Observable::Deviation, dev);
  }
  r.observable = Observable::Population2;
  r.values = p2;
  for (const auto& [o, v] : r.series) require_finite(v);
  r.wall_time_ms = elapsed_ms(start);
  return r;
}

ScanResult run_interferogram(const ModelParams& p, const AxisSpec& ax1, const AxisSpec& ax2,
                             Observable observable, const SolverSettings& settings) {
  const auto start = Clock::now();
  validate(p);
  validate(ax1);
  validate(ax2);
  if (ax1.name == ax2.name) throw InvalidArgument("interferogram: axes must differ");
  if (observable != Observable::Population1 && observable != Observable::Population2) {
    throw InvalidArgument("interferogram: observable must be population1 or population2");
  }
  if (settings.solver == Solver::Both) throw InvalidArgument("interferogram: solver must be analytic or numeric");

  ScanResult r;
  r.axes = {ax1, ax2};
  r.observable = observable;
  r.values.resize(ax1.count, ax2.count);
  const bool analytic = settings.solver == Solver::Analytic;
  auto series = [&](const ModelParams& q, double t0, std::span<const double> times) {
    return analytic ? analytic_series(q, t0, times, settings) : numeric_series(q, t0, times, settings);
  };

  const bool t_first = ax1.name == AxisName::T;
  const bool t_second = ax2.name == AxisName::T;
  const std::size_t tasks = t_first ? ax2.count : t_second ? ax1.count : ax1.count * ax2.count;
  std::vector<SeriesOutcome> outcomes(tasks);

  parallel_for(tasks, settings.workers, [&](std::size_t k) {
    if (t_first || t_second) {
      const AxisSpec& t_axis = t_first ? ax1 : ax2;
      const AxisSpec& other = t_first ? ax2 : ax1;
      const ModelParams q = with_axis_value(p, other.name, other.value(static_cast<int>(k)));
      const std::vector<double> times = t_axis.values();
      outcomes[k] = series(q, times.front(), times);
    } else {
      const int i = static_cast<int>(k / ax2.count);
      const int j = static_cast<int>(k % ax2.count);
      const ModelParams q = with_axis_value(with_axis_value(p, ax1.name, ax1.value(i)), ax2.name, ax2.value(j));
      const double times[] = {settings.t1};
      outcomes[k] = series(q, settings.t0, times);
    }
  });

  std::size_t fallback = 0;
  for (std::size_t k = 0; k < tasks; ++k) {
    const SeriesOutcome& o = outcomes[k];
    fallback += o.fallback;
    r.warnings.insert(r.warnings.end(), o.warnings.begin(), o.warnings.end());
    for (std::size_t m = 0; m < o.pops.size(); ++m) {
      const double v = population_of(o.pops[m], observable);
      if (t_first) r.values(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k)) = v;
      else if (t_second) r.values(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(m)) = v;
      else r.values(static_cast<Eigen::Index>(k / ax2.count), static_cast<Eigen::Index>(k % ax2.count)) = v;
    }
  }
  check_fallback(fallback, static_cast<std::size_t>(ax1.count) * ax2.count, r);
  require_finite(r.values);
  r.wall_time_ms = elapsed_ms(start);
  return r;
}

ScanResult run_parameter_sweep(const ModelParams& p, const AxisSpec& axis, Observable observable,
                               const SolverSettings& settings) {
  if (axis.name == AxisName::T) {
    ScanResult r = run_time_series(p, axis, settings);
    if (observable == Observable::Population1) {
      r.observable = observable;
      r.values = r.series.front().second;
    }
    return r;
  }
  const auto start = Clock::now();
  validate(p);
  validate(axis);
  if (observable != Observable::Population1 && observable != Observable::Population2) {
    throw InvalidArgument("parameter sweep: observable must be population1 or population2");
  }
  ScanResult r;
  r.axes = {axis};
  r.observable = observable;
  const std::size_t n = static_cast<std::size_t>(axis.count);
  std::vector<SeriesOutcome> main(n);
  std::vector<SeriesOutcome> check(settings.solver == Solver::Both ? n : 0);
  parallel_for(n, settings.workers, [&](std::size_t k) {
    const ModelParams q = with_axis_value(p, axis.name, axis.value(static_cast<int>(k)));
    const double times[] = {settings.t1};
    main[k] = settings.solver == Solver::Numeric ? numeric_series(q, settings.t0, times, settings)
                                                 : analytic_series(q, settings.t0, times, settings);
    if (!check.empty()) check[k] = numeric_series(q, settings.t0, times, settings);
  });
  Eigen::VectorXd p1(axis.count), p2(axis.count), dev(axis.count);
  std::size_t fallback = 0;
  for (std::size_t k = 0; k < n; ++k) {
    fallback += main[k].fallback;
    r.warnings.insert(r.warnings.end(), main[k].warnings.begin(), main[k].warnings.end());
    p1(k) = main[k].pops[0](0);
    p2(k) = main[k].pops[0](1);
    if (!check.empty()) dev(k) = (main[k].pops[0] - check[k].pops[0]).cwiseAbs().maxCoeff();
  }
  check_fallback(fallback, n, r);
  r.series = {{Observable::Population1, p1}, {Observable::Population2, p2}};
  if (!check.empty()) {
    r.series.emplace_back(Observable::Deviation, dev);
    r.max_deviation = dev.maxCoeff();
  }
  r.values = observable == Observable::Population1 ? p1 : p2;
  for (const auto& [o, v] : r.series) require_finite(v);
  r.wall_time_ms = elapsed_ms(start);
  return r;
}

ScanResult run_limit_map(const ModelParams& p, CompareModel model, const AxisSpec& t_axis, const AxisSpec& other,
                         Observable observable, const SolverSettings& settings) {
  const auto start = Clock::now();
  validate(p);
  validate(t_axis);
  validate(other);
  if (t_axis.name != AxisName::T || other.name == AxisName::T) {
    throw InvalidArgument("limit map: needs one t axis and one parameter axis");
  }
  if (model == CompareModel::Tanh) throw InvalidArgument("limit map: model must be rabi or lz");
  if (observable != Observable::Population1 && observable != Observable::Population2) {
    throw InvalidArgument("limit map: observable must be population1 or population2");
  }
  ScanResult r;
  r.axes = {t_axis, other};
  r.observable = observable;
  r.values.resize(t_axis.count, other.count);
  const int component = observable == Observable::Population1 ? 0 : 1;
  parallel_for(static_cast<std::size_t>(other.count), settings.workers, [&](std::size_t k) {
    const int j = static_cast<int>(k);
    const ModelParams q = with_axis_value(p, other.name, other.value(j));
    if (model == CompareModel::Rabi) {
      for (int i = 0; i < t_axis.count; ++i) {
        r.values(i, j) = std::norm(rabi_amplitudes(t_axis.value(i) - t_axis.min, q)(component));
      }
    } else {
      const LZPropagator prop(q, t_axis.min);
      for (int i = 0; i < t_axis.count; ++i) r.values(i, j) = std::norm(prop(t_axis.value(i))(component));
    }
  });
  require_finite(r.values);
  r.wall_time_ms = elapsed_ms(start);
  return r;
}

ScanResult run_energy_map(const ModelParams& p, const AxisSpec& ax1, const AxisSpec& ax2, Observable part,
                          const SolverSettings& settings, double gap_threshold) {
  const auto start = Clock::now();
  validate(p);
  validate(ax1);
  validate(ax2);
  if (ax1.name == ax2.name) throw InvalidArgument("energy map: axes must differ");
  if (part != Observable::ReE && part != Observable::ImE && part != Observable::Zone) {
    throw InvalidArgument("energy map: part must be reE, imE or zone");
  }
  if (!(gap_threshold > 0.0)) throw InvalidArgument("energy map: gap threshold must be positive");

  ScanResult r;
  r.axes = {ax1, ax2};
  r.observable = part;
  r.values.resize(ax1.count, ax2.count);
  parallel_for(static_cast<std::size_t>(ax1.count) * ax2.count, settings.workers, [&](std::size_t k) {
    const int i = static_cast<int>(k / ax2.count);
    const int j = static_cast<int>(k % ax2.count);
    const double v1 = ax1.value(i);
    const double v2 = ax2.value(j);
    const ModelParams q = with_axis_value(with_axis_value(p, ax1.name, v1), ax2.name, v2);
    const double t = ax1.name == AxisName::T ? v1 : ax2.name == AxisName::T ? v2 : settings.t1;
    double v = 0.0;
    if (part == Observable::Zone) {
      v = classify_zone(t, q, gap_threshold).label == Zone::Forbidden ? 1.0 : 0.0;
    } else {
      const Complex e = eigenenergies(t, q).plus;
      v = part == Observable::ReE ? e.real() : e.imag();
    }
    r.values(i, j) = v;
  });
  require_finite(r.values);
  r.wall_time_ms = elapsed_ms(start);
  return r;
}

CompareReport run_compare(const ModelParams& p, double t0, double t1, int n, CompareModel model,
                          const SolverSettings& settings, double bar) {
  const auto start = Clock::now();
  validate(p);
  if (n < 2) throw InvalidArgument("compare: need at least 2 points");
  if (!(t0 < t1)) throw InvalidArgument("compare: need t0 < t1");
  if (!(bar > 0.0)) throw InvalidArgument("compare: bar must be positive");

  CompareReport rep;
  rep.model = model;
  rep.bar = bar;
  rep.times.resize(n);
  for (int i = 0; i < n; ++i) rep.times[i] = t0 + (t1 - t0) * i / (n - 1);
  rep.times.back() = t1;
  const IntegrationSpec spec = make_spec(t0, t1, settings);
  const std::span<const double> times(rep.times);

  std::vector<StateVector> closed(n);
  std::vector<StateVector> numeric;
  switch (model) {
    case CompareModel::Tanh: {
      const AnalyticPropagator prop(p, t0);
      rep.warnings = prop.warnings();
      for (int i = 0; i < n; ++i) closed[i] = prop(rep.times[i]).col(1);
      numeric = evolve_on_grid(TanhHamiltonian{p}, spec, StateVector(0.0, 1.0), times);
      break;
    }
    case CompareModel::Rabi:
      for (int i = 0; i < n; ++i) closed[i] = rabi_amplitudes(rep.times[i] - t0, p);
      numeric = evolve_on_grid(ConstantHamiltonian{p}, spec, StateVector(1.0, 0.0), times);
      break;
    case CompareModel::LandauZener: {
      const LZPropagator prop(p, t0);
      for (int i = 0; i < n; ++i) closed[i] = prop(rep.times[i]);
      numeric = evolve_on_grid(LinearHamiltonian{p}, spec, StateVector(1.0, 0.0), times);
      break;
    }
  }
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    rep.closed_form.push_back(populations(closed[i]));
    rep.numeric.push_back(populations(numeric[i]));
    const double d = (rep.closed_form.back() - rep.numeric.back()).cwiseAbs().maxCoeff();
    if (!std::isfinite(d)) throw NumericalFailure("compare: non-finite population");
    rep.max_deviation = std::max(rep.max_deviation, d);
    sum += d;
  }
  rep.mean_deviation = sum / n;
  rep.pass = rep.max_deviation < bar;
  rep.wall_time_ms = elapsed_ms(start);
  return rep;
}

}  // namespace tanhsim
