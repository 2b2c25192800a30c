#include <atomic>
#include <stdexcept>

#include <gtest/gtest.h>

#include "tanhsim/analytic.hpp"
#include "tanhsim/errors.hpp"
#include "tanhsim/scan.hpp"

using namespace tanhsim;

TEST(Axis, EndpointsExact) {
  const AxisSpec a{AxisName::Delta, 0.1, 0.7, 7};
  EXPECT_EQ(a.value(0), 0.1);
  EXPECT_EQ(a.value(6), 0.7);
  EXPECT_EQ(a.values().size(), 7u);
}

TEST(Axis, NamesRoundTrip) {
  for (AxisName n : {AxisName::T, AxisName::Delta, AxisName::Kappa, AxisName::Beta, AxisName::P, AxisName::Alpha}) {
    EXPECT_EQ(parse_axis_name(to_string(n)), n);
  }
  EXPECT_THROW(parse_axis_name("gamma"), InvalidArgument);
  EXPECT_EQ(parse_observable("reE"), Observable::ReE);
  EXPECT_EQ(parse_solver("both"), Solver::Both);
  EXPECT_EQ(parse_compare_model("lz"), CompareModel::LandauZener);
}

TEST(Axis, Validation) {
  EXPECT_THROW(validate(AxisSpec{AxisName::T, 0, 1, 1}), InvalidArgument);
  EXPECT_THROW(validate(AxisSpec{AxisName::T, 1, 0, 5}), InvalidArgument);
  EXPECT_THROW(validate(AxisSpec{AxisName::Alpha, -1, 1, 5}), InvalidArgument);
  EXPECT_NO_THROW(validate(AxisSpec{AxisName::Beta, -1, 1, 5}));
}

TEST(Axis, WithAxisValue) {
  const ModelParams p{8, 1, 0, 5, 1};
  EXPECT_EQ(with_axis_value(p, AxisName::Kappa, 2.5).kappa, 2.5);
  EXPECT_EQ(with_axis_value(p, AxisName::P, 3).P, 3);
  EXPECT_EQ(with_axis_value(p, AxisName::T, 9).kappa, 5);
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(257);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(ParallelFor, RethrowsLowestIndex) {
  try {
    parallel_for(100, 4, [](std::size_t i) {
      if (i % 10 == 3) throw std::runtime_error(std::to_string(i));
    });
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "3");
  }
}

TEST(Scan, TimeSeriesBothSolvers) {
  SolverSettings s;
  s.solver = Solver::Both;
  const ScanResult r = run_time_series(ModelParams{8, 1, 0, 5, 1}, AxisSpec{AxisName::T, -5, 5, 50}, s);
  ASSERT_TRUE(r.max_deviation.has_value());
  EXPECT_LT(*r.max_deviation, 1e-6);
  EXPECT_EQ(r.series.size(), 3u);
  EXPECT_EQ(r.values.rows(), 50);
  EXPECT_TRUE(r.warnings.empty());
  // Starts in level 2.
  EXPECT_NEAR(r.series[1].second(0), 1.0, 1e-15);
}

TEST(Scan, SweepMatchesPropagator) {
  SolverSettings s;
  s.t0 = -5;
  s.t1 = 5;
  const ModelParams p{8, 1, 2, 10, 0};
  const AxisSpec axis{AxisName::Delta, 0, 2, 11};
  const ScanResult r = run_parameter_sweep(p, axis, Observable::Population2, s);
  for (int i = 0; i < axis.count; ++i) {
    const ModelParams q = with_axis_value(p, AxisName::Delta, axis.value(i));
    EXPECT_NEAR(r.values(i, 0), transition_probabilities(analytic_propagator(5, -5, q)).survival, 1e-12);
  }
}

TEST(Scan, InterferogramIndependentOfWorkers) {
  SolverSettings one, many;
  many.workers = 4;
  const ModelParams p{8, 1, 0, 5, 0};
  const AxisSpec t{AxisName::T, -5, 5, 40}, d{AxisName::Delta, 0, 2, 9};
  const ScanResult a = run_interferogram(p, t, d, Observable::Population2, one);
  const ScanResult b = run_interferogram(p, t, d, Observable::Population2, many);
  EXPECT_EQ(a.values, b.values);
  const ScanResult c = run_interferogram(p, d, AxisSpec{AxisName::Beta, -2, 2, 5}, Observable::Population1, one);
  const ScanResult e = run_interferogram(p, d, AxisSpec{AxisName::Beta, -2, 2, 5}, Observable::Population1, many);
  EXPECT_EQ(c.values, e.values);
}

TEST(Scan, InterferogramColumnEqualsTimeSeries) {
  SolverSettings s;
  const ModelParams p{8, 1, 0, 5, 0};
  const AxisSpec t{AxisName::T, -5, 5, 30}, d{AxisName::Delta, 0, 1, 3};
  const ScanResult map = run_interferogram(p, t, d, Observable::Population2, s);
  const ScanResult series = run_time_series(with_axis_value(p, AxisName::Delta, 1.0), t, s);
  for (int i = 0; i < t.count; ++i) EXPECT_EQ(map.values(i, 2), series.series[1].second(i));
}

TEST(Scan, EnergyMapZones) {
  SolverSettings s;
  s.t1 = 0.3;
  const ModelParams p{2, 1, 0, 0, 0};
  const ScanResult zones = run_energy_map(p, AxisSpec{AxisName::Delta, 0, 4, 9}, AxisSpec{AxisName::Beta, -1, 1, 5},
                                          Observable::Zone, s);
  for (int j = 0; j < 5; ++j) {
    EXPECT_EQ(zones.values(0, j), 0.0);  // delta = 0
    EXPECT_EQ(zones.values(8, j), 1.0);  // delta = 4 > |P|
  }
  const ScanResult re = run_energy_map(p, AxisSpec{AxisName::Delta, 0, 4, 9}, AxisSpec{AxisName::Beta, -1, 1, 5},
                                       Observable::ReE, s);
  EXPECT_NEAR(re.values(0, 2), std::abs(detuning(0.3, p)) / 2, 1e-14);
}

TEST(Scan, LimitMapStartsInLevelOne) {
  SolverSettings s;
  const ScanResult r = run_limit_map(ModelParams{0, 1, 0, 0.3, 0.3}, CompareModel::Rabi,
                                     AxisSpec{AxisName::T, 0, 40, 20}, AxisSpec{AxisName::Kappa, 0, 1, 4},
                                     Observable::Population1, s);
  for (int j = 0; j < 4; ++j) EXPECT_NEAR(r.values(0, j), 1.0, 1e-15);
  EXPECT_THROW(run_limit_map(ModelParams{0, 1, 0, 0.3, 0.3}, CompareModel::Tanh, AxisSpec{AxisName::T, 0, 1, 3},
                             AxisSpec{AxisName::Kappa, 0, 1, 3}, Observable::Population1, s),
               InvalidArgument);
}

TEST(Scan, CompareReports) {
  SolverSettings s;
  s.rel_tol = s.abs_tol = 1e-12;
  const CompareReport tanh = run_compare(ModelParams{8, 1, 0, 5, 1}, -5, 5, 50, CompareModel::Tanh, s);
  EXPECT_TRUE(tanh.pass);
  EXPECT_EQ(tanh.times.size(), 50u);
  const CompareReport lz = run_compare(ModelParams{4, 1, 0, 0.3, 0.3}, -3.9, 3.9, 50, CompareModel::LandauZener, s, 1e-5);
  EXPECT_TRUE(lz.pass);
  const CompareReport strict = run_compare(ModelParams{8, 1, 0, 5, 1}, -5, 5, 20, CompareModel::Tanh, s, 1e-30);
  EXPECT_FALSE(strict.pass);
}

TEST(Scan, InterferogramRejectsBothSolvers) {
  SolverSettings s;
  s.solver = Solver::Both;
  EXPECT_THROW(run_interferogram(ModelParams{8, 1, 0, 5, 0}, AxisSpec{AxisName::T, -1, 1, 3},
                                 AxisSpec{AxisName::Delta, 0, 1, 3}, Observable::Population2, s),
               InvalidArgument);
}
