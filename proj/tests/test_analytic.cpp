#include <vector>

#include <gtest/gtest.h>

#include "tanhsim/analytic.hpp"
#include "tanhsim/errors.hpp"
#include "tanhsim/ode.hpp"

using namespace tanhsim;
using specfun::hyp2f1;
using specfun::hyp2f1_derivative;

namespace {

IntegrationSpec span(double t0, double t1) {
  IntegrationSpec s;
  s.t0 = t0;
  s.t1 = t1;
  s.rel_tol = 1e-12;
  s.abs_tol = 1e-12;
  return s;
}

double max_relative_gap(const ModelParams& p, double t0, double t1) {
  const AnalyticPropagator u(p, t0);
  double worst = 0.0;
  for (int i = 1; i <= 20; ++i) {
    const double t = t0 + (t1 - t0) * i / 20;
    const Propagator2x2 numeric = propagator_numeric(p, span(t0, t));
    worst = std::max(worst, (u(t) - numeric).norm() / numeric.norm());
  }
  return worst;
}

}  // namespace

TEST(Analytic, XPointKeepsComplementAccurate) {
  const ModelParams p{1, 1, 2, 0, 0};
  const XPoint x = x_point(1.0, p);
  EXPECT_NEAR(x.x, 0.99752737684336523, 1e-15);
  EXPECT_NEAR(x.one_minus_x, 1 - 0.99752737684336523, 1e-17);
  const XPoint far = x_point(40.0, p);
  EXPECT_GT(far.one_minus_x, 0.0);
  EXPECT_NEAR(far.log_one_minus_x, -2 * 42.0 + std::log1p(std::exp(-84.0)) * -1, 1e-9);
  EXPECT_NEAR(x_of_t(0.0, ModelParams{1, 1, 0, 0, 0}), 0.5, 1e-16);
}

TEST(Analytic, HyperParamsRelations) {
  const HyperParams hp = hyper_params(ModelParams{8, 1, 0, 5, 1});
  EXPECT_LT(std::abs(hp.rho - (hp.mu + hp.nu)), 1e-15);
  EXPECT_LT(std::abs(hp.omega - (hp.rho + hp.b - 1.0)), 1e-15);
  EXPECT_LT(std::abs(hp.gamma - (2.0 * hp.mu + hp.a)), 1e-15);
  // Indicial equations: mu^2 - (1 - a) mu + c^2 = 0, nu^2 - (1 + a - b) nu + c^2 = 0.
  EXPECT_LT(std::abs(hp.mu * hp.mu - (1.0 - hp.a) * hp.mu + hp.c * hp.c), 1e-13);
  EXPECT_LT(std::abs(hp.nu * hp.nu - (1.0 + hp.a - hp.b) * hp.nu + hp.c * hp.c), 1e-13);
}

TEST(Analytic, FirstBranchVanishesWithCoupling) {
  const HyperParams hp = hyper_params(ModelParams{3, 1, 0, 0, 0});
  EXPECT_EQ(hp.mu, Complex(0, 0));
  EXPECT_EQ(hp.nu, Complex(0, 0));
}

TEST(Analytic, DegenerateGammaRejected) {
  // P = 2, kappa = 0, delta = 2 puts gamma on an integer.
  const ModelParams p{2, 1, 0, 0, 2};
  EXPECT_THROW(hyper_params(p), DegenerateParameters);
}

TEST(Analytic, DegenerateGammaInterpolated) {
  const ModelParams p{2, 1, 0, 0, 2};
  const AnalyticPropagator u(p, -4);
  EXPECT_FALSE(u.warnings().empty());
  const Propagator2x2 numeric = propagator_numeric(p, span(-4, 3));
  EXPECT_LT((u(3) - numeric).norm() / numeric.norm(), 1e-9);
}

TEST(Analytic, BasisWronskianClosedForm) {
  for (const ModelParams& p : {ModelParams{8, 1, 0, 5, 1}, ModelParams{8, 1, 2, 10, 1}, ModelParams{3, 2, -1, 0.5, 0.7}}) {
    const HyperParams hp = hyper_params(p);
    for (double t : {-3.0, -0.4, 0.0, 1.2, 4.0}) {
      const XPoint x = x_point(t, p);
      const BasisSolutions s = basis_solutions(x, hp);
      const Complex w = s.r1 * s.t2s - s.r2 * s.t1s;
      const Complex closed = basis_wronskian(x, hp);
      EXPECT_LT(std::abs(w - closed) / std::abs(closed), 1e-8) << "t = " << t;
    }
  }
}

TEST(Analytic, HypergeometricWronskian) {
  const ModelParams p{8, 1, 0, 5, 1};
  const HyperParams hp = hyper_params(p);
  for (double x : {0.1, 0.4, 0.7}) {
    const specfun::UnitArg u{x, 1 - x};
    const Complex f = hyp2f1(hp.rho, hp.omega, hp.gamma, u);
    const Complex fp = hyp2f1_derivative(hp.rho, hp.omega, hp.gamma, u);
    const Complex a2 = hp.rho - hp.gamma + 1.0, b2 = hp.omega - hp.gamma + 1.0, c2 = 2.0 - hp.gamma;
    const Complex xg = std::pow(Complex(x), 1.0 - hp.gamma);
    const Complex g = xg * hyp2f1(a2, b2, c2, u);
    const Complex gp = (1.0 - hp.gamma) / x * g + xg * hyp2f1_derivative(a2, b2, c2, u);
    const Complex w = f * gp - fp * g;
    const XPoint xp{x, 1 - x, std::log(x), std::log1p(-x)};
    const Complex closed = hypergeometric_wronskian(xp, hp);
    EXPECT_LT(std::abs(w - closed) / std::abs(closed), 1e-10);
  }
}

TEST(Analytic, IdentityAtStart) {
  const AnalyticPropagator u(ModelParams{8, 1, 0, 5, 1}, -2);
  EXPECT_LT((u(-2) - Propagator2x2::Identity()).norm(), 1e-12);
}

TEST(Analytic, MatchesNumericOnFigureParameters) {
  EXPECT_LT(max_relative_gap(ModelParams{8, 1, 0, 5, 1}, -5, 5), 1e-9);
  EXPECT_LT(max_relative_gap(ModelParams{8, 1, 0, 5, 0}, -5, 5), 1e-9);
  EXPECT_LT(max_relative_gap(ModelParams{8, 1, 2, 10, 1}, -5, 5), 1e-9);
  EXPECT_LT(max_relative_gap(ModelParams{8, 1, 7, 5, 1}, -12, -2), 1e-9);
  EXPECT_LT(max_relative_gap(ModelParams{0.7, 1.8, -0.6, 2.5, 0.4}, -3, 3), 1e-9);
}

TEST(Analytic, NegativeAmplitudeAndZeroCoupling) {
  EXPECT_LT(max_relative_gap(ModelParams{-4, 1, 0.3, 1, 0.5}, -4, 4), 1e-9);
  // delta = kappa = 0: the levels decouple and U is diagonal.
  const ModelParams p{3, 1, 0, 0, 0};
  const Propagator2x2 u = analytic_propagator(2, -2, p);
  EXPECT_EQ(u(0, 1), Complex(0, 0));
  EXPECT_EQ(u(1, 0), Complex(0, 0));
  EXPECT_LT((u - propagator_numeric(p, span(-2, 2))).norm(), 1e-10);
}

TEST(Analytic, SecondBranchGivesSamePropagator) {
  const ModelParams p{5, 1, 0.5, 2, 0.8};
  const AnalyticPropagator first(p, -3, Branch::First);
  const AnalyticPropagator second(p, -3, Branch::Second);
  for (double t : {-1.0, 0.5, 3.0}) EXPECT_LT((first(t) - second(t)).norm() / first(t).norm(), 1e-9);
}

TEST(Analytic, Composition) {
  const ModelParams p{8, 1, 0, 5, 1};
  const Propagator2x2 direct = analytic_propagator(3, -3, p);
  const Propagator2x2 split = analytic_propagator(3, 0.5, p) * analytic_propagator(0.5, -3, p);
  EXPECT_LT((direct - split).norm() / direct.norm(), 1e-10);
}

TEST(Analytic, UnitaryWhenHermitian) {
  const ModelParams p{8, 1, 0, 5, 0};
  const AnalyticPropagator u(p, -5);
  for (int i = 0; i <= 50; ++i) {
    const TransitionProbabilities tp = transition_probabilities(u(-5 + 0.2 * i));
    EXPECT_NEAR(tp.survival + tp.transition, 1.0, 1e-10);
  }
}

TEST(Analytic, RejectsHugePhase) {
  EXPECT_THROW(analytic_propagator(400, 0, ModelParams{8, 1, 0, 5, 1}), InvalidArgument);
}
