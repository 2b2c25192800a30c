#pragma once

#include <string>
#include <vector>

#include "tanhsim/model.hpp"
#include "tanhsim/specfun.hpp"

namespace tanhsim {

/// x(t) = (1 + tanh(alpha t + beta)) / 2, clamped to [1e-15, 1 - 1e-15].
double x_of_t(double t, const ModelParams& p);

/// The point x(t) with its complement and both logarithms evaluated
/// separately, so that nothing is lost to cancellation when tanh saturates.
struct XPoint {
  double x;
  double one_minus_x;
  double log_x;
  double log_one_minus_x;
};

XPoint x_point(double t, const ModelParams& p);

/// Hypergeometric data of the model. After the gauge
/// psi = x^chi (1 - x)^sigma_hat (A, (i / c) x (1 - x) dA/dx), the first
/// component A solves x(1-x) A'' + (a - b x) A' + c^2 / (x (1 - x)) A = 0 and
/// A = x^mu (1 - x)^nu F(rho, omega; gamma; x).
struct HyperParams {
  Complex a, b, c;
  Complex mu, nu;
  Complex rho, omega, gamma;
  Complex chi, sigma_hat;
};

/// Which root of each indicial equation is used. `First` is the root that
/// vanishes with the coupling; `Second` is its partner.
enum class Branch { First, Second };

/// Throws DegenerateParameters when gamma lies within 1e-9 of an integer: at
/// nonpositive integers F(rho, omega; gamma; x) has a pole, at gamma = 1 the two
/// Frobenius exponents coincide and above it the companion solution has a pole.
HyperParams hyper_params(const ModelParams& p, Branch branch = Branch::First);

/// Distance from gamma to the nearest integer.
double degeneracy_distance(const HyperParams& hp);

/// Values of the two independent solutions (R1, R2) and (T1, T2) of the
/// gauge-reduced first-order system at one point.
struct BasisSolutions {
  Complex r1;
  Complex t1s;
  Complex r2;
  Complex t2s;
};

BasisSolutions basis_solutions(const XPoint& x, const HyperParams& hp);
BasisSolutions basis_solutions(double x, const HyperParams& hp);

/// R1 T2 - R2 T1 in closed form: (i/c)(1-gamma) x^{2mu-gamma+1} (1-x)^{2nu+gamma-rho-omega}.
Complex basis_wronskian(const XPoint& x, const HyperParams& hp);

/// W[F(rho,omega;gamma;x), x^{1-gamma} F(rho-gamma+1,omega-gamma+1;2-gamma;x)]
/// = (1-gamma) x^{-gamma} (1-x)^{gamma-rho-omega-1}.
Complex hypergeometric_wronskian(const XPoint& x, const HyperParams& hp);

/// Exact propagator U(t, t0) for a fixed start time. Basis values at t0 are
/// computed once and reused for every t.
///
/// When gamma sits within 1e-6 of an integer the basis is ill conditioned;
/// the propagator is then interpolated from four evaluations with delta
/// shifted by +-h and +-2h (h = 1e-4 alpha), and a warning is recorded.
class AnalyticPropagator {
 public:
  AnalyticPropagator(const ModelParams& p, double t0, Branch branch = Branch::First);

  Propagator2x2 operator()(double t) const;

  const ModelParams& params() const { return params_; }
  double t0() const { return t0_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  struct Anchor {
    ModelParams params;
    HyperParams hp;
    XPoint x0;
    BasisSolutions at_x0;
    Complex det0;
    bool decoupled = false;
    double weight = 1.0;
  };

  Anchor make_anchor(const ModelParams& p, double weight) const;
  Propagator2x2 evaluate(const Anchor& anchor, double t) const;

  ModelParams params_;
  double t0_;
  Branch branch_;
  std::vector<Anchor> anchors_;
  std::vector<std::string> warnings_;
};

Propagator2x2 analytic_propagator(double t, double t0, const ModelParams& p);

struct TransitionProbabilities {
  double survival;    // |U22|^2
  double transition;  // |U12|^2
};

TransitionProbabilities transition_probabilities(const Propagator2x2& u);

}  // namespace tanhsim
