#include "tanhsim/analytic.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "tanhsim/errors.hpp"

namespace tanhsim {
namespace {

using specfun::UnitArg;

constexpr double kClamp = 1e-15;
constexpr double kDegenerateError = 1e-9;
constexpr double kDegenerateGuard = 1e-6;
constexpr double kDeltaShift = 1e-4;
constexpr double kMaxPhase = 300.0;  // |alpha t + beta| beyond which 1 - x underflows
const Complex kI(0.0, 1.0);

// Square root of `disc` on the sheet closest to `ref`, so that the root
// reduces to ref when the c^2 correction vanishes.
Complex aligned_sqrt(Complex disc, Complex ref) {
  Complex s = std::sqrt(disc);
  if ((s * std::conj(ref)).real() < 0.0) s = -s;
  return s;
}

// Roots of r^2 - p r + c^2 = 0: the small one (-> 0 with c) and its partner.
std::pair<Complex, Complex> indicial_roots(Complex p, Complex c2) {
  const Complex s = aligned_sqrt(p * p - 4.0 * c2, p);
  const Complex big = (p + s) / 2.0;
  const Complex small = big == 0.0 ? Complex(0.0) : c2 / big;
  return {small, big};
}

}  // namespace

double x_of_t(double t, const ModelParams& p) {
  const double x = 0.5 * (1.0 + std::tanh(p.alpha * t + p.beta));
  return std::clamp(x, kClamp, 1.0 - kClamp);
}

XPoint x_point(double t, const ModelParams& p) {
  const double u = p.alpha * t + p.beta;
  if (!(std::abs(u) <= kMaxPhase)) {
    std::ostringstream msg;
    msg << "analytic: |alpha t + beta| = " << std::abs(u) << " exceeds " << kMaxPhase;
    throw InvalidArgument(msg.str());
  }
  // log x = -log(1 + e^{-2u}), log(1 - x) = -log(1 + e^{2u})
  const double log_x = u >= 0 ? -std::log1p(std::exp(-2 * u)) : 2 * u - std::log1p(std::exp(2 * u));
  const double log_y = u <= 0 ? -std::log1p(std::exp(2 * u)) : -2 * u - std::log1p(std::exp(-2 * u));
  return {std::exp(log_x), std::exp(log_y), log_x, log_y};
}

HyperParams hyper_params(const ModelParams& p, Branch branch) {
  validate(p);
  HyperParams hp;
  hp.a = Complex(1.0, (p.P - p.kappa) / (2 * p.alpha));
  hp.b = 2.0 * Complex(1.0, p.P / (2 * p.alpha));
  hp.c = Complex(p.kappa, p.delta) / (4 * p.alpha);
  const Complex c2 = hp.c * hp.c;
  const auto [mu1, mu2] = indicial_roots(1.0 - hp.a, c2);
  const auto [nu1, nu2] = indicial_roots(1.0 + hp.a - hp.b, c2);
  hp.mu = branch == Branch::First ? mu1 : mu2;
  hp.nu = branch == Branch::First ? nu1 : nu2;
  hp.rho = hp.mu + hp.nu;
  hp.omega = hp.mu + hp.nu + hp.b - 1.0;
  hp.gamma = 2.0 * hp.mu + hp.a;
  hp.chi = Complex(0.0, (p.P - p.kappa) / (4 * p.alpha));
  hp.sigma_hat = Complex(0.0, (p.P + p.kappa) / (4 * p.alpha));
  if (degeneracy_distance(hp) < kDegenerateError) {
    std::ostringstream msg;
    msg << "gamma = " << hp.gamma << " is within 1e-9 of an integer";
    throw DegenerateParameters(msg.str());
  }
  return hp;
}

double degeneracy_distance(const HyperParams& hp) {
  return std::abs(hp.gamma - std::round(hp.gamma.real()));
}

BasisSolutions basis_solutions(const XPoint& xp, const HyperParams& hp) {
  const UnitArg ua{xp.x, xp.one_minus_x};
  const auto [a, b, c, mu, nu, rho, omega, gamma, chi, sigma] = hp;
  const Complex f0 = specfun::hyp2f1(rho, omega, gamma, ua);
  const Complex f0_prime = specfun::hyp2f1_derivative(rho, omega, gamma, ua);
  const Complex g2 = specfun::hyp2f1(rho - gamma + 1.0, omega - gamma + 1.0, 2.0 - gamma, ua);
  const Complex g1 = specfun::hyp2f1(rho - gamma + 1.0, omega - gamma + 1.0, 1.0 - gamma, ua);

  const double x = xp.x;
  const double y = xp.one_minus_x;
  const Complex prefactor = std::exp(mu * xp.log_x + nu * xp.log_one_minus_x);
  const Complex x_shift = std::exp((1.0 - gamma) * xp.log_x);
  // x (1 - x) d/dx of x^mu (1 - x)^nu is x^mu (1 - x)^nu (mu (1 - x) - nu x).
  const Complex edge = mu * y - nu * x;
  const Complex scale = kI / c;

  BasisSolutions s;
  s.r1 = prefactor * f0;
  s.t1s = prefactor * x_shift * g2;
  s.r2 = scale * prefactor * (x * y * f0_prime + edge * f0);
  // d/dx [x^{1-gamma} F(..; 2-gamma; x)] = (1-gamma) x^{-gamma} F(..; 1-gamma; x)
  s.t2s = scale * prefactor * x_shift * (edge * g2 + (1.0 - gamma) * y * g1);
  return s;
}

BasisSolutions basis_solutions(double x, const HyperParams& hp) {
  if (!(x > 0.0 && x < 1.0)) throw InvalidArgument("basis_solutions: x must lie in (0, 1)");
  return basis_solutions(XPoint{x, 1.0 - x, std::log(x), std::log1p(-x)}, hp);
}

Complex basis_wronskian(const XPoint& xp, const HyperParams& hp) {
  const Complex ex = 2.0 * hp.mu - hp.gamma + 1.0;
  const Complex ey = 2.0 * hp.nu + hp.gamma - hp.rho - hp.omega;
  return kI / hp.c * (1.0 - hp.gamma) * std::exp(ex * xp.log_x + ey * xp.log_one_minus_x);
}

Complex hypergeometric_wronskian(const XPoint& xp, const HyperParams& hp) {
  const Complex ey = hp.gamma - hp.rho - hp.omega - 1.0;
  return (1.0 - hp.gamma) * std::exp(-hp.gamma * xp.log_x + ey * xp.log_one_minus_x);
}

AnalyticPropagator::AnalyticPropagator(const ModelParams& p, double t0, Branch branch)
    : params_(p), t0_(t0), branch_(branch) {
  validate(p);
  if (p.delta == 0.0 && p.kappa == 0.0) {
    anchors_.push_back(make_anchor(p, 1.0));
    return;
  }
  // Probe gamma without the hard degeneracy check.
  double distance = 0.0;
  try {
    distance = degeneracy_distance(hyper_params(p, branch));
  } catch (const DegenerateParameters&) {
    distance = 0.0;
  }
  if (distance >= kDegenerateGuard) {
    anchors_.push_back(make_anchor(p, 1.0));
    return;
  }
  // Symmetric four-point stencil in delta; the weights reproduce a cubic at 0.
  const double h = kDeltaShift * p.alpha;
  constexpr std::array<std::pair<double, double>, 4> stencil = {
      {{-2.0, -1.0 / 6.0}, {-1.0, 4.0 / 6.0}, {1.0, 4.0 / 6.0}, {2.0, -1.0 / 6.0}}};
  for (const auto& [k, w] : stencil) {
    ModelParams shifted = p;
    shifted.delta += k * h;
    anchors_.push_back(make_anchor(shifted, w));
  }
  std::ostringstream msg;
  msg << "gamma within " << distance << " of an integer at delta = " << p.delta
      << "; propagator interpolated from delta +- " << h << ", +- " << 2 * h;
  warnings_.push_back(msg.str());
}

AnalyticPropagator::Anchor AnalyticPropagator::make_anchor(const ModelParams& p, double weight) const {
  Anchor anchor;
  anchor.params = p;
  anchor.weight = weight;
  anchor.x0 = x_point(t0_, p);
  if (p.delta == 0.0 && p.kappa == 0.0) {
    anchor.decoupled = true;
    anchor.hp.chi = Complex(0.0, p.P / (4 * p.alpha));
    anchor.hp.sigma_hat = anchor.hp.chi;
    return anchor;
  }
  anchor.hp = hyper_params(p, branch_);
  anchor.at_x0 = basis_solutions(anchor.x0, anchor.hp);
  anchor.det0 = basis_wronskian(anchor.x0, anchor.hp);
  return anchor;
}

Propagator2x2 AnalyticPropagator::evaluate(const Anchor& an, double t) const {
  const XPoint xp = x_point(t, an.params);
  const Complex gauge = std::exp(an.hp.chi * (xp.log_x - an.x0.log_x) +
                                 an.hp.sigma_hat * (xp.log_one_minus_x - an.x0.log_one_minus_x));
  Propagator2x2 u;
  if (an.decoupled) {
    u << gauge, 0.0, 0.0, 1.0 / gauge;
    return u;
  }
  const BasisSolutions s = basis_solutions(xp, an.hp);
  const BasisSolutions& s0 = an.at_x0;
  // Upsilon_{kk'}(x, x0) = T_k(x0) R_k'(x) - R_k(x0) T_k'(x)
  auto upsilon = [&](int k, int kp) {
    const Complex tk0 = k == 1 ? s0.t1s : s0.t2s;
    const Complex rk0 = k == 1 ? s0.r1 : s0.r2;
    const Complex rkp = kp == 1 ? s.r1 : s.r2;
    const Complex tkp = kp == 1 ? s.t1s : s.t2s;
    return tk0 * rkp - rk0 * tkp;
  };
  u << upsilon(2, 1), -upsilon(1, 1), upsilon(2, 2), -upsilon(1, 2);
  return gauge / an.det0 * u;
}

Propagator2x2 AnalyticPropagator::operator()(double t) const {
  if (t == t0_) return Propagator2x2::Identity();
  if (anchors_.size() == 1) return evaluate(anchors_.front(), t);
  Propagator2x2 u = Propagator2x2::Zero();
  for (const auto& anchor : anchors_) u += anchor.weight * evaluate(anchor, t);
  return u;
}

Propagator2x2 analytic_propagator(double t, double t0, const ModelParams& p) {
  return AnalyticPropagator(p, t0)(t);
}

TransitionProbabilities transition_probabilities(const Propagator2x2& u) {
  return {std::norm(u(1, 1)), std::norm(u(0, 1))};
}

}  // namespace tanhsim
