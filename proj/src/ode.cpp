#include "tanhsim/ode.hpp"

namespace tanhsim {

void validate(const IntegrationSpec& spec) {
  auto in_range = [](double tol) { return tol >= 1e-14 && tol <= 1e-2; };
  if (!in_range(spec.rel_tol) || !in_range(spec.abs_tol)) {
    throw InvalidArgument("ode: tolerances must lie in [1e-14, 1e-2]");
  }
  if (spec.max_steps <= 0) throw InvalidArgument("ode: max_steps must be positive");
  if (!std::isfinite(spec.t0) || !std::isfinite(spec.t1)) throw InvalidArgument("ode: non-finite time");
}

IntegrationSpec asymptotic_window(const ModelParams& p) {
  validate(p);
  const double half = 10.0 / p.alpha * (1.0 + std::abs(p.beta));
  IntegrationSpec spec;
  spec.t0 = -half;
  spec.t1 = half;
  return spec;
}

Eigen::Matrix2cd LinearHamiltonian::operator()(double t) const {
  const Complex xi(0.5 * (params.alpha * params.P * t + params.kappa), 0.0);
  const Complex th = coupling(params).theta / 2.0;
  Eigen::Matrix2cd h;
  h << xi, th, th, -xi;
  return h;
}

Eigen::Matrix2cd ConstantHamiltonian::operator()(double) const {
  const Complex xi(0.5 * params.kappa, 0.0);
  const Complex th = coupling(params).theta / 2.0;
  Eigen::Matrix2cd h;
  h << xi, th, th, -xi;
  return h;
}

StateVector evolve(const ModelParams& p, const IntegrationSpec& spec, const StateVector& psi0) {
  validate(p);
  if (!psi0.allFinite()) throw InvalidArgument("ode: initial state is not finite");
  return evolve(TanhHamiltonian{p}, spec, psi0);
}

Propagator2x2 propagator_numeric(const ModelParams& p, const IntegrationSpec& spec) {
  validate(p);
  return propagator_numeric(TanhHamiltonian{p}, spec);
}

}  // namespace tanhsim
