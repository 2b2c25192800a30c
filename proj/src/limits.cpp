#include "tanhsim/limits.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/SVD>

#include "tanhsim/errors.hpp"
#include "tanhsim/ode.hpp"
#include "tanhsim/specfun.hpp"

namespace tanhsim {
namespace {

const Complex kI(0.0, 1.0);
const Complex kEighthTurn(std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2);
constexpr double kMaxCondition = 1e12;
constexpr double kMaxLinearPhase = 0.3;

// sin(w) / w, entire.
Complex sinc(Complex w) {
  if (std::abs(w) < 1e-4) return 1.0 - w * w / 6.0;
  return std::sin(w) / w;
}

struct PcfPair {
  Complex d;         // D_nu
  Complex d_lower;   // D_{nu-1}
};

PcfPair pcf_pair(Complex nu, Complex z) {
  // Not via D_nu' = -z/2 D_nu + nu D_{nu-1}: for small nu and large z that
  // difference cancels to about |z|^2 / |nu| ulps.
  return {specfun::pcf_d({nu, z}), specfun::pcf_d({nu - 1.0, z})};
}

ConsistencyReport compare_populations(const ModelParams& p, double window, int samples,
                                      const auto& reduced, double bound) {
  if (!(window > 0.0) || samples < 2) throw InvalidArgument("consistency: need window > 0 and samples >= 2");
  std::vector<double> times(samples);
  for (int i = 0; i < samples; ++i) times[i] = -window + 2.0 * window * i / (samples - 1);
  IntegrationSpec spec;
  spec.t0 = -window;
  spec.t1 = window;
  spec.rel_tol = 1e-12;
  spec.abs_tol = 1e-12;
  const StateVector psi0(1.0, 0.0);
  const auto full = evolve_on_grid(TanhHamiltonian{p}, spec, psi0, std::span<const double>(times));
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Eigen::Vector2d a = populations(full[i]);
    const Eigen::Vector2d b = populations(reduced(times[i]));
    worst = std::max(worst, (a - b).cwiseAbs().maxCoeff());
  }
  return {worst, bound, samples};
}

}  // namespace

RabiSetup rabi_setup(const ModelParams& p) {
  validate(p);
  const Complex theta = coupling(p).theta;
  return {p.kappa, theta, std::sqrt(p.kappa * p.kappa + theta * theta)};
}

StateVector rabi_amplitudes(double t, const ModelParams& p) {
  const RabiSetup s = rabi_setup(p);
  const Complex w = s.frequency * t / 2.0;
  const Complex half_sin = t / 2.0 * sinc(w);  // sin(Omega t / 2) / Omega
  return StateVector(std::cos(w) - kI * s.xi * half_sin, -kI * s.theta * half_sin);
}

Probabilities rabi_probabilities(double t, const ModelParams& p) {
  const StateVector c = rabi_amplitudes(t, p);
  return {std::norm(c(0)), std::norm(c(1))};
}

double rabi_transition_mixing_angle_form(double t, const ModelParams& p) {
  validate(p);
  if (p.delta != 0.0) throw InvalidArgument("rabi: mixing-angle form needs a real coupling");
  const double theta = p.kappa;
  const double xi = p.kappa;
  if (theta == 0.0) return 0.0;
  const double csc = 1.0 / std::sin(std::atan2(theta, xi));
  const double s = std::sin(theta * csc * t / 2.0);
  return s * s / (csc * csc);
}

LZSetup lz_setup(const ModelParams& p, LambdaConvention convention) {
  validate(p);
  const double slope = p.alpha * p.P;
  if (!(slope > 0.0)) throw InvalidArgument("lz: alpha P must be positive");
  const Complex theta = coupling(p).theta;
  const Complex lambda =
      convention == LambdaConvention::Standard ? theta * theta / (4.0 * slope) : theta * theta / p.alpha;
  return {slope, lambda, -p.kappa / slope};
}

Complex lz_variable(double t, const ModelParams& p) {
  const LZSetup s = lz_setup(p);
  return std::sqrt(s.slope) * (t - s.crossing_time) * kEighthTurn;
}

LZPropagator::LZPropagator(const ModelParams& p, double t0)
    : params_(p), setup_(lz_setup(p)), t0_(t0), nu_(-kI * setup_.lambda) {
  const Complex theta = coupling(p).theta;
  scale_ = theta * kEighthTurn / (2.0 * std::sqrt(setup_.slope));
  if (theta == 0.0) return;
  const Complex z0 = lz_variable(t0, p);
  const PcfPair fwd = pcf_pair(nu_, z0);
  const PcfPair bwd = pcf_pair(nu_, -z0);
  Eigen::Matrix2cd m;
  m << fwd.d, bwd.d, scale_ * fwd.d_lower, -scale_ * bwd.d_lower;
  const Eigen::JacobiSVD<Eigen::Matrix2cd> svd(m);
  const auto& sv = svd.singularValues();
  if (!(sv(1) > 0.0) || sv(0) / sv(1) > kMaxCondition) {
    throw IllConditioned("lz: initial-condition system is ill conditioned");
  }
  const Eigen::Vector2cd a = m.partialPivLu().solve(Eigen::Vector2cd(1.0, 0.0));
  a_plus_ = a(0);
  a_minus_ = a(1);
}

StateVector LZPropagator::operator()(double t) const {
  if (t == t0_) return StateVector(1.0, 0.0);
  if (scale_ == 0.0) {
    // Uncoupled: psi1 = exp(-i/2 int_{t0}^{t} (alpha P s + kappa) ds)
    const double phase = 0.5 * (0.5 * setup_.slope * (t * t - t0_ * t0_) + params_.kappa * (t - t0_));
    return StateVector(std::polar(1.0, -phase), 0.0);
  }
  const Complex z = lz_variable(t, params_);
  const PcfPair fwd = pcf_pair(nu_, z);
  const PcfPair bwd = pcf_pair(nu_, -z);
  return StateVector(a_plus_ * fwd.d + a_minus_ * bwd.d,
                     scale_ * (a_plus_ * fwd.d_lower - a_minus_ * bwd.d_lower));
}

StateVector lz_amplitudes(double t, double t0, const ModelParams& p) { return LZPropagator(p, t0)(t); }

LZProbabilities lz_probabilities(double t, double t0, const ModelParams& p) {
  const StateVector c = lz_amplitudes(t, t0, p);
  return {std::norm(c(0)), std::norm(c(1))};
}

ConsistencyReport tanh_to_lz_consistency(const ModelParams& p, double window, int samples) {
  const double u_max = std::abs(p.beta) + p.alpha * std::abs(window);
  if (u_max > kMaxLinearPhase) throw InvalidArgument("tanh->lz: |alpha t + beta| exceeds 0.3 on the window");
  const LZPropagator lz(p, -window);
  const double bound = std::abs(p.P) * (u_max - std::tanh(u_max));
  return compare_populations(p, window, samples, lz, bound);
}

ConsistencyReport tanh_to_rabi_consistency(const ModelParams& p, double window, int samples) {
  validate(p);
  const double u_max = std::abs(p.beta) + p.alpha * std::abs(window);
  auto rabi = [&](double t) { return rabi_amplitudes(t + window, p); };
  return compare_populations(p, window, samples, rabi, std::abs(p.P) * std::tanh(u_max));
}

}  // namespace tanhsim
