#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "tanhsim/errors.hpp"
#include "tanhsim/model.hpp"

namespace tanhsim {

struct IntegrationSpec {
  double t0 = 0.0;
  double t1 = 0.0;
  double rel_tol = 1e-10;
  double abs_tol = 1e-10;
  long max_steps = 2'000'000;
};

/// Tolerances must lie in [1e-14, 1e-2] and max_steps must be positive.
void validate(const IntegrationSpec& spec);

/// Window used as a finite stand-in for (-inf, +inf): t in +-10 (1 + |beta|) / alpha,
/// so |alpha t + beta| >= 10 at both ends and tanh is saturated to within 1e-8.
IntegrationSpec asymptotic_window(const ModelParams& p);

template <typename F>
concept HamiltonianFunction = requires(const F& f, double t) {
  { f(t) } -> std::convertible_to<Eigen::Matrix2cd>;
};

namespace detail {

// Dormand-Prince 5(4) tableau.
struct DormandPrince {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
};

template <typename State>
double error_norm(const State& err, const State& y, const State& y_new, const IntegrationSpec& spec) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < err.size(); ++i) {
    const double scale =
        spec.abs_tol + spec.rel_tol * std::max(std::abs(y.data()[i]), std::abs(y_new.data()[i]));
    const double r = std::abs(err.data()[i]) / scale;
    acc += r * r;
  }
  return std::sqrt(acc / static_cast<double>(err.size()));
}

}  // namespace detail

/// Integrates i dY/dt = H(t) Y from spec.t0 and records Y at each requested
/// time. Times must be ordered in the direction of integration; steps are
/// clipped so that every requested time is hit exactly.
template <HamiltonianFunction H, typename State>
std::vector<State> evolve_on_grid(const H& hamiltonian, const IntegrationSpec& spec, const State& y0,
                                  std::span<const double> times) {
  using DP = detail::DormandPrince;
  validate(spec);
  const std::complex<double> minus_i(0.0, -1.0);
  auto rhs = [&](double t, const State& y) -> State { return minus_i * (hamiltonian(t) * y); };

  std::vector<State> out;
  out.reserve(times.size());
  double t = spec.t0;
  State y = y0;
  State k1 = rhs(t, y);
  long steps = 0;
  double h = 0.0;
  for (double target : times) {
    const double span = target - t;
    if (span == 0.0) {
      out.push_back(y);
      continue;
    }
    const double dir = span > 0 ? 1.0 : -1.0;
    if (h == 0.0 || h * dir < 0) {
      const double scale = hamiltonian(t).cwiseAbs().maxCoeff() + 1.0;
      h = dir * std::min(std::abs(span), 0.05 / scale);
    }
    while ((target - t) * dir > 0) {
      if (++steps > spec.max_steps) throw StepLimitExceeded("ode: max_steps exceeded");
      const double remaining = target - t;
      const bool clipped = std::abs(h) >= std::abs(remaining);
      const double step = clipped ? remaining : h;
      if (std::abs(step) <= 16 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)) &&
          !clipped) {
        throw StepUnderflow("ode: step size underflow");
      }

      const State k2 = rhs(t + DP::c2 * step, y + step * (DP::a21 * k1));
      const State k3 = rhs(t + DP::c3 * step, y + step * (DP::a31 * k1 + DP::a32 * k2));
      const State k4 = rhs(t + DP::c4 * step, y + step * (DP::a41 * k1 + DP::a42 * k2 + DP::a43 * k3));
      const State k5 =
          rhs(t + DP::c5 * step, y + step * (DP::a51 * k1 + DP::a52 * k2 + DP::a53 * k3 + DP::a54 * k4));
      const State k6 = rhs(t + step, y + step * (DP::a61 * k1 + DP::a62 * k2 + DP::a63 * k3 +
                                                 DP::a64 * k4 + DP::a65 * k5));
      const State y_new =
          y + step * (DP::b1 * k1 + DP::b3 * k3 + DP::b4 * k4 + DP::b5 * k5 + DP::b6 * k6);
      const State k7 = rhs(t + step, y_new);
      const State err =
          step * (DP::e1 * k1 + DP::e3 * k3 + DP::e4 * k4 + DP::e5 * k5 + DP::e6 * k6 + DP::e7 * k7);
      const double norm = detail::error_norm(err, y, y_new, spec);

      if (!std::isfinite(norm)) throw StepUnderflow("ode: non-finite error estimate");
      if (norm <= 1.0) {
        t = clipped ? target : t + step;
        y = y_new;
        k1 = k7;
        const double grow = norm == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(norm, -0.2));
        // A clipped step says nothing about the natural step size.
        if (!clipped) h = step * grow;
        else h = dir * std::max(std::abs(h), std::abs(step * grow));
      } else {
        h = step * std::max(0.2, 0.9 * std::pow(norm, -0.2));
        if (std::abs(h) <= 16 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
          throw StepUnderflow("ode: step size underflow");
        }
      }
    }
    out.push_back(y);
  }
  return out;
}

template <HamiltonianFunction H, typename State>
State evolve(const H& hamiltonian, const IntegrationSpec& spec, const State& y0) {
  const double end[] = {spec.t1};
  return evolve_on_grid(hamiltonian, spec, y0, std::span<const double>(end)).front();
}

/// Columns are the evolved canonical basis states.
template <HamiltonianFunction H>
Propagator2x2 propagator_numeric(const H& hamiltonian, const IntegrationSpec& spec) {
  return evolve(hamiltonian, spec, Propagator2x2(Propagator2x2::Identity()));
}

/// Hamiltonian of the tanh model as a callable.
struct TanhHamiltonian {
  ModelParams params;
  Eigen::Matrix2cd operator()(double t) const { return hamiltonian(t, params); }
};

/// Linearised detuning alpha P t + kappa with the model's coupling.
struct LinearHamiltonian {
  ModelParams params;
  Eigen::Matrix2cd operator()(double t) const;
};

/// Constant detuning kappa with the model's coupling.
struct ConstantHamiltonian {
  ModelParams params;
  Eigen::Matrix2cd operator()(double) const;
};

StateVector evolve(const ModelParams& p, const IntegrationSpec& spec, const StateVector& psi0);
Propagator2x2 propagator_numeric(const ModelParams& p, const IntegrationSpec& spec);

/// |psi1|^2 and |psi2|^2. Either may exceed 1 for a non-Hermitian evolution.
inline Eigen::Vector2d populations(const StateVector& psi) { return psi.cwiseAbs2(); }

}  // namespace tanhsim
