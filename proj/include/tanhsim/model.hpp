#pragma once

#include <cmath>
#include <complex>
#include <string_view>

#include <Eigen/Dense>

namespace tanhsim {

using Complex = std::complex<double>;

/// Amplitude pair (psi1, psi2). The norm is not conserved when delta != 0.
using StateVector = Eigen::Vector2cd;
/// Evolution matrix U(t, t0) with B(t) = U B(t0).
using Propagator2x2 = Eigen::Matrix2cd;

/// Physical parameters of the tanh level-crossing model with an imaginary
/// coupling: detuning P tanh(alpha t + beta) + kappa, coupling i delta + kappa.
template <typename Scalar>
struct BasicModelParams {
  Scalar P{0};
  Scalar alpha{1};
  Scalar beta{0};
  Scalar kappa{0};
  Scalar delta{0};
};

using ModelParams = BasicModelParams<double>;

/// Throws InvalidArgument unless alpha > 0 and every field is finite.
void validate(const ModelParams& p);

template <typename Scalar>
struct BasicCoupling {
  std::complex<Scalar> theta;
};
using Coupling = BasicCoupling<double>;

template <typename Scalar>
struct BasicEnergyPair {
  std::complex<Scalar> plus;
  std::complex<Scalar> minus;
};
using EnergyPair = BasicEnergyPair<double>;

struct EnergyPolar {
  double modulus;  // |Z|^{1/2}
  double phi;      // arg(Z) / 2
  double re;
  double im;
};

enum class Zone { Allowed, Forbidden };

struct ZoneLabel {
  Zone label;
  double gap;  // 2 |Re e_plus|
};

inline constexpr double kDefaultGapThreshold = 1e-9;

std::string_view to_string(Zone z);

template <typename Scalar>
Scalar detuning(Scalar t, const BasicModelParams<Scalar>& p) {
  using std::tanh;
  return p.P * tanh(p.alpha * t + p.beta) + p.kappa;
}

template <typename Scalar>
BasicCoupling<Scalar> coupling(const BasicModelParams<Scalar>& p) {
  return {std::complex<Scalar>(p.kappa, p.delta)};
}

template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, 2, 2> hamiltonian(Scalar t, const BasicModelParams<Scalar>& p) {
  const std::complex<Scalar> xi(detuning(t, p) / Scalar(2), Scalar(0));
  const std::complex<Scalar> th = coupling(p).theta / Scalar(2);
  Eigen::Matrix<std::complex<Scalar>, 2, 2> h;
  h << xi, th, th, -xi;
  return h;
}

/// E+ = sqrt(xi^2 + theta^2) / 2 on the principal branch, oriented so that
/// Re(E+) >= 0 and, when Re(E+) == 0, Im(E+) >= 0.
template <typename Scalar>
BasicEnergyPair<Scalar> eigenenergies(Scalar xi, std::complex<Scalar> theta) {
  const std::complex<Scalar> z = std::complex<Scalar>(xi * xi, 0) + theta * theta;
  std::complex<Scalar> root = std::sqrt(z) / Scalar(2);
  if (root.real() == Scalar(0) && root.imag() < Scalar(0)) root = -root;
  return {root, -root};
}

template <typename Scalar>
BasicEnergyPair<Scalar> eigenenergies(Scalar t, const BasicModelParams<Scalar>& p) {
  return eigenenergies(detuning(t, p), coupling(p).theta);
}

EnergyPolar energy_polar(double t, const ModelParams& p);

ZoneLabel classify_zone(double t, const ModelParams& p, double gap_threshold = kDefaultGapThreshold);

/// Forbidden-zone condition written directly on the parameters: kappa delta == 0
/// and xi^2 + kappa^2 <= delta^2.
bool forbidden_by_condition(double t, const ModelParams& p);

}  // namespace tanhsim
