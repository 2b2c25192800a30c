#pragma once

#include "tanhsim/model.hpp"

namespace tanhsim {

struct Probabilities {
  double p1;
  double p2;
};

// ---------------------------------------------------------------------------
// Rabi limit: constant detuning kappa with the model's coupling. beta and P
// are ignored.

struct RabiSetup {
  double xi;          // detuning, equal to kappa
  Complex theta;      // i delta + kappa
  Complex frequency;  // sqrt(xi^2 + theta^2)
};

RabiSetup rabi_setup(const ModelParams& p);

/// Amplitudes at time t of the state that starts in level 1 at t = 0.
StateVector rabi_amplitudes(double t, const ModelParams& p);
Probabilities rabi_probabilities(double t, const ModelParams& p);

/// sin^2(theta csc(2 vartheta) t / 2) / csc^2(2 vartheta) with
/// tan(2 vartheta) = theta / xi. Only defined for a real coupling (delta = 0).
double rabi_transition_mixing_angle_form(double t, const ModelParams& p);

// ---------------------------------------------------------------------------
// Landau-Zener limit: detuning linearised to alpha P t + kappa.

enum class LambdaConvention {
  Standard,  // theta^2 / (4 alpha P): the value solving the linear model
  Variant,   // (i delta + kappa)^2 / alpha, kept for comparison only
};

struct LZSetup {
  double slope;          // alpha P
  Complex lambda;
  double crossing_time;  // -kappa / (alpha P)
};

/// Throws InvalidArgument when alpha P <= 0.
LZSetup lz_setup(const ModelParams& p, LambdaConvention convention = LambdaConvention::Standard);

/// z(t) = sqrt(alpha P) (t - crossing_time) e^{i pi / 4}.
Complex lz_variable(double t, const ModelParams& p);

/// Amplitudes at t of the linear model started in level 1 at t0:
///   C1 = a+ D_nu(z) + a- D_nu(-z)
///   C2 = theta e^{i pi/4} / (2 sqrt(alpha P)) (a+ D_{nu-1}(z) - a- D_{nu-1}(-z))
/// with nu = -i lambda. Throws IllConditioned when the system fixing a+- has
/// condition number above 1e12.
StateVector lz_amplitudes(double t, double t0, const ModelParams& p);

/// Precomputes a+- for one start time so that many t can be evaluated.
class LZPropagator {
 public:
  LZPropagator(const ModelParams& p, double t0);
  StateVector operator()(double t) const;

 private:
  ModelParams params_;
  LZSetup setup_;
  double t0_;
  Complex nu_;
  Complex scale_;  // theta e^{i pi/4} / (2 sqrt(alpha P))
  Complex a_plus_;
  Complex a_minus_;
};

struct LZProbabilities {
  double survival;    // |C1|^2
  double transition;  // |C2|^2
};

LZProbabilities lz_probabilities(double t, double t0, const ModelParams& p);

// ---------------------------------------------------------------------------
// Reductions of the full tanh model.

struct ConsistencyReport {
  double max_deviation;       // max over the window of |population difference|
  double linearization_bound;  // bound on the dropped detuning term over the window
  int samples;
};

/// Full tanh populations against the Landau-Zener populations on
/// [-window, window], both started in level 1 at -window. Requires
/// |alpha t + beta| <= 0.3 on the window. The bound is P max|tanh u - u|.
ConsistencyReport tanh_to_lz_consistency(const ModelParams& p, double window, int samples = 101);

/// Full tanh populations against the Rabi populations on [-window, window],
/// both started in level 1 at -window. The bound is P max|tanh u|.
ConsistencyReport tanh_to_rabi_consistency(const ModelParams& p, double window, int samples = 101);

}  // namespace tanhsim
