#include "tanhsim/model.hpp"

#include <numbers>

#include "tanhsim/errors.hpp"

namespace tanhsim {

void validate(const ModelParams& p) {
  for (double v : {p.P, p.alpha, p.beta, p.kappa, p.delta}) {
    if (!std::isfinite(v)) throw InvalidArgument("model parameters must be finite");
  }
  if (!(p.alpha > 0.0)) throw InvalidArgument("sweep rate alpha must be positive");
}

std::string_view to_string(Zone z) { return z == Zone::Allowed ? "allowed" : "forbidden"; }

EnergyPolar energy_polar(double t, const ModelParams& p) {
  const double xi = detuning(t, p);
  const Complex z(xi * xi + p.kappa * p.kappa - p.delta * p.delta, 2.0 * p.kappa * p.delta);
  const double r = std::abs(z);
  if (r == 0.0) return {0.0, 0.0, 0.0, 0.0};
  // Negative real Z sits on the cut; take the upper side to match eigenenergies().
  const double phi = (z.imag() == 0.0 && z.real() < 0.0) ? std::numbers::pi / 2 : std::arg(z) / 2;
  const double modulus = std::sqrt(r);
  return {modulus, phi, 0.5 * modulus * std::cos(phi), 0.5 * modulus * std::sin(phi)};
}

ZoneLabel classify_zone(double t, const ModelParams& p, double gap_threshold) {
  if (!(gap_threshold > 0.0)) throw InvalidArgument("gap_threshold must be positive");
  const double gap = 2.0 * std::abs(eigenenergies(t, p).plus.real());
  return {gap < gap_threshold ? Zone::Forbidden : Zone::Allowed, gap};
}

bool forbidden_by_condition(double t, const ModelParams& p) {
  const double xi = detuning(t, p);
  return p.kappa * p.delta == 0.0 && xi * xi + p.kappa * p.kappa <= p.delta * p.delta;
}

}  // namespace tanhsim
