#pragma once

#include <complex>

namespace tanhsim::specfun {

using Complex = std::complex<double>;

/// Gamma function for complex argument (Lanczos, reflected for Re z < 1/2).
/// Throws PoleError at nonpositive integers.
Complex cgamma(Complex z);

/// log Gamma(z) for Re z >= 1/2; reflected otherwise. Defined up to 2 pi i.
Complex clgamma(Complex z);

/// 1 / Gamma(z). Entire; exactly zero at the poles of Gamma.
Complex rgamma(Complex z);

struct F21Args {
  Complex a;
  Complex b;
  Complex c;
  Complex z;
};

/// A point of the open unit interval given together with its complement,
/// so that 1 - x keeps full relative precision near x = 1.
struct UnitArg {
  double x;
  double one_minus_x;
};

/// Gauss hypergeometric function 2F1(a, b; c; z).
///
/// Uses the power series for |z| <= 0.5 and the z -> 1 - z or
/// z -> z / (z - 1) transformations elsewhere. When c - a - b is within 1e-6
/// of an integer the 1 - z connection formula is singular term by term; the
/// value is then interpolated from symmetric perturbations of c.
/// Throws PoleError when c is a nonpositive integer and ConvergenceError when
/// no transformation brings the argument inside |w| <= 0.75.
Complex hyp2f1(const F21Args& args);
Complex hyp2f1(Complex a, Complex b, Complex c, UnitArg x);

/// d/dz 2F1(a, b; c; z) = (a b / c) 2F1(a + 1, b + 1; c + 1; z).
Complex hyp2f1_derivative(const F21Args& args);
Complex hyp2f1_derivative(Complex a, Complex b, Complex c, UnitArg x);

/// Kummer confluent hypergeometric function M(a, b, z) = 1F1(a; b; z).
Complex kummer_m(Complex a, Complex b, Complex z);

struct PcfArgs {
  Complex nu;
  Complex z;
};

/// Weber parabolic cylinder function D_nu(z).
///
/// Near the origin this is the two-term Kummer combination. For |z| > 2 the
/// Kummer series cancel badly, so the value at radius 2 is carried outwards
/// by Taylor stepping of w'' = (z^2/4 - nu - 1/2) w; for |arg z| < pi/4, where
/// D_nu is recessive, the stepping runs inwards from the asymptotic radius
/// instead. From |z| >= 12 + 2|nu|
/// the large-|z| expansion is used instead, with the exponentially growing
/// term added for |arg z| >= pi/2.
Complex pcf_d(const PcfArgs& args);

struct PcfValue {
  Complex value;
  Complex derivative;
};

/// D_nu(z) together with dD_nu/dz from the same evaluation path.
PcfValue pcf_d_with_derivative(const PcfArgs& args);

}  // namespace tanhsim::specfun
