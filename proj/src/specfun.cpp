#include "tanhsim/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "tanhsim/errors.hpp"

namespace tanhsim::specfun {
namespace {

using std::numbers::pi;

constexpr double kSeriesTol = 1e-17;
constexpr int kMaxTerms = 2000;
constexpr double kLogCaseWindow = 1e-6;
constexpr double kLogCaseStep = 1e-4;
constexpr double kTransformLimit = 0.75;
constexpr double kPcfKummerRadius = 2.0;
constexpr double kPcfAsymptoticRadius = 12.0;  // plus 2 |nu|

// Lanczos coefficients, g = 607/128.
constexpr std::array<double, 14> kLanczos = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
    -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
    .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};

Complex lanczos_lgamma(Complex z) {
  Complex y = z;
  const Complex tmp = z + 5.24218750000000000;
  const Complex head = (z + 0.5) * std::log(tmp) - tmp;
  Complex ser = 0.999999999999997092;
  for (double c : kLanczos) {
    y += 1.0;
    ser += c / y;
  }
  return head + std::log(2.5066282746310005 * ser / z);
}

// sin(pi z) with the argument reduced by the nearest integer first, so that
// values close to the zeros keep their relative accuracy.
Complex sin_pi(Complex z) {
  const double n = std::round(z.real());
  const Complex s = std::sin(pi * (z - n));
  return std::fmod(std::abs(n), 2.0) == 0.0 ? s : -s;
}

bool is_nonpositive_integer(Complex z) {
  const double n = std::round(z.real());
  return n <= 0.0 && z.imag() == 0.0 && z.real() == n;
}

bool near_nonpositive_integer(Complex z) {
  const double n = std::round(z.real());
  return n <= 0.0 && std::abs(z - n) < 1e-13;
}

Complex gauss_series(Complex a, Complex b, Complex c, Complex z) {
  if (z == 0.0) return 1.0;
  Complex sum = 1.0;
  Complex term = 1.0;
  for (int k = 0; k < kMaxTerms; ++k) {
    const double dk = k;
    const Complex ratio = (a + dk) * (b + dk) / ((c + dk) * (dk + 1.0)) * z;
    term *= ratio;
    sum += term;
    if (term == 0.0) return sum;
    if (std::abs(term) <= kSeriesTol * std::abs(sum) && std::abs(ratio) < 1.0) return sum;
  }
  throw ConvergenceError("2F1 series did not converge within 2000 terms");
}

Complex connect_regular(Complex a, Complex b, Complex c, Complex w, Complex log_w) {
  const Complex m = c - a - b;
  const Complex g_c = cgamma(c);
  const Complex first = g_c * cgamma(m) * rgamma(c - a) * rgamma(c - b);
  const Complex second = g_c * cgamma(-m) * rgamma(a) * rgamma(b);
  Complex value = 0.0;
  if (first != 0.0) value += first * gauss_series(a, b, 1.0 - m, w);
  if (second != 0.0) value += second * std::exp(m * log_w) * gauss_series(c - a, c - b, 1.0 + m, w);
  return value;
}

// z -> 1 - z connection. w = 1 - z is supplied directly.
Complex connect_one_minus(Complex a, Complex b, Complex c, Complex w, Complex log_w) {
  const Complex m = c - a - b;
  const double n = std::round(m.real());
  const Complex offset = m - n;
  if (std::abs(offset) >= kLogCaseWindow) return connect_regular(a, b, c, w, log_w);

  // Logarithmic case: F is analytic in c but the two connection terms are not.
  // Interpolate from nodes placed symmetrically about the exact-integer point.
  constexpr std::array<double, 4> nodes = {-2 * kLogCaseStep, -kLogCaseStep, kLogCaseStep,
                                           2 * kLogCaseStep};
  const Complex base = c - offset;
  Complex value = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    Complex weight = 1.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      if (k != j) weight *= (offset - nodes[k]) / (nodes[j] - nodes[k]);
    }
    value += weight * connect_regular(a, b, base + nodes[j], w, log_w);
  }
  return value;
}

void check_c(Complex c) {
  if (near_nonpositive_integer(c)) throw PoleError("2F1: c is a nonpositive integer");
}

Complex kummer_series(Complex a, Complex b, Complex z) {
  if (z == 0.0) return 1.0;
  Complex sum = 1.0;
  Complex term = 1.0;
  for (int k = 0; k < kMaxTerms; ++k) {
    const double dk = k;
    const Complex ratio = (a + dk) / ((b + dk) * (dk + 1.0)) * z;
    term *= ratio;
    sum += term;
    if (term == 0.0) return sum;
    if (std::abs(term) <= kSeriesTol * std::abs(sum) && std::abs(ratio) < 1.0) return sum;
  }
  throw ConvergenceError("1F1 series did not converge within 2000 terms");
}

Complex pcf_kummer(Complex nu, Complex z) {
  const Complex half_z2 = z * z / 2.0;
  const Complex even = std::sqrt(pi) * rgamma((1.0 - nu) / 2.0);
  const Complex odd = std::sqrt(2.0 * pi) * rgamma(-nu / 2.0);
  Complex bracket = 0.0;
  if (even != 0.0) bracket += even * kummer_series(-nu / 2.0, 0.5, half_z2);
  if (odd != 0.0) bracket -= odd * z * kummer_series((1.0 - nu) / 2.0, 1.5, half_z2);
  return std::exp(nu / 2.0 * std::numbers::ln2 - z * z / 4.0) * bracket;
}

// sum_s sign^s (p)_{2s} / (s! (2 z^2)^s), truncated at the smallest term.
Complex pcf_tail_series(Complex p, Complex z, double sign) {
  const Complex step = sign / (2.0 * z * z);
  Complex sum = 1.0;
  Complex term = 1.0;
  double previous = std::numeric_limits<double>::infinity();
  for (int s = 0; s < kMaxTerms; ++s) {
    const double ds = s;
    term *= (p + 2.0 * ds) * (p + 2.0 * ds + 1.0) / (ds + 1.0) * step;
    const double size = std::abs(term);
    if (size >= previous || size <= kSeriesTol * std::abs(sum)) break;
    sum += term;
    previous = size;
  }
  return sum;
}

// Large-|z| expansion of D_nu(z). For |ph z| < pi/2 only the recessive
// series contributes; beyond that the e^{z^2/4} series enters with the
// connection coefficient of the half-plane containing z.
Complex pcf_asymptotic(Complex nu, Complex z) {
  const Complex log_z = std::log(z);
  const Complex recessive = std::exp(-z * z / 4.0 + nu * log_z) * pcf_tail_series(-nu, z, -1.0);
  const double phase = std::arg(z);
  if (std::abs(phase) < pi / 2) return recessive;
  const Complex r = rgamma(-nu);
  if (r == 0.0) return recessive;
  const Complex rotation = std::exp(Complex(0.0, phase > 0 ? pi : -pi) * nu);
  const Complex dominant = std::exp(z * z / 4.0 - (nu + 1.0) * log_z) * pcf_tail_series(nu + 1.0, z, 1.0);
  return recessive - std::sqrt(2.0 * pi) * r * rotation * dominant;
}

bool pcf_use_asymptotic(Complex nu, Complex z) {
  return std::abs(z) >= kPcfAsymptoticRadius + 2.0 * std::abs(nu);
}

using LComplex = std::complex<long double>;

// Carries (w, w') from `from` to `to` along the straight segment using local
// Taylor expansions of w'' = (z^2/4 - nu - 1/2) w. Around z0 the coefficients
// obey n (n - 1) c_n = q0 c_{n-2} + (z0 / 2) c_{n-3} + c_{n-4} / 4.
PcfValue weber_continue(Complex nu_d, Complex from, Complex to, PcfValue start) {
  const LComplex nu(nu_d.real(), nu_d.imag());
  const LComplex target(to.real(), to.imag());
  LComplex z0(from.real(), from.imag());
  LComplex w(start.value.real(), start.value.imag());
  LComplex dw(start.derivative.real(), start.derivative.imag());

  constexpr long double tol = 1e-21L;
  constexpr int kMaxOrder = 600;
  for (long step = 0;; ++step) {
    const LComplex remaining = target - z0;
    const long double dist = std::abs(remaining);
    if (dist == 0.0L) break;
    if (step > 50'000'000) throw ConvergenceError("pcf_d: continuation step limit");
    const LComplex q0 = z0 * z0 / 4.0L - nu - 0.5L;
    const long double hmax = std::min(0.5L, 2.0L / std::sqrt(std::abs(q0) + 1.0L));
    const bool last = dist <= hmax;
    const LComplex h = last ? remaining : remaining * (hmax / dist);

    // window = {c_{n-1}, c_{n-2}, c_{n-3}, c_{n-4}}
    std::array<LComplex, 4> window = {dw, w, 0.0L, 0.0L};
    LComplex h_pow = h;  // h^{n-1}
    LComplex w_new = w + dw * h;
    LComplex dw_new = dw;
    int quiet = 0;
    int n = 2;
    for (; n < kMaxOrder; ++n) {
      const long double dn = n;
      const LComplex cn = (q0 * window[1] + z0 / 2.0L * window[2] + 0.25L * window[3]) / (dn * (dn - 1.0L));
      const LComplex dterm = dn * cn * h_pow;
      h_pow *= h;
      const LComplex term = cn * h_pow;
      w_new += term;
      dw_new += dterm;
      window = {cn, window[0], window[1], window[2]};
      const long double scale = std::abs(w_new) + std::abs(dw_new * h) + 1e-300L;
      if (std::abs(term) + std::abs(dterm * h) <= tol * scale) {
        if (++quiet >= 4) break;
      } else {
        quiet = 0;
      }
    }
    if (n >= kMaxOrder) throw ConvergenceError("pcf_d: Taylor step did not converge");
    w = w_new;
    dw = dw_new;
    z0 = last ? target : z0 + h;
  }
  return {Complex(static_cast<double>(w.real()), static_cast<double>(w.imag())),
          Complex(static_cast<double>(dw.real()), static_cast<double>(dw.imag()))};
}

}  // namespace

Complex clgamma(Complex z) {
  if (near_nonpositive_integer(z)) throw PoleError("gamma: pole at nonpositive integer");
  if (z.real() < 0.5) {
    return std::log(pi) - std::log(sin_pi(z)) - lanczos_lgamma(1.0 - z);
  }
  return lanczos_lgamma(z);
}

Complex cgamma(Complex z) {
  if (near_nonpositive_integer(z)) throw PoleError("gamma: pole at nonpositive integer");
  if (z.real() < 0.5) return pi / (sin_pi(z) * std::exp(lanczos_lgamma(1.0 - z)));
  return std::exp(lanczos_lgamma(z));
}

Complex rgamma(Complex z) {
  if (is_nonpositive_integer(z)) return 0.0;
  if (z.real() < 0.5) return sin_pi(z) * std::exp(lanczos_lgamma(1.0 - z)) / pi;
  return std::exp(-lanczos_lgamma(z));
}

Complex hyp2f1(const F21Args& args) {
  const auto [a, b, c, z] = args;
  check_c(c);
  if (z == 0.0) return 1.0;
  if (std::abs(z) <= 0.5) return gauss_series(a, b, c, z);
  if (z.imag() == 0.0 && z.real() > 0.0 && z.real() < 1.0) {
    return hyp2f1(a, b, c, UnitArg{z.real(), 1.0 - z.real()});
  }
  if (z.imag() == 0.0 && z.real() >= 1.0) {
    throw InvalidArgument("2F1: argument on the branch cut [1, inf)");
  }
  const Complex w_reflect = 1.0 - z;
  const Complex w_pfaff = z / (z - 1.0);
  const double r_reflect = std::abs(w_reflect);
  const double r_pfaff = std::abs(w_pfaff);
  if (std::min(r_reflect, r_pfaff) > kTransformLimit) {
    throw ConvergenceError("2F1: no transformation reaches |w| <= 0.75");
  }
  if (r_reflect <= r_pfaff) return connect_one_minus(a, b, c, w_reflect, std::log(w_reflect));
  return std::exp(-a * std::log(1.0 - z)) * gauss_series(a, c - b, c, w_pfaff);
}

Complex hyp2f1(Complex a, Complex b, Complex c, UnitArg x) {
  check_c(c);
  // x itself may round to 1 when the complement is carried separately.
  if (!(x.x >= 0.0 && x.x <= 1.0 && x.one_minus_x > 0.0)) {
    throw InvalidArgument("2F1: unit-interval argument outside [0, 1)");
  }
  if (x.x <= 0.5) return gauss_series(a, b, c, x.x);
  const Complex w = x.one_minus_x;
  return connect_one_minus(a, b, c, w, std::log(x.one_minus_x));
}

Complex hyp2f1_derivative(const F21Args& args) {
  const auto [a, b, c, z] = args;
  check_c(c);
  return a * b / c * hyp2f1({a + 1.0, b + 1.0, c + 1.0, z});
}

Complex hyp2f1_derivative(Complex a, Complex b, Complex c, UnitArg x) {
  check_c(c);
  return a * b / c * hyp2f1(a + 1.0, b + 1.0, c + 1.0, x);
}

Complex kummer_m(Complex a, Complex b, Complex z) {
  if (near_nonpositive_integer(b)) throw PoleError("1F1: b is a nonpositive integer");
  return kummer_series(a, b, z);
}

PcfValue pcf_d_with_derivative(const PcfArgs& args) {
  const auto [nu, z] = args;
  const double r = std::abs(z);
  if (pcf_use_asymptotic(nu, z) && pcf_use_asymptotic(nu + 1.0, z)) {
    const Complex v = pcf_asymptotic(nu, z);
    return {v, z / 2.0 * v - pcf_asymptotic(nu + 1.0, z)};
  }
  if (r <= kPcfKummerRadius) {
    const Complex v = pcf_kummer(nu, z);
    return {v, z / 2.0 * v - pcf_kummer(nu + 1.0, z)};
  }
  if (std::abs(std::arg(z)) < pi / 4) {
    // D_nu is the recessive solution here, so outward stepping would be
    // swamped by the growing one. Step inwards from the asymptotic radius.
    const double outer = kPcfAsymptoticRadius + 2.0 * (std::abs(nu) + 1.0);
    const Complex z1 = z * (outer / r);
    const Complex v1 = pcf_asymptotic(nu, z1);
    return weber_continue(nu, z1, z, {v1, z1 / 2.0 * v1 - pcf_asymptotic(nu + 1.0, z1)});
  }
  const Complex z0 = z * (kPcfKummerRadius / r);
  const Complex v0 = pcf_kummer(nu, z0);
  const PcfValue start{v0, z0 / 2.0 * v0 - pcf_kummer(nu + 1.0, z0)};
  return weber_continue(nu, z0, z, start);
}

Complex pcf_d(const PcfArgs& args) { return pcf_d_with_derivative(args).value; }

}  // namespace tanhsim::specfun
