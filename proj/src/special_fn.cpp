#include "hypgeo/special_fn.hpp"

#include <array>
#include <cmath>
#include <string>

#include "hypgeo/errors.hpp"

namespace hypgeo {
namespace {

// zeta(k) - 1 for k = 2, 3, ..., 40.
constexpr std::array<double, 39> kZetaMinusOne = {
    0.644934066848226436472,   0.2020569031595942854,      0.082323233711138191516,
    0.0369277551433699263314,  0.0173430619844491397145,   0.0083492773819228268398,
    0.00407735619794433937869, 0.00200839282608221441785,  0.000994575127818085337146,
    0.000494188604119464558702, 0.000246086553308048298638, 0.000122713347578489146752,
    6.12481350587048292585e-5, 3.05882363070204935517e-5,  1.52822594086518717326e-5,
    7.6371976378997622736e-6,  3.81729326499983985646e-6,  1.90821271655393892566e-6,
    9.53962033872796113152e-7, 4.76932986787806463117e-7,  2.38450502727732990004e-7,
    1.19219925965311073068e-7, 5.96081890512594796124e-8,  2.98035035146522801861e-8,
    1.49015548283650412347e-8, 7.45071178983542949198e-9,  3.72533402478845705482e-9,
    1.8626597235130490064e-9,  9.31327432419668182872e-10, 4.65662906503378407299e-10,
    2.328311833676505492e-10,  1.16415501727005197759e-10, 5.82077208790270088924e-11,
    2.91038504449709968693e-11, 1.45519218910419842359e-11, 7.27595983505748101452e-12,
    3.63797954737865119024e-12, 1.81898965030706594758e-12, 9.09494784026388928253e-13,
};

// log Gamma(2 + t) = (1 - gamma) t + sum_{k>=2} (-1)^k (zeta(k) - 1) t^k / k, |t| <= 1/2.
double ln_gamma_two_plus(double t) {
  double sum = 0.0;
  double power = -t;
  for (std::size_t i = 0; i < kZetaMinusOne.size(); ++i) {
    const int k = static_cast<int>(i) + 2;
    power *= -t;
    sum += kZetaMinusOne[i] * power / k;
  }
  return (1.0 - kEulerGamma) * t + sum;
}

// Stirling series, x >= 10.
double ln_gamma_stirling(double x) {
  constexpr std::array<double, 8> c = {1.0 / 12,   -1.0 / 360,         1.0 / 1260,
                                       -1.0 / 1680, 1.0 / 1188,         -691.0 / 360360,
                                       1.0 / 156,  -3617.0 / 122400};
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double series = 0.0;
  double power = inv;
  for (double ck : c) {
    series += ck * power;
    power *= inv2;
  }
  return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * kPi) + series;
}

// psi(x) asymptotic expansion, x >= 10.
double digamma_asymptotic(double x) {
  constexpr std::array<double, 7> c = {1.0 / 12,  -1.0 / 120, 1.0 / 252,       -1.0 / 240,
                                       1.0 / 132, -691.0 / 32760, 1.0 / 12};
  const double inv2 = 1.0 / (x * x);
  double series = 0.0;
  double power = inv2;
  for (double ck : c) {
    series += ck * power;
    power *= inv2;
  }
  return std::log(x) - 0.5 / x - series;
}

// sin(pi x) and cos(pi x) with exact argument reduction.
double sin_pi(double x) {
  double r = std::fmod(x, 2.0);
  if (r < 0) r += 2.0;
  if (r == 0.0 || r == 1.0) return 0.0;
  return std::sin(kPi * r);
}

double cos_pi(double x) {
  double r = std::fmod(std::abs(x), 2.0);
  if (r == 0.5 || r == 1.5) return 0.0;
  return std::cos(kPi * r);
}

[[noreturn]] void domain_fail(const char* fn, double x) {
  throw Error(ErrorKind::domain, std::string(fn) + ": argument must be positive, got " +
                                     std::to_string(x));
}

}  // namespace

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::parameter: return "parameter";
    case ErrorKind::singularity: return "singularity";
    case ErrorKind::non_convergence: return "non_convergence";
    case ErrorKind::division_hazard: return "division_hazard";
    case ErrorKind::inconsistency: return "inconsistency";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::derivative_zero: return "derivative_zero";
  }
  return "unknown";
}

double ln_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) domain_fail("ln_gamma", x);
  if (x < 0.5) return ln_gamma(x + 1.0) - std::log(x);
  if (x <= 1.5) return ln_gamma_two_plus(x - 1.0) - std::log1p(x - 1.0);
  if (x <= 2.5) return ln_gamma_two_plus(x - 2.0);
  if (x < 10.0) {
    // Gamma(x) = (x-1)(x-2)...(x-n) Gamma(x-n) with x-n in (1.5, 2.5].
    double y = x;
    double product = 1.0;
    while (y > 2.5) {
      y -= 1.0;
      product *= y;
    }
    return ln_gamma_two_plus(y - 2.0) + std::log(product);
  }
  return ln_gamma_stirling(x);
}

double digamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) domain_fail("digamma", x);
  double shift = 0.0;
  while (x < 10.0) {
    shift += 1.0 / x;
    x += 1.0;
  }
  return digamma_asymptotic(x) - shift;
}

double beta(double a, double b) {
  if (!(a > 0.0)) domain_fail("beta", a);
  if (!(b > 0.0)) domain_fail("beta", b);
  return std::exp(ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b));
}

double pochhammer(double a, std::uint32_t n) {
  double p = 1.0;
  for (std::uint32_t k = 0; k < n; ++k) p *= a + k;
  return p;
}

double ramanujan_R(double a, double b) {
  if (!(a > 0.0)) domain_fail("ramanujan_R", a);
  if (!(b > 0.0)) domain_fail("ramanujan_R", b);
  return -2.0 * kEulerGamma - digamma(a) - digamma(b);
}

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

double log_abs_gamma(double x, int* sign) {
  if (is_nonpositive_integer(x) || !std::isfinite(x)) {
    throw Error(ErrorKind::domain, "log_abs_gamma: pole at " + std::to_string(x));
  }
  if (x > 0.0) {
    if (sign) *sign = 1;
    return ln_gamma(x);
  }
  // Gamma(x) Gamma(1-x) = pi / sin(pi x)
  const double s = sin_pi(x);
  if (sign) *sign = s > 0 ? 1 : -1;
  return std::log(kPi) - std::log(std::abs(s)) - ln_gamma(1.0 - x);
}

double gamma_real(double x) {
  int sign = 1;
  const double l = log_abs_gamma(x, &sign);
  return sign * std::exp(l);
}

double reciprocal_gamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  int sign = 1;
  const double l = log_abs_gamma(x, &sign);
  return sign * std::exp(-l);
}

double digamma_real(double x) {
  if (x > 0.0) return digamma(x);
  if (is_nonpositive_integer(x)) {
    throw Error(ErrorKind::domain, "digamma_real: pole at " + std::to_string(x));
  }
  // psi(1-x) - psi(x) = pi cot(pi x)
  return digamma(1.0 - x) - kPi * cos_pi(x) / sin_pi(x);
}

}  // namespace hypgeo
