#pragma once

#include <cstdint>

namespace hypgeo {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kEulerGamma = 0.577215664901532860606512090082402431;

/// log Gamma(x) for x > 0. Relative error below 1e-13 on [0.5, 100]; the
/// neighbourhoods of the roots at 1 and 2 use a power series so the relative
/// contract holds there too.
double ln_gamma(double x);

/// Digamma psi(x) = Gamma'(x)/Gamma(x) for x > 0.
double digamma(double x);

/// Beta function B(a, b) for a, b > 0.
double beta(double a, double b);

/// Rising factorial (a)_n with (a)_0 = 1.
double pochhammer(double a, std::uint32_t n);

/// R(a, b) = 2 psi(1) - psi(a) - psi(b), the constant in Ramanujan's
/// asymptotic formula for zero-balanced 2F1 near z = 1.
double ramanujan_R(double a, double b);

// Extensions to the whole real line, used by the connection formulas whose
// gamma arguments can be negative.

/// True when x is 0, -1, -2, ... (exactly).
bool is_nonpositive_integer(double x);

/// log|Gamma(x)| and sign(Gamma(x)) for any real x that is not a pole.
double log_abs_gamma(double x, int* sign);

/// Gamma(x) for any real x that is not a pole.
double gamma_real(double x);

/// 1/Gamma(x) for any real x; zero at the poles.
double reciprocal_gamma(double x);

/// psi(x) for any real x that is not a pole (reflection for x < 1/2).
double digamma_real(double x);

}  // namespace hypgeo
