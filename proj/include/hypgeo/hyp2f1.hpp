#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace hypgeo {

using Complex = std::complex<double>;

/// Real parameter triple (a, b, c) of F(a, b; c; z).
struct Params {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  /// c - a - b; its sign and integrality select the behaviour at z = 1.
  double gap() const { return c - a - b; }

  /// Throws ErrorKind::parameter unless the triple is finite and -c is not in N.
  void validate() const;

  bool zero_balanced(double tol = 1e-12) const;
  /// c - a - b is an integer (within `tol`): the logarithmic case at z = 1.
  bool log_case(double tol = 1e-9) const;
  /// a or b is 0, -1, -2, ...: the series terminates.
  bool polynomial() const;
};

enum class Method {
  maclaurin,
  euler_transform,
  connection_1mz,
  log_connection,
  t1_large_arg,
  taylor_recentre,
};

std::string_view to_string(Method m);

struct EvalResult {
  Complex value;
  /// Truncation plus accumulated rounding estimate of the selected branch; not
  /// a rigorous bound.
  double abs_err_est = 0.0;
  Method method = Method::maclaurin;
};

/// Dispatch radii and series controls. Defaults are the production settings.
struct EngineConfig {
  double series_radius = 0.75;      // |z| <= this: Maclaurin series
  double connection_radius = 0.25;  // |1 - z| < this: expansion about z = 1
  double euler_radius = 0.75;       // |z/(z-1)| <= this: Pfaff/Euler transform
  double tol = 1e-16;               // relative term size that ends a series
  std::size_t max_terms = 200000;
  double integer_tol = 1e-9;        // c-a-b (or b-a) this close to an integer is treated as one
};

/// Partial sum of the defining series. Stops after three consecutive terms
/// with |term| <= tol |sum|. Requires |z| < 1, or |z| = 1 with c - a - b > 0.
EvalResult gauss_series(const Params& p, Complex z, double tol = 1e-16,
                        std::size_t max_terms = 200000);

/// F(a, b; c; z) for z in the closed unit disc, z != 1 unless c - a - b > 0
/// (then the Gauss sum). The method field records the dispatch branch.
EvalResult hyp2f1(const Params& p, Complex z, const EngineConfig& cfg = {});

/// Evaluates with a forced branch, bypassing dispatch. Used for cross-branch
/// checks. Throws ErrorKind::domain when the branch does not converge at z.
EvalResult hyp2f1_via(Method method, const Params& p, Complex z, const EngineConfig& cfg = {});

/// F(a, b; c; -x) for x >= 2 via the 1/z connection formula; falls back to the
/// Euler transform into x/(x+1) when b - a is an integer.
EvalResult hyp2f1_neg_real_large(const Params& p, double x, const EngineConfig& cfg = {});

/// F on the closed disc, the half plane Re z < 1/2 (through the Euler
/// transform), and the whole negative real axis. Everything the ratio
/// functions need on C \ [1, +inf).
EvalResult hyp2f1_continued(const Params& p, Complex z, const EngineConfig& cfg = {});

/// dF/dz = (ab/c) F(a+1, b+1; c+1; z), on the domain of hyp2f1_continued.
EvalResult hyp2f1_derivative(const Params& p, Complex z, const EngineConfig& cfg = {});

/// F(a+1, b; c; z) / F(a, b; c; z). Computed directly and through
/// 1 + (b/c) z F(a+1, b+1; c+1; z) / F(a, b; c; z); throws
/// ErrorKind::inconsistency if the two differ by more than 1e-8 relative and
/// ErrorKind::division_hazard if |F| < 1e-14 (for |z| > 1 the floor is scaled
/// by |z|^{-min(a,b)}, the decay of F at infinity).
Complex ratio_G_over_F(const Params& p, Complex z, const EngineConfig& cfg = {});

/// F(a+1, b+1; c+1; z) / F(a+1, b; c; z), with the same hazard rule on the
/// denominator.
Complex ratio_H_over_G(const Params& p, Complex z, const EngineConfig& cfg = {});

}  // namespace hypgeo
