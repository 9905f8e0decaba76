#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hypgeo/check_report.hpp"
#include "hypgeo/hyp2f1.hpp"

namespace hypgeo {

// ---------------------------------------------------------------------------
// Pre-Schwarzian quantity W(z) = 1 + z (zF)'' / (zF)' of f(z) = z F(a, b; c; z).
// ---------------------------------------------------------------------------

/// W through the decomposition
///   (3 - c + (a+b-2) z)/(1-z) + (c - 2 + (1-a)(1-b) z) / ((1-z)(1 - a + a G/F))
/// with G/F = F(a+1, b; c; z)/F(a, b; c; z).
Complex pre_schwarzian_W_closed(const Params& p, Complex z, const EngineConfig& cfg = {});

/// W assembled from F, F' and F''. Throws ErrorKind::derivative_zero if
/// |(zF)'| < 1e-12.
Complex pre_schwarzian_W_direct(const Params& p, Complex z, const EngineConfig& cfg = {});

/// Closed decomposition, cross-checked against the direct assembly; throws
/// ErrorKind::inconsistency when they differ by more than 1e-8 relative.
Complex pre_schwarzian_W(const Params& p, Complex z, const EngineConfig& cfg = {});

/// W at z = 1 - eps for zero-balanced parameters, split as 1/eps + regular.
/// The regular part is computed from the logarithmic expansion about z = 1
/// without forming 1/eps, so Re W stays accurate when |eps| is far below
/// machine epsilon. Requires c = a + b, a, b > 0 and 0 < |eps| <= 1/4.
struct NearOneW {
  Complex inv_eps;
  Complex regular;
  Complex value() const { return inv_eps + regular; }
  double real() const { return inv_eps.real() + regular.real(); }
};
NearOneW pre_schwarzian_W_near_one(const Params& p, Complex eps);

// ---------------------------------------------------------------------------
// Orders of convexity and starlikeness.
// ---------------------------------------------------------------------------

enum class Condition { thm12, thmB, thm13_case1, thm13_case2, thmA_notconvex };
std::string_view to_string(Condition c);

/// (min(a,b), max(a,b), c). F is symmetric in a and b, and every hypothesis
/// below is stated for a <= b.
Params canonical(const Params& p);

/// Hypothesis sets satisfied by p (after canonical ordering).
std::vector<Condition> conditions_met(const Params& p);
bool has_condition(const std::vector<Condition>& set, Condition c);

/// First failed inequality of the closed-form kappa hypotheses
///   1 < a <= b <= 4, c > 2, b <= c <= 2b <= 2(1+a),
/// with a = 1 (and then c >= 2) admitted as the continuous limit.
std::optional<std::string> kappa_hypothesis_failure(const Params& p);

/// Closed-form order of convexity
///   (5 - c - a - b)/2 + (c - 2 - (1-a)(1-b)) / (2 (1 - a + a G(-1)/F(-1))).
/// Throws ErrorKind::precondition naming the failed inequality.
double kappa_closed_form(const Params& p, const EngineConfig& cfg = {});

/// sigma = 1 - F'(-1)/F(-1) for 0 < a <= b <= c.
double sigma_closed_form(const Params& p, const EngineConfig& cfg = {});

struct GridOptions {
  std::vector<double> radii = {0.9, 0.99, 0.999};
  int n_angles = 4096;
};

struct RadiusMinimum {
  double radius = 0.0;
  double minimum = 0.0;
  double argmin_theta = 0.0;
  /// min |(zF)'| (kappa) or min |F| (sigma) over the circle.
  double min_abs_denominator = 0.0;
};

struct NumericOrder {
  bool defined = true;
  double estimate = 0.0;  // minimum at the outermost radius
  std::vector<RadiusMinimum> per_radius;
  bool monotone = true;   // per-radius minima non-increasing
  /// Last two radii extrapolated linearly in 1 - r to r = 1; the minimum
  /// approaches its limit at that rate when it sits at a regular boundary point.
  std::optional<double> extrapolated;
  std::string note;
};

/// 1 + inf Re z f''/f' over the grid {r e^{i 2 pi k/n}}. Uses the direct
/// assembly of W, independent of the closed decomposition. The order is
/// reported undefined when (zF)' winds around 0 on some circle, i.e. has a
/// zero inside it.
NumericOrder kappa_numeric(const Params& p, const GridOptions& grid = {},
                           const EngineConfig& cfg = {});

/// inf Re z f'/f = inf Re (1 + z F'/F) over the same grid.
NumericOrder sigma_numeric(const Params& p, const GridOptions& grid = {},
                           const EngineConfig& cfg = {});

struct OrderReport {
  Params params;  // canonical order
  std::optional<double> kappa_closed;
  std::optional<double> sigma_closed;
  std::optional<NumericOrder> kappa_numeric;
  std::optional<NumericOrder> sigma_numeric;
  std::optional<double> ratio_at_minus1;  // F(a+1,b;c;-1)/F(a,b;c;-1)
  std::vector<Condition> conditions_met;
  bool kappa_limit_case = false;  // a = 1 admitted by continuity
  std::vector<std::string> notes;
};

OrderReport order_report(const Params& p, bool numeric, const GridOptions& grid = {},
                         const EngineConfig& cfg = {});

// ---------------------------------------------------------------------------
// Boundary image and strip geometry.
// ---------------------------------------------------------------------------

/// pi / (2 B(a, b)).
double strip_halfwidth(double a, double b);

struct BoundaryCurve {
  std::vector<double> theta;
  std::vector<double> u;
  std::vector<double> v;
};

/// w(theta) = e^{i theta} F(a, b; c; e^{i theta}) on a uniform grid over
/// [theta_min, 2 pi - theta_min].
BoundaryCurve trace_boundary(const Params& p, int n_samples, double theta_min = 1e-3,
                             const EngineConfig& cfg = {});

/// v(0+) from the three smallest-theta samples, fitting
/// v = v0 + c1 theta log theta + c2 theta (the shape of the boundary near
/// z = 1 implied by the logarithmic expansion).
double extrapolate_v_at_zero(const BoundaryCurve& curve);

/// max |v| <= h (1 + 1e-6) and |v(0+) - h| <= 1e-2 with h = strip_halfwidth.
/// Needs c = a + b with a, b > 0; the details note when (a, b) lies outside
/// the proven convexity conditions.
CheckReport check_strip(const Params& p, const BoundaryCurve& curve);

/// Every v sample <= v(0+) + 1e-6, and (by conjugate symmetry) >= -v(0+) - 1e-6.
CheckReport check_boundary_vmax(const BoundaryCurve& curve);

}  // namespace hypgeo
