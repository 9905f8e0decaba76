#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hypgeo/check_report.hpp"
#include "hypgeo/geometry.hpp"
#include "hypgeo/hyp2f1.hpp"
#include "hypgeo/qs.hpp"

namespace hypgeo {

// ---------------------------------------------------------------------------
// Stieltjes-type (Herglotz) necessary conditions.
// ---------------------------------------------------------------------------

enum class HerglotzFunction { H_over_G, M_normalized };
std::string_view to_string(HerglotzFunction f);

/// M(z) / (c - 2) with M = M1/M2, M1 = (c-2 + (1-a)(1-b) z)/(1-z),
/// M2 = 1 + tau z H/G and tau = (a-1) b / c.
Complex M_normalized(const Params& p, Complex z, const EngineConfig& cfg = {});

struct HerglotzGrid {
  std::vector<double> real_points;       // default: 60 points spread over (-10, 0.95)
  std::vector<Complex> upper_points;     // default: disc grid plus points with Re z < 1/2
  double far_x = 1e6;                    // the limsup sample at -far_x

  static HerglotzGrid defaults();
};

/// f(0) = 1, real on real samples, Im f >= 0 in the upper half plane,
/// f(-far_x) >= -1e-6. Tolerances 1e-10 except the last.
CheckReport check_herglotz(HerglotzFunction fn, const Params& p,
                           const HerglotzGrid& grid = HerglotzGrid::defaults(),
                           const EngineConfig& cfg = {});

// ---------------------------------------------------------------------------
// Trends and asymptotics.
// ---------------------------------------------------------------------------

std::vector<double> default_x_list();  // 1e1 .. 1e6
std::vector<double> default_s_list();  // 1e-2 .. 1e-5
std::vector<double> default_theta_list();  // 1e-1 .. 1e-4

/// x H(-x)/G(-x): strictly increasing over x_list and above 1e3 at the end.
/// Requires 0 < a <= b <= 1 + a.
CheckReport check_limit_infinity(const Params& p, const std::vector<double>& x_list = default_x_list(),
                                 const EngineConfig& cfg = {});

enum class GFRegime { below_sum = 1, zero_balanced = 2, fractional_excess = 3, unit_excess = 4 };

/// Regime of G/F near z = 1 from c - a - b; throws ErrorKind::precondition
/// when c - a - b > 1 or lies strictly between integers above 1.
GFRegime classify_gf_regime(const Params& p);

/// Leading term of G/F at z = 1 - s for regimes 1 to 3; for regime 4 the
/// comparison quantity is -b log s.
double gf_leading_term(const Params& p, GFRegime regime, double s);

/// Least-squares slope of log|G/F(1-s)| against log s.
double fit_gf_exponent(const Params& p, const std::vector<double>& s_list, const EngineConfig& cfg = {});

CheckReport check_GF_asymptotics(const Params& p, const std::vector<double>& s_list = default_s_list(),
                                 const EngineConfig& cfg = {});

struct RatioGrid {
  int n = 20;
  double a_lo = -1.0, a_hi = 4.0;
  double b_lo = 0.0, b_hi = 4.0;
  double c_hi = 5.0;
  double c_floor = 0.1;
  double slack = 1e-10;
};

/// c/(b+c) <= G(-1)/F(-1) <= (2c-b)/(2c) at every point of an n^3 grid with
/// c from max(a, b, c_floor) to c_hi.
CheckReport check_ratio_bounds_grid(const RatioGrid& grid = {}, const EngineConfig& cfg = {});

/// -e^{i theta} log(1 - e^{i theta}) and its expansion
/// -e^{i theta} [log(2 sin(theta/2)) + i (theta - pi)/2].
Complex neg_rotated_log(double theta);
Complex neg_rotated_log_expansion(double theta);

CheckReport check_log_limits(const std::vector<double>& theta_list = default_theta_list());

// ---------------------------------------------------------------------------
// Non-convexity witnesses.
// ---------------------------------------------------------------------------

struct WitnessOptions {
  std::vector<double> radii = {0.9, 0.99, 0.9999};
  int n_angles = 8192;
  bool boundary_layer = true;  // continue into |1 - z| << 1 with the near-one expansion
  int layer_max_exponent = 150;
};

struct Witness {
  bool found = false;
  double min_re_w = 0.0;
  Complex z;              // location of the minimum (1 - eps for layer points)
  Complex eps;            // 1 - z, kept separately when z rounds to 1
  std::string stage;      // "grid" or "boundary-layer"
};

Witness find_not_convex_witness(const Params& p, const WitnessOptions& opt = {},
                                const EngineConfig& cfg = {});

/// Passes when some sample has Re W < -1e-6. Requires a, b > 0 and c = a + b;
/// with ab >= 1 it is expected to fail.
CheckReport check_not_convex(const Params& p, const WitnessOptions& opt = {},
                             const EngineConfig& cfg = {});

// ---------------------------------------------------------------------------
// Parameter-region scans.
// ---------------------------------------------------------------------------

enum class ScanMode { thm13, thm12, thmA };
std::string_view to_string(ScanMode m);

struct Range {
  double lo = 0.0, hi = 0.0, step = 0.1;
  /// lo, lo + step, ... up to hi (inclusive within step * 1e-9).
  std::vector<double> values() const;
};

struct ScanOptions {
  GridOptions grid;
  int trace_samples = 2000;
  double theta_min = 1e-3;
  std::optional<double> c;  // thm12 mode only; default c = a + b
  WitnessOptions witness;
};

struct ScanRecord {
  double a = 0.0, b = 0.0, c = 0.0;
  bool in_region = false;
  std::vector<Condition> conditions;
  std::optional<double> kappa;
  std::string kappa_source;  // "closed", "numeric" or "witness"
  std::string verdict;
  std::string detail;
};

/// One record per (a, b) grid point in a-major order. Per-point failures
/// become verdict "error" records.
std::vector<ScanRecord> scan_region(const Range& a_range, const Range& b_range, ScanMode mode,
                                    const ScanOptions& opt = {}, const EngineConfig& cfg = {});

/// True when an in-region record did not get the verdict its mode predicts.
bool scan_record_failed(const ScanRecord& r, ScanMode mode);

}  // namespace hypgeo
