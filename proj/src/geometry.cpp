#include "hypgeo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "hypgeo/errors.hpp"
#include "hypgeo/special_fn.hpp"

namespace hypgeo {
namespace {

constexpr double kHypTol = 1e-12;
constexpr double kDerivativeZero = 1e-12;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::string fmt_short(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

std::string fmt(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

struct Derivatives {
  Complex F, F1, F2;
};

Derivatives derivatives(const Params& p, Complex z, const EngineConfig& cfg) {
  Derivatives d;
  d.F = hyp2f1_continued(p, z, cfg).value;
  d.F1 = hyp2f1_derivative(p, z, cfg).value;
  const double k2 = p.a * p.b * (p.a + 1) * (p.b + 1) / (p.c * (p.c + 1));
  d.F2 = k2 == 0.0 ? Complex(0.0)
                   : k2 * hyp2f1_continued(Params{p.a + 2, p.b + 2, p.c + 2}, z, cfg).value;
  return d;
}

bool near(double x, double target) { return std::abs(x - target) <= kHypTol; }

}  // namespace

Complex pre_schwarzian_W_closed(const Params& p, Complex z, const EngineConfig& cfg) {
  const double a = p.a, b = p.b, c = p.c;
  const Complex one_minus = 1.0 - z;
  const Complex ratio = ratio_G_over_F(p, z, cfg);
  const Complex denom = one_minus * (1.0 - a + a * ratio);
  if (std::abs(denom) < kDerivativeZero) {
    throw Error(ErrorKind::derivative_zero, "(zF)' vanishes at z=" + fmt(z));
  }
  return (3.0 - c + (a + b - 2.0) * z) / one_minus +
         (c - 2.0 + (1.0 - a) * (1.0 - b) * z) / denom;
}

Complex pre_schwarzian_W_direct(const Params& p, Complex z, const EngineConfig& cfg) {
  const Derivatives d = derivatives(p, z, cfg);
  const Complex f1 = d.F + z * d.F1;
  if (std::abs(f1) < kDerivativeZero) {
    throw Error(ErrorKind::derivative_zero, "|(zF)'| < 1e-12 at z=" + fmt(z));
  }
  return 1.0 + z * (2.0 * d.F1 + z * d.F2) / f1;
}

Complex pre_schwarzian_W(const Params& p, Complex z, const EngineConfig& cfg) {
  const Complex direct = pre_schwarzian_W_direct(p, z, cfg);
  const Complex closed = pre_schwarzian_W_closed(p, z, cfg);
  const double diff = std::abs(closed - direct);
  if (diff > 1e-8 * std::max(1.0, std::abs(direct))) {
    throw Error(ErrorKind::inconsistency, "W decomposition " + fmt(closed) +
                                              " disagrees with direct value " + fmt(direct) +
                                              " at z=" + fmt(z));
  }
  return closed;
}

NearOneW pre_schwarzian_W_near_one(const Params& p, Complex eps) {
  p.validate();
  if (!p.zero_balanced() || p.a <= 0.0 || p.b <= 0.0) {
    throw Error(ErrorKind::precondition, "near-one W needs c = a + b with a, b > 0");
  }
  const double m = std::abs(eps);
  if (!(m > 0.0) || m > 0.25) {
    throw Error(ErrorKind::domain, "near-one W needs 0 < |1 - z| <= 1/4, got " + fmt(m));
  }
  const double a = p.a, b = p.b;
  const Complex L = std::log(eps);

  // F is proportional to sum_n alpha_n (h_n - L) eps^n; S, T1, T2 are that sum
  // and its first two eps-derivatives with the singular 1/eps pieces split off.
  Complex S = 0.0, T1 = 0.0, T2 = 0.0;
  Complex en = 1.0, en1 = 0.0, en2 = 0.0;
  double alpha = 1.0;
  double h = ramanujan_R(a, b);
  int quiet = 0;
  for (int n = 0; n < 5000; ++n) {
    const Complex g = h - L;
    const Complex dS = alpha * g * en;
    const Complex dT1 = n >= 1 ? alpha * (double(n) * g - 1.0) * en1 : Complex(0.0);
    const Complex dT2 =
        n >= 2 ? alpha * (double(n - 1) * (double(n) * g - 1.0) - double(n)) * en2 : Complex(0.0);
    S += dS;
    T1 += dT1;
    T2 += dT2;
    const double scale = std::abs(S) + std::abs(T1) + std::abs(T2) + 1.0;
    const double inc = std::max({std::abs(dS), std::abs(dT1), std::abs(dT2)});
    quiet = (n >= 2 && inc <= 1e-17 * scale) ? quiet + 1 : 0;
    if (quiet >= 3) break;
    const double nn = n;
    alpha *= (a + nn) * (b + nn) / ((nn + 1) * (nn + 1));
    h += 2.0 / (nn + 1) - 1.0 / (a + nn) - 1.0 / (b + nn);
    en2 = en1;
    en1 = en;
    en *= eps;
  }
  const double ab = a * b;
  const Complex d = S - 1.0 - (1.0 - eps) * T1;
  const Complex n1 = (1.0 - ab) + eps * (ab + (1.0 - eps) * T2 - 2.0 * T1);
  NearOneW w;
  w.inv_eps = 1.0 / eps;
  w.regular = (1.0 - eps) * (n1 - d) / (1.0 + eps * d);
  return w;
}

std::string_view to_string(Condition c) {
  switch (c) {
    case Condition::thm12: return "thm12";
    case Condition::thmB: return "thmB";
    case Condition::thm13_case1: return "thm13_case1";
    case Condition::thm13_case2: return "thm13_case2";
    case Condition::thmA_notconvex: return "thmA_notconvex";
  }
  return "unknown";
}

Params canonical(const Params& p) {
  return p.a <= p.b ? p : Params{p.b, p.a, p.c};
}

std::optional<std::string> kappa_hypothesis_failure(const Params& raw) {
  const Params p = canonical(raw);
  const double a = p.a, b = p.b, c = p.c;
  const bool limit = near(a, 1.0);
  if (!limit && !(a > 1.0)) return std::string("1<a");
  if (b > 4.0 + kHypTol) return std::string("b<=4");
  if (limit ? c < 2.0 - kHypTol : !(c > 2.0)) return std::string(limit ? "c>=2" : "c>2");
  if (b > c + kHypTol) return std::string("b<=c");
  if (c > 2.0 * b + kHypTol) return std::string("c<=2b");
  if (2.0 * b > 2.0 * (1.0 + a) + kHypTol) return std::string("2b<=2(1+a)");
  return std::nullopt;
}

std::vector<Condition> conditions_met(const Params& raw) {
  const Params p = canonical(raw);
  const double a = p.a, b = p.b;
  std::vector<Condition> out;
  if (!kappa_hypothesis_failure(p)) out.push_back(Condition::thm12);
  if (a > 0.0 && b <= p.c + kHypTol) out.push_back(Condition::thmB);
  if (p.zero_balanced()) {
    if (near(a, 1.0) && b >= 1.0 - kHypTol && b <= 4.0 + kHypTol) {
      out.push_back(Condition::thm13_case1);
    } else if (a > 1.0 + kHypTol) {
      const double cap = std::min({3.0, 1.0 + a, 4.0 * a / (5.0 * a - 4.0)});
      if (b <= cap + kHypTol) out.push_back(Condition::thm13_case2);
    }
    if (a > 0.0 && a * b < 1.0) out.push_back(Condition::thmA_notconvex);
  }
  return out;
}

bool has_condition(const std::vector<Condition>& set, Condition c) {
  return std::find(set.begin(), set.end(), c) != set.end();
}

double kappa_closed_form(const Params& raw, const EngineConfig& cfg) {
  raw.validate();
  if (auto failed = kappa_hypothesis_failure(raw)) {
    throw Error(ErrorKind::precondition, "closed-form kappa needs " + *failed);
  }
  const Params p = canonical(raw);
  const double a = p.a, b = p.b, c = p.c;
  const double ratio = ratio_G_over_F(p, Complex(-1.0), cfg).real();
  return (5.0 - c - a - b) / 2.0 + (c - 2.0 - (1.0 - a) * (1.0 - b)) / (2.0 * (1.0 - a + a * ratio));
}

double sigma_closed_form(const Params& raw, const EngineConfig& cfg) {
  raw.validate();
  const Params p = canonical(raw);
  if (!(p.a > 0.0)) throw Error(ErrorKind::precondition, "closed-form sigma needs 0<a");
  if (p.b > p.c + kHypTol) throw Error(ErrorKind::precondition, "closed-form sigma needs b<=c");
  const Complex F = hyp2f1(p, Complex(-1.0), cfg).value;
  const Complex F1 = hyp2f1_derivative(p, Complex(-1.0), cfg).value;
  return 1.0 - (F1 / F).real();
}

namespace {

// Minimum of Re g(z) over the circle grids. `denominator` is the function
// whose zeros make the functional undefined; its winding number around each
// circle counts those zeros inside, so they are caught even when no sample
// lands near one.
template <class Eval>
NumericOrder grid_minimum(const GridOptions& grid, const char* what, Eval eval) {
  if (grid.radii.empty() || grid.n_angles < 4) {
    throw Error(ErrorKind::parameter, "grid needs at least one radius and 4 angles");
  }
  NumericOrder out;
  auto add_note = [&](const std::string& s) { out.note += (out.note.empty() ? "" : "; ") + s; };
  // Argument increment between two samples, bisecting while it is too large
  // to be unambiguous (the circle passes close to z = 1, where F may blow up).
  std::function<double(double, double, Complex, double, Complex, int)> arg_step =
      [&](double r, double t0, Complex d0, double t1, Complex d1, int depth) -> double {
    const double jump = std::arg(d1 / d0);
    if (std::abs(jump) < kPi / 4 || depth > 30) return jump;
    const double tm = 0.5 * (t0 + t1);
    Complex dm;
    eval(Complex(r * std::cos(tm), r * std::sin(tm)), &dm);
    if (std::abs(dm) < kDerivativeZero) return jump;
    return arg_step(r, t0, d0, tm, dm, depth + 1) + arg_step(r, tm, dm, t1, d1, depth + 1);
  };
  for (double r : grid.radii) {
    if (!(r > 0.0 && r < 1.0)) throw Error(ErrorKind::parameter, "radius must lie in (0,1)");
    RadiusMinimum rm;
    rm.radius = r;
    rm.minimum = std::numeric_limits<double>::infinity();
    rm.min_abs_denominator = std::numeric_limits<double>::infinity();
    const double step = 2.0 * kPi / grid.n_angles;
    double turning = 0.0;
    Complex first, prev;
    bool hit_zero = false;
    for (int k = 0; k < grid.n_angles; ++k) {
      const double theta = 2.0 * kPi * k / grid.n_angles;
      const Complex z(r * std::cos(theta), r * std::sin(theta));
      Complex denom;
      const double value = eval(z, &denom);
      rm.min_abs_denominator = std::min(rm.min_abs_denominator, std::abs(denom));
      if (std::abs(denom) < kDerivativeZero) {
        hit_zero = true;
        out.defined = false;
        add_note(std::string(what) + " vanishes near z=" + fmt(z) + "; order undefined");
        continue;
      }
      if (k == 0) first = denom;
      else if (!hit_zero) turning += arg_step(r, theta - step, prev, theta, denom, 0);
      prev = denom;
      if (value < rm.minimum) {
        rm.minimum = value;
        rm.argmin_theta = theta;
      }
    }
    if (!hit_zero) {
      turning += arg_step(r, 2.0 * kPi - step, prev, 2.0 * kPi, first, 0);
      const long zeros = std::lround(turning / (2.0 * kPi));
      if (zeros != 0) {
        out.defined = false;
        add_note(std::string(what) + " has " + std::to_string(zeros) + " zero(s) in |z|<" + fmt_short(r) +
                 "; order undefined");
      }
    }
    out.per_radius.push_back(rm);
  }
  for (std::size_t i = 1; i < out.per_radius.size(); ++i) {
    const double prev = out.per_radius[i - 1].minimum;
    if (out.per_radius[i].minimum > prev + 1e-12 * std::max(1.0, std::abs(prev))) {
      out.monotone = false;
    }
  }
  out.estimate = out.per_radius.back().minimum;
  if (out.per_radius.size() >= 2) {
    const RadiusMinimum& r0 = out.per_radius[out.per_radius.size() - 2];
    const RadiusMinimum& r1 = out.per_radius.back();
    const double d0 = 1.0 - r0.radius, d1 = 1.0 - r1.radius;
    if (d0 != d1) out.extrapolated = r1.minimum - (r0.minimum - r1.minimum) * d1 / (d0 - d1);
  }
  return out;
}

}  // namespace

NumericOrder kappa_numeric(const Params& p, const GridOptions& grid, const EngineConfig& cfg) {
  p.validate();
  NumericOrder out = grid_minimum(grid, "(zF)'", [&](Complex z, Complex* denom) {
    const Derivatives d = derivatives(p, z, cfg);
    const Complex f1 = d.F + z * d.F1;
    *denom = f1;
    if (std::abs(f1) < kDerivativeZero) return 0.0;
    return (1.0 + z * (2.0 * d.F1 + z * d.F2) / f1).real();
  });
  if (kappa_hypothesis_failure(p)) {
    out.note += std::string(out.note.empty() ? "" : "; ") +
                "heuristic: infimum location not established for these parameters";
  }
  return out;
}

NumericOrder sigma_numeric(const Params& p, const GridOptions& grid, const EngineConfig& cfg) {
  p.validate();
  return grid_minimum(grid, "F", [&](Complex z, Complex* denom) {
    const Complex F = hyp2f1_continued(p, z, cfg).value;
    *denom = F;
    if (std::abs(F) < kDerivativeZero) return 0.0;
    const Complex F1 = hyp2f1_derivative(p, z, cfg).value;
    return (1.0 + z * F1 / F).real();
  });
}

OrderReport order_report(const Params& raw, bool numeric, const GridOptions& grid,
                         const EngineConfig& cfg) {
  raw.validate();
  OrderReport r;
  r.params = canonical(raw);
  if (raw.a > raw.b) r.notes.push_back("a and b swapped to canonical order a<=b");
  r.conditions_met = conditions_met(r.params);
  try {
    r.ratio_at_minus1 = ratio_G_over_F(r.params, Complex(-1.0), cfg).real();
  } catch (const Error& e) {
    r.notes.push_back(std::string("ratio at -1 unavailable: ") + e.what());
  }
  if (auto failed = kappa_hypothesis_failure(r.params)) {
    r.notes.push_back("closed-form kappa not applicable: fails " + *failed);
  } else if (r.ratio_at_minus1 && 1.0 - r.params.a + r.params.a * *r.ratio_at_minus1 <= 0.0) {
    // 1 - a + a G/F(-1) = (zF)'(-1)/F(-1); a sign change puts a zero of (zF)'
    // on (-1, 0) and the formula no longer describes an infimum.
    r.notes.push_back("closed-form kappa withheld: (zF)'(-1)/F(-1) <= 0, so (zF)' vanishes in the disc");
  } else {
    const double k = kappa_closed_form(r.params, cfg);
    if (k > 1.0 + kHypTol) {
      // W(0) = 1 caps any order of convexity at 1.
      r.notes.push_back("closed-form kappa withheld: formula gives " + fmt(k) +
                        " > 1, impossible for an order of convexity");
    } else {
      r.kappa_closed = k;
    }
    r.kappa_limit_case = near(r.params.a, 1.0);
    if (r.kappa_limit_case) r.notes.push_back("a=1 admitted as continuous limit of the kappa formula");
  }
  if (has_condition(r.conditions_met, Condition::thmB)) {
    r.sigma_closed = sigma_closed_form(r.params, cfg);
  } else {
    r.notes.push_back("closed-form sigma not applicable: needs 0<a<=b<=c");
  }
  if (numeric) {
    r.kappa_numeric = kappa_numeric(r.params, grid, cfg);
    r.sigma_numeric = sigma_numeric(r.params, grid, cfg);
    if (r.kappa_closed && !r.kappa_numeric->defined) {
      r.notes.push_back("closed-form kappa contradicted: (zF)' vanishes in the disc");
    }
  }
  return r;
}

double strip_halfwidth(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw Error(ErrorKind::domain, "strip half-width needs a, b > 0");
  return kPi / (2.0 * beta(a, b));
}

BoundaryCurve trace_boundary(const Params& p, int n_samples, double theta_min,
                             const EngineConfig& cfg) {
  p.validate();
  if (!p.zero_balanced() && !(p.gap() > 0.0)) {
    throw Error(ErrorKind::precondition, "boundary tracing needs c-a-b = 0 or c-a-b > 0");
  }
  if (!(theta_min > 0.0 && theta_min <= kPi / 8.0)) {
    throw Error(ErrorKind::precondition, "theta_min must lie in (0, pi/8]");
  }
  if (n_samples < 16) throw Error(ErrorKind::precondition, "need at least 16 samples");
  BoundaryCurve curve;
  curve.theta.reserve(n_samples);
  curve.u.reserve(n_samples);
  curve.v.reserve(n_samples);
  const double span = 2.0 * kPi - 2.0 * theta_min;
  for (int k = 0; k < n_samples; ++k) {
    const double theta = k + 1 == n_samples ? 2.0 * kPi - theta_min
                                            : theta_min + span * k / (n_samples - 1);
    const Complex z(std::cos(theta), std::sin(theta));
    Complex w;
    try {
      w = z * hyp2f1(p, z, cfg).value;
    } catch (const Error& e) {
      throw Error(e.kind(), "boundary evaluation failed at theta=" + fmt(theta) + ": " + e.what());
    }
    curve.theta.push_back(theta);
    curve.u.push_back(w.real());
    curve.v.push_back(w.imag());
  }
  return curve;
}

double extrapolate_v_at_zero(const BoundaryCurve& curve) {
  if (curve.theta.size() < 3) throw Error(ErrorKind::precondition, "need three samples");
  // 3x3 solve of v_i = v0 + c1 t_i log t_i + c2 t_i by Cramer's rule.
  double m[3][3], rhs[3];
  for (int i = 0; i < 3; ++i) {
    const double t = curve.theta[i];
    m[i][0] = 1.0;
    m[i][1] = t * std::log(t);
    m[i][2] = t;
    rhs[i] = curve.v[i];
  }
  auto det3 = [](double x[3][3]) {
    return x[0][0] * (x[1][1] * x[2][2] - x[1][2] * x[2][1]) -
           x[0][1] * (x[1][0] * x[2][2] - x[1][2] * x[2][0]) +
           x[0][2] * (x[1][0] * x[2][1] - x[1][1] * x[2][0]);
  };
  const double det = det3(m);
  double m0[3][3];
  for (int i = 0; i < 3; ++i) {
    m0[i][0] = rhs[i];
    m0[i][1] = m[i][1];
    m0[i][2] = m[i][2];
  }
  return det3(m0) / det;
}

CheckReport check_strip(const Params& raw, const BoundaryCurve& curve) {
  const Params p = canonical(raw);
  if (!p.zero_balanced() || !(p.a > 0.0)) {
    throw Error(ErrorKind::precondition, "strip check needs c=a+b with a, b > 0");
  }
  const auto conds = conditions_met(p);
  const bool covered = has_condition(conds, Condition::thm13_case1) ||
                       has_condition(conds, Condition::thm13_case2);
  const double h = strip_halfwidth(p.a, p.b);
  double max_abs_v = 0.0;
  std::size_t at = 0;
  for (std::size_t i = 0; i < curve.v.size(); ++i) {
    if (std::abs(curve.v[i]) > max_abs_v) {
      max_abs_v = std::abs(curve.v[i]);
      at = i;
    }
  }
  const double v0 = extrapolate_v_at_zero(curve);
  const double bound_excess = max_abs_v - h * (1.0 + 1e-6);
  const double optimality_excess = std::abs(v0 - h) - 1e-2;
  std::ostringstream d;
  d.precision(12);
  if (!covered) d << "outside the convexity condition set; ";
  d << "halfwidth=" << h << " max|v|=" << max_abs_v << " v(0+)=" << v0 << " raw v at smallest theta:";
  for (std::size_t i = 0; i < 3 && i < curve.v.size(); ++i) d << ' ' << curve.v[i];
  return make_report("strip", std::max(bound_excess, optimality_excess), 0.0,
                     bound_excess >= optimality_excess ? "theta=" + fmt(curve.theta[at])
                                                       : "theta->0+",
                     d.str());
}

CheckReport check_boundary_vmax(const BoundaryCurve& curve) {
  const double v0 = extrapolate_v_at_zero(curve);
  double worst = -std::numeric_limits<double>::infinity();
  std::size_t at = 0;
  for (std::size_t i = 0; i < curve.v.size(); ++i) {
    const double excess = std::max(curve.v[i] - v0, -v0 - curve.v[i]);
    if (excess > worst) {
      worst = excess;
      at = i;
    }
  }
  return make_report("boundary-vmax", worst, 1e-6, "theta=" + fmt(curve.theta[at]),
                     "v(0+)=" + fmt(v0));
}

}  // namespace hypgeo
