#include "hypgeo/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "hypgeo/errors.hpp"
#include "hypgeo/special_fn.hpp"

namespace hypgeo {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::string fmt(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

std::string fmt(const Params& p) {
  std::ostringstream os;
  os.precision(17);
  os << "(a=" << p.a << ", b=" << p.b << ", c=" << p.c << ")";
  return os.str();
}

// Tracks the largest violation and where it happened.
struct Worst {
  double value = -kInf;
  std::string where;
  void update(double v, const std::string& loc) {
    if (v > value) {
      value = v;
      where = loc;
    }
  }
};

bool in_minus_N(double x) { return is_nonpositive_integer(x); }

}  // namespace

std::string_view to_string(HerglotzFunction f) {
  return f == HerglotzFunction::H_over_G ? "H_over_G" : "M_normalized";
}

Complex M_normalized(const Params& p, Complex z, const EngineConfig& cfg) {
  const QSCoefficients k = QSCoefficients::from(p);
  const double cm2 = p.c - 2.0;
  if (cm2 == 0.0) throw Error(ErrorKind::precondition, "M/(c-2) needs c != 2");
  const Complex M1 = (cm2 + (1.0 - p.a) * (1.0 - p.b) * z) / (1.0 - z);
  const Complex M2 = 1.0 + k.tau * z * ratio_H_over_G(p, z, cfg);
  if (std::abs(M2) < 1e-14) {
    throw Error(ErrorKind::division_hazard, "M2 vanishes at z=" + fmt(z));
  }
  return M1 / (M2 * cm2);
}

HerglotzGrid HerglotzGrid::defaults() {
  HerglotzGrid g;
  for (int i = 0; i < 60; ++i) g.real_points.push_back(-10.0 + 10.95 * (i + 0.5) / 60.0);
  for (int i = 0; i <= 18; ++i) {
    for (int j = 1; j <= 9; ++j) {
      const Complex z(-0.9 + 0.1 * i, 0.1 * j);
      if (std::abs(z) <= 0.99) g.upper_points.push_back(z);
    }
  }
  for (double y : {1e-3, 0.02}) {
    for (double x : {-0.9, -0.5, 0.0, 0.5, 0.9}) g.upper_points.emplace_back(x, y);
  }
  for (double x : {-8.0, -3.0, -1.5, 0.0, 0.3}) {
    for (double y : {0.5, 1.5, 4.0}) {
      const Complex z(x, y);
      if (std::abs(z) > 1.0) g.upper_points.push_back(z);
    }
  }
  return g;
}

CheckReport check_herglotz(HerglotzFunction fn, const Params& p, const HerglotzGrid& grid,
                           const EngineConfig& cfg) {
  p.validate();
  const double a = p.a, b = p.b, c = p.c;
  if (fn == HerglotzFunction::H_over_G) {
    if (!(a >= -1.0 && a <= c && b >= 0.0 && b <= c && c != 0.0)) {
      throw Error(ErrorKind::precondition, "H/G representation needs -1<=a<=c, 0<=b<=c, c!=0");
    }
  } else {
    if (auto failed = kappa_hypothesis_failure(p)) {
      throw Error(ErrorKind::precondition, "M/(c-2) representation needs " + *failed);
    }
    if (!(canonical(p).a > 1.0)) throw Error(ErrorKind::precondition, "M/(c-2) needs 1<a");
  }
  const Params q = fn == HerglotzFunction::M_normalized ? canonical(p) : p;
  auto f = [&](Complex z) {
    return fn == HerglotzFunction::H_over_G ? ratio_H_over_G(q, z, cfg) : M_normalized(q, z, cfg);
  };

  Worst w;
  std::ostringstream d;
  d.precision(12);
  auto guarded = [&](Complex z, const char* what) -> std::optional<Complex> {
    try {
      return f(z);
    } catch (const Error& e) {
      throw Error(e.kind(), std::string(what) + " sample z=" + fmt(z) + ": " + e.what());
    }
  };

  const Complex f0 = *guarded(0.0, "normalisation");
  w.update(std::abs(f0 - 1.0) - 1e-10, "z=0");
  double max_im_real = 0.0;
  for (double x : grid.real_points) {
    const Complex v = *guarded(Complex(x, 0.0), "real-axis");
    max_im_real = std::max(max_im_real, std::abs(v.imag()));
    w.update(std::abs(v.imag()) - 1e-10, "z=" + fmt(x));
  }
  double min_im = kInf;
  for (Complex z : grid.upper_points) {
    const Complex v = *guarded(z, "upper half plane");
    min_im = std::min(min_im, v.imag());
    w.update(-v.imag() - 1e-10, "z=" + fmt(z));
  }
  const Complex far = *guarded(Complex(-grid.far_x, 0.0), "far negative");
  w.update(-far.real() - 1e-6, "z=" + fmt(-grid.far_x));
  d << "f(0)=" << f0.real() << " max|Im| on reals=" << max_im_real << " min Im upper=" << min_im
    << " f(-" << grid.far_x << ")=" << far.real();
  return make_report(std::string("herglotz:") + std::string(to_string(fn)), w.value, 0.0, w.where,
                     d.str());
}

std::vector<double> default_x_list() { return {1e1, 1e2, 1e3, 1e4, 1e5, 1e6}; }
std::vector<double> default_s_list() { return {1e-2, 1e-3, 1e-4, 1e-5}; }
std::vector<double> default_theta_list() { return {1e-1, 1e-2, 1e-3, 1e-4}; }

CheckReport check_limit_infinity(const Params& p, const std::vector<double>& x_list,
                                 const EngineConfig& cfg) {
  p.validate();
  if (!(p.a > 0.0 && p.a <= p.b && p.b <= 1.0 + p.a + 1e-12)) {
    throw Error(ErrorKind::precondition, "limit at -infinity needs 0<a<=b<=1+a");
  }
  if (x_list.size() < 2) throw Error(ErrorKind::parameter, "need at least two x samples");
  std::vector<double> vals;
  for (double x : x_list) {
    try {
      vals.push_back(x * ratio_H_over_G(p, Complex(-x, 0.0), cfg).real());
    } catch (const Error& e) {
      throw Error(e.kind(), "evaluation failed at x=" + fmt(x) + ": " + e.what());
    }
  }
  Worst w;
  std::ostringstream d;
  d.precision(10);
  d << "x*H/G:";
  for (std::size_t i = 0; i < vals.size(); ++i) {
    d << ' ' << vals[i];
    if (i > 0) w.update(vals[i - 1] - vals[i], "x=" + fmt(x_list[i]));
  }
  w.update(1e3 - vals.back(), "x=" + fmt(x_list.back()) + " (threshold 1e3)");
  // Strictly increasing means every difference is negative; equality fails too.
  bool strict = true;
  for (std::size_t i = 1; i < vals.size(); ++i) strict = strict && vals[i] > vals[i - 1];
  CheckReport r = make_report("limit-inf", w.value, 0.0, w.where, d.str());
  r.passed = r.passed && strict && vals.back() > 1e3;
  return r;
}

GFRegime classify_gf_regime(const Params& p) {
  const double g = p.gap();
  constexpr double tol = 1e-9;
  if (g < -tol) return GFRegime::below_sum;
  if (std::abs(g) <= tol) return GFRegime::zero_balanced;
  if (g < 1.0 - tol) return GFRegime::fractional_excess;
  if (std::abs(g - 1.0) <= tol) return GFRegime::unit_excess;
  throw Error(ErrorKind::precondition, "no G/F regime for c-a-b=" + fmt(g) + " > 1");
}

double gf_leading_term(const Params& p, GFRegime regime, double s) {
  const double a = p.a, b = p.b, c = p.c;
  switch (regime) {
    case GFRegime::below_sum: return (a + b - c) / (a * s);
    case GFRegime::zero_balanced: return 1.0 / (-a * s * std::log(s));
    case GFRegime::fractional_excess: {
      const double alpha = c - a - b;
      int s1 = 1, s2 = 1, s3 = 1, s4 = 1, s5 = 1, s6 = 1;
      const double logA = log_abs_gamma(a + b + 1 - c, &s1) + log_abs_gamma(c - a, &s2) +
                          log_abs_gamma(c - b, &s3) - log_abs_gamma(a + 1, &s4) -
                          log_abs_gamma(b, &s5) - log_abs_gamma(alpha, &s6);
      const double A = s1 * s2 * s3 * s4 * s5 * s6 * std::exp(logA);
      return A * std::pow(s, alpha - 1.0);
    }
    case GFRegime::unit_excess: return -b * std::log(s);
  }
  return 0.0;
}

double fit_gf_exponent(const Params& p, const std::vector<double>& s_list, const EngineConfig& cfg) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(s_list.size());
  for (double s : s_list) {
    const double x = std::log(s);
    const double y = std::log(std::abs(ratio_G_over_F(p, Complex(1.0 - s, 0.0), cfg)));
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

CheckReport check_GF_asymptotics(const Params& p, const std::vector<double>& s_list,
                                 const EngineConfig& cfg) {
  p.validate();
  const double a = p.a, b = p.b, c = p.c;
  for (double x : {a, b, c, c - a, c - b}) {
    if (in_minus_N(x)) throw Error(ErrorKind::precondition, "G/F asymptotics need a, b, c, c-a, c-b off 0,-1,-2,...");
  }
  if (s_list.size() < 2) throw Error(ErrorKind::parameter, "need at least two s samples");
  const GFRegime regime = classify_gf_regime(p);
  Worst w;
  std::ostringstream d;
  d.precision(10);
  d << "regime " << static_cast<int>(regime) << ":";
  std::vector<double> dev;
  for (double s : s_list) {
    double ratio = 0.0;
    try {
      ratio = ratio_G_over_F(p, Complex(1.0 - s, 0.0), cfg).real();
    } catch (const Error& e) {
      throw Error(e.kind(), "evaluation failed at s=" + fmt(s) + ": " + e.what());
    }
    const double lead = gf_leading_term(p, regime, s);
    dev.push_back(regime == GFRegime::unit_excess ? ratio - lead : std::abs(ratio / lead - 1.0));
    d << ' ' << dev.back();
  }
  if (regime == GFRegime::unit_excess) {
    double lo = kInf, hi = 0.0;
    for (double v : dev) lo = std::min(lo, std::abs(v)), hi = std::max(hi, std::abs(v));
    w.update(hi - 3.0 * std::max(lo, 1.0), "s list (bounded difference band)");
  } else {
    for (std::size_t i = 1; i < dev.size(); ++i) {
      w.update(dev[i] - dev[i - 1], "s=" + fmt(s_list[i]));
    }
  }
  CheckReport r = make_report("gf-asymptotics", w.value, 0.0, w.where, d.str());
  if (regime != GFRegime::unit_excess) {
    // Monotone decrease is strict.
    for (std::size_t i = 1; i < dev.size(); ++i) r.passed = r.passed && dev[i] < dev[i - 1];
  }
  return r;
}

CheckReport check_ratio_bounds_grid(const RatioGrid& grid, const EngineConfig& cfg) {
  if (grid.n < 2) throw Error(ErrorKind::parameter, "ratio grid needs n >= 2");
  if (grid.a_lo < -1.0 || grid.b_lo < 0.0 || !(grid.c_floor > 0.0)) {
    throw Error(ErrorKind::precondition, "ratio bounds need -1<=a, 0<=b, c>0");
  }
  Worst w;
  int count = 0;
  const int n = grid.n;
  for (int i = 0; i < n; ++i) {
    const double a = grid.a_lo + (grid.a_hi - grid.a_lo) * i / (n - 1);
    for (int j = 0; j < n; ++j) {
      const double b = grid.b_lo + (grid.b_hi - grid.b_lo) * j / (n - 1);
      const double c_lo = std::max({a, b, grid.c_floor});
      for (int k = 0; k < n; ++k) {
        const double c = c_lo + (grid.c_hi - c_lo) * k / (n - 1);
        const Params p{a, b, c};
        double ratio = 0.0;
        try {
          ratio = ratio_G_over_F(p, Complex(-1.0), cfg).real();
        } catch (const Error& e) {
          throw Error(e.kind(), "evaluation failed at " + fmt(p) + ": " + e.what());
        }
        const double lower = c / (b + c), upper = (2 * c - b) / (2 * c);
        w.update(lower - ratio - grid.slack, fmt(p) + " lower");
        w.update(ratio - upper - grid.slack, fmt(p) + " upper");
        ++count;
      }
    }
  }
  return make_report("ratio-bounds", w.value, 0.0, w.where,
                     std::to_string(count) + " grid points, slack " + fmt(grid.slack));
}

Complex neg_rotated_log(double theta) {
  // 1 - e^{i theta} formed without cancellation in its real part.
  const double h = std::sin(theta / 2);
  const Complex one_minus(2 * h * h, -std::sin(theta));
  return -std::polar(1.0, theta) * std::log(one_minus);
}

Complex neg_rotated_log_expansion(double theta) {
  const Complex log_one_minus(std::log(2 * std::sin(theta / 2)), (theta - kPi) / 2);
  return -std::polar(1.0, theta) * log_one_minus;
}

CheckReport check_log_limits(const std::vector<double>& theta_list) {
  if (theta_list.size() < 2) throw Error(ErrorKind::parameter, "need at least two angles");
  for (std::size_t i = 0; i < theta_list.size(); ++i) {
    const double t = theta_list[i];
    if (!(t > 0.0 && t <= kPi / 4 + 1e-15) || (i > 0 && !(t < theta_list[i - 1]))) {
      throw Error(ErrorKind::precondition, "angles must be decreasing in (0, pi/4]");
    }
  }
  Worst w;
  std::ostringstream d;
  d.precision(12);
  std::vector<Complex> vals;
  double worst_identity = 0.0;
  for (double t : theta_list) {
    const Complex v = neg_rotated_log(t);
    const Complex e = neg_rotated_log_expansion(t);
    const double diff = std::abs(v - e);
    worst_identity = std::max(worst_identity, diff);
    w.update(diff - 1e-12 * std::max(1.0, std::abs(v)), "theta=" + fmt(t) + " (expansion)");
    vals.push_back(v);
    d << " theta=" << t << ": Re=" << v.real() << " |Im-pi/2|=" << std::abs(v.imag() - kPi / 2)
      << ';';
  }
  for (std::size_t i = 1; i < vals.size(); ++i) {
    const std::string loc = "theta=" + fmt(theta_list[i]);
    w.update(vals[i - 1].real() - vals[i].real(), loc + " (Re increasing)");
    w.update(std::abs(vals[i].imag() - kPi / 2) - std::abs(vals[i - 1].imag() - kPi / 2),
             loc + " (Im approach)");
  }
  w.update(5.0 - vals.back().real(), "last theta (Re > 5)");
  w.update(std::abs(vals.back().imag() - kPi / 2) - 1e-3, "last theta (|Im-pi/2| < 1e-3)");
  d << " expansion max diff=" << worst_identity;
  return make_report("log-limits", w.value, 0.0, w.where, d.str());
}

Witness find_not_convex_witness(const Params& p, const WitnessOptions& opt,
                                const EngineConfig& cfg) {
  p.validate();
  Witness best;
  best.min_re_w = kInf;
  constexpr double kThreshold = -1e-6;
  for (double r : opt.radii) {
    for (int k = 0; k < opt.n_angles; ++k) {
      const double theta = 2.0 * kPi * k / opt.n_angles;
      const Complex z(r * std::cos(theta), r * std::sin(theta));
      double re = 0.0;
      try {
        re = pre_schwarzian_W_direct(p, z, cfg).real();
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::derivative_zero) throw;
        continue;
      }
      if (re < best.min_re_w) {
        best.min_re_w = re;
        best.z = z;
        best.eps = 1.0 - z;
        best.stage = "grid";
      }
    }
    if (best.min_re_w < kThreshold) break;
  }
  if (best.min_re_w >= kThreshold && opt.boundary_layer && p.zero_balanced() && p.a > 0 &&
      p.b > 0) {
    // Approach z = 1 along a curve with Re(1/eps) = 1 where the logarithmic
    // term of Re W eventually dominates; each point stays strictly inside.
    for (int k = 2; k <= opt.layer_max_exponent; ++k) {
      const double rho = std::pow(10.0, -k);
      const Complex eps(rho * rho, rho * std::sqrt(1.0 - rho * rho));
      const double re = pre_schwarzian_W_near_one(p, eps).real();
      if (re < best.min_re_w) {
        best.min_re_w = re;
        best.eps = eps;
        best.z = 1.0 - eps;
        best.stage = "boundary-layer";
      }
      if (best.min_re_w < kThreshold) break;
    }
  }
  best.found = best.min_re_w < kThreshold;
  return best;
}

CheckReport check_not_convex(const Params& p, const WitnessOptions& opt, const EngineConfig& cfg) {
  p.validate();
  if (!(p.a > 0.0 && p.b > 0.0 && p.zero_balanced())) {
    throw Error(ErrorKind::precondition, "non-convexity check needs a,b>0, c=a+b");
  }
  const Witness w = find_not_convex_witness(p, opt, cfg);
  std::ostringstream d;
  d.precision(12);
  if (!(p.a * p.b < 1.0)) d << "ab>=1, no witness expected; ";
  d << (w.found ? "witness" : "no witness; grid minimum") << " Re W=" << w.min_re_w << " stage="
    << w.stage << " 1-z=" << fmt(w.eps);
  CheckReport r = make_report("not-convex", w.min_re_w, -1e-6, "z=" + fmt(w.z), d.str());
  r.passed = w.found;
  return r;
}

std::string_view to_string(ScanMode m) {
  switch (m) {
    case ScanMode::thm13: return "thm13";
    case ScanMode::thm12: return "thm12";
    case ScanMode::thmA: return "thmA";
  }
  return "unknown";
}

std::vector<double> Range::values() const {
  if (!(step > 0.0) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(ErrorKind::parameter, "range needs finite bounds and a positive step");
  }
  std::vector<double> out;
  if (hi < lo) return out;
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  // Round to 12 significant digits so decimal grids print as written.
  char buf[32];
  for (long i = 0; i <= n; ++i) {
    std::snprintf(buf, sizeof buf, "%.12g", lo + step * i);
    out.push_back(std::strtod(buf, nullptr));
  }
  return out;
}

namespace {

void scan_thm13(ScanRecord& r, const ScanOptions& opt, const EngineConfig& cfg) {
  const Params p{r.a, r.b, r.c};
  r.in_region = has_condition(r.conditions, Condition::thm13_case1) ||
                has_condition(r.conditions, Condition::thm13_case2);
  if (!r.in_region) {
    r.verdict = "out_of_region";
    return;
  }
  if (has_condition(r.conditions, Condition::thm12)) {
    r.kappa = kappa_closed_form(p, cfg);
    r.kappa_source = "closed";
  } else {
    const NumericOrder n = kappa_numeric(p, opt.grid, cfg);
    if (!n.defined) {
      r.verdict = "error";
      r.detail = n.note;
      return;
    }
    r.kappa = n.estimate;
    r.kappa_source = "numeric";
  }
  const CheckReport strip =
      check_strip(p, trace_boundary(p, opt.trace_samples, opt.theta_min, cfg));
  r.detail = strip.details;
  if (*r.kappa < -1e-6) {
    r.verdict = "not_convex";
  } else {
    r.verdict = strip.passed ? "convex" : "strip_fail";
  }
}

void scan_thm12(ScanRecord& r, const ScanOptions& opt, const EngineConfig& cfg) {
  const Params p{r.a, r.b, r.c};
  r.in_region = has_condition(r.conditions, Condition::thm12);
  if (!r.in_region) {
    r.verdict = "out_of_region";
    return;
  }
  r.kappa = kappa_closed_form(p, cfg);
  r.kappa_source = "closed";
  const NumericOrder n = kappa_numeric(p, opt.grid, cfg);
  std::ostringstream d;
  d.precision(12);
  const double numeric = n.extrapolated.value_or(n.estimate);
  d << "kappa_numeric=" << n.estimate << " extrapolated=" << numeric << " monotone=" << n.monotone;
  if (!n.note.empty()) d << " note=" << n.note;
  r.detail = d.str();
  if (!n.defined) {
    r.verdict = "undefined";
  } else {
    r.verdict = std::abs(numeric - *r.kappa) <= 2e-3 * std::max(1.0, std::abs(*r.kappa)) ? "agree" : "disagree";
  }
}

void scan_thmA(ScanRecord& r, const ScanOptions& opt, const EngineConfig& cfg) {
  const Params p{r.a, r.b, r.c};
  r.in_region = has_condition(r.conditions, Condition::thmA_notconvex) && r.a > 0 && r.b > 0;
  if (!r.in_region) {
    r.verdict = "out_of_region";
    return;
  }
  const Witness w = find_not_convex_witness(p, opt.witness, cfg);
  r.kappa = w.min_re_w;
  r.kappa_source = "witness";
  r.detail = "stage=" + w.stage + " z=" + fmt(w.z);
  r.verdict = w.found ? "not_convex" : "no_witness";
}

}  // namespace

std::vector<ScanRecord> scan_region(const Range& a_range, const Range& b_range, ScanMode mode,
                                    const ScanOptions& opt, const EngineConfig& cfg) {
  const std::vector<double> as = a_range.values(), bs = b_range.values();
  std::vector<ScanRecord> out;
  out.reserve(as.size() * bs.size());
  for (double a : as) {
    for (double b : bs) {
      ScanRecord r;
      r.a = a;
      r.b = b;
      r.c = (mode == ScanMode::thm12 && opt.c) ? *opt.c : a + b;
      try {
        Params{r.a, r.b, r.c}.validate();
        r.conditions = conditions_met(Params{r.a, r.b, r.c});
        switch (mode) {
          case ScanMode::thm13: scan_thm13(r, opt, cfg); break;
          case ScanMode::thm12: scan_thm12(r, opt, cfg); break;
          case ScanMode::thmA: scan_thmA(r, opt, cfg); break;
        }
      } catch (const Error& e) {
        r.verdict = "error";
        r.detail = e.what();
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

bool scan_record_failed(const ScanRecord& r, ScanMode mode) {
  if (r.verdict == "error") return true;
  if (!r.in_region) return false;
  switch (mode) {
    case ScanMode::thm13: return r.verdict != "convex";
    case ScanMode::thm12: return r.verdict != "agree";
    case ScanMode::thmA: return r.verdict != "not_convex";
  }
  return true;
}

}  // namespace hypgeo
