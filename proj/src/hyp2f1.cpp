#include "hypgeo/hyp2f1.hpp"

#include <cmath>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <string>

#include "hypgeo/errors.hpp"
#include "hypgeo/special_fn.hpp"

namespace hypgeo {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kDiscSlack = 1e-12;

std::string describe(const Params& p) {
  std::ostringstream os;
  os.precision(17);
  os << "(a=" << p.a << ", b=" << p.b << ", c=" << p.c << ")";
  return os.str();
}

std::string describe(Complex z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

// Gamma(num...) / Gamma(den...). Zero when a denominator sits on a pole.
double gamma_ratio(std::initializer_list<double> num, std::initializer_list<double> den) {
  for (double d : den) {
    if (is_nonpositive_integer(d)) return 0.0;
  }
  double log_sum = 0.0;
  int sign = 1;
  for (double n : num) {
    int s = 1;
    log_sum += log_abs_gamma(n, &s);
    sign *= s;
  }
  for (double d : den) {
    int s = 1;
    log_sum -= log_abs_gamma(d, &s);
    sign *= s;
  }
  return sign * std::exp(log_sum);
}

struct Sum {
  Complex value;
  double err = 0.0;
};

// Defining series with the three-small-terms stopping rule.
Sum maclaurin(double a, double b, double c, Complex z, double tol, std::size_t max_terms) {
  Complex term = 1.0;
  Complex sum = 1.0;
  double abs_sum = 1.0;
  int small = 0;
  for (std::size_t n = 0; n < max_terms; ++n) {
    const double dn = static_cast<double>(n);
    const double coef = (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0));
    term *= coef * z;
    if (term == Complex(0.0)) {
      // Polynomial case: every later term vanishes as well.
      return {sum, 4.0 * kEps * abs_sum};
    }
    sum += term;
    abs_sum += std::abs(term);
    if (std::abs(term) <= tol * std::abs(sum)) {
      if (++small == 3) {
        const double next = std::abs((a + dn + 1) * (b + dn + 1) / ((c + dn + 1) * (dn + 2))) *
                            std::abs(z);
        const double q = std::max(next, std::abs(z));
        const double tail = q < 1.0 ? std::abs(term) * q / (1.0 - q)
                                    : std::abs(term) * static_cast<double>(n + 1);
        return {sum, tail + 4.0 * kEps * abs_sum};
      }
    } else {
      small = 0;
    }
  }
  std::ostringstream os;
  os << "series did not converge within " << max_terms << " terms at z=" << describe(z)
     << " for " << describe(Params{a, b, c});
  throw Error(ErrorKind::non_convergence, os.str());
}

// Expansion about z = 1 for non-integer c - a - b (connection formula in 1 - z).
Sum connection_one_minus_z(const Params& p, Complex eps, const EngineConfig& cfg) {
  const double a = p.a, b = p.b, c = p.c, g = p.gap();
  const double A1 = gamma_ratio({c, g}, {c - a, c - b});
  const double A2 = gamma_ratio({c, -g}, {a, b});
  Sum out{0.0, 0.0};
  double scale = 0.0;
  if (A1 != 0.0) {
    const Sum s = maclaurin(a, b, 1.0 - g, eps, cfg.tol, cfg.max_terms);
    out.value += A1 * s.value;
    out.err += std::abs(A1) * s.err;
    scale += std::abs(A1 * s.value);
  }
  if (A2 != 0.0) {
    const Sum s = maclaurin(c - a, c - b, 1.0 + g, eps, cfg.tol, cfg.max_terms);
    const Complex pw = std::pow(eps, g);
    out.value += A2 * pw * s.value;
    out.err += std::abs(A2 * pw) * s.err;
    scale += std::abs(A2 * pw * s.value);
  }
  // Cancellation between the two pieces loses digits in proportion to their size.
  out.err += 8.0 * kEps * scale;
  return out;
}

// Expansion about z = 1 when c = a + b + m for an integer m, where the two
// pieces of the connection formula merge into a logarithmic series.
Sum log_connection(const Params& p, int m, Complex eps, const EngineConfig& cfg) {
  const double a = p.a, b = p.b, c = p.c;
  const int k = std::abs(m);
  const Complex log_eps = std::log(eps);
  Sum out{0.0, 0.0};
  double scale = 0.0;

  // Finite part (absent for m = 0).
  if (k > 0) {
    const double shift_a = m > 0 ? a : a - k;
    const double shift_b = m > 0 ? b : b - k;
    const double pref = m > 0 ? gamma_ratio({static_cast<double>(k), c}, {a + k, b + k})
                              : gamma_ratio({static_cast<double>(k), c}, {a, b});
    if (pref != 0.0) {
      Complex finite = 0.0;
      Complex term = 1.0;
      for (int n = 0; n < k; ++n) {
        finite += term;
        term *= (shift_a + n) * (shift_b + n) / ((n + 1.0) * (1.0 - k + n)) * eps;
      }
      Complex piece = pref * finite;
      if (m < 0) piece *= std::pow(eps, -static_cast<double>(k));
      out.value += piece;
      scale += std::abs(piece);
    }
  }

  // Logarithmic series.
  const double big_a = m >= 0 ? a + k : a;
  const double big_b = m >= 0 ? b + k : b;
  const double sign = (k % 2 == 0) ? -1.0 : 1.0;  // -(-1)^k
  const double pref = m >= 0 ? sign * gamma_ratio({c}, {a, b})
                             : sign * gamma_ratio({c}, {a - k, b - k});
  if (pref != 0.0) {
    double coef = 1.0;
    for (int j = 2; j <= k; ++j) coef /= j;  // 1/k!
    double psi_n1 = -kEulerGamma;                 // psi(n+1)
    double psi_nk1 = -kEulerGamma;                // psi(n+k+1)
    for (int j = 1; j <= k; ++j) psi_nk1 += 1.0 / j;
    double psi_a = digamma_real(big_a);           // psi(A+n)
    double psi_b = digamma_real(big_b);           // psi(B+n)
    Complex power = 1.0;
    Complex series = 0.0;
    double abs_series = 0.0;
    int small = 0;
    std::size_t n = 0;
    for (; n < cfg.max_terms; ++n) {
      const Complex term = coef * power * (log_eps - psi_n1 - psi_nk1 + psi_a + psi_b);
      series += term;
      abs_series += std::abs(term);
      if (std::abs(term) <= cfg.tol * std::abs(series)) {
        if (++small == 3) break;
      } else {
        small = 0;
      }
      const double dn = static_cast<double>(n);
      coef *= (big_a + dn) * (big_b + dn) / ((dn + 1.0) * (dn + k + 1.0));
      power *= eps;
      psi_n1 += 1.0 / (dn + 1.0);
      psi_nk1 += 1.0 / (dn + k + 1.0);
      psi_a += 1.0 / (big_a + dn);
      psi_b += 1.0 / (big_b + dn);
      if (coef == 0.0) break;
    }
    if (n == cfg.max_terms) {
      throw Error(ErrorKind::non_convergence,
                  "logarithmic connection series did not converge for " + describe(p));
    }
    Complex piece = pref * series;
    if (m > 0) piece *= std::pow(eps, static_cast<double>(k));
    out.value += piece;
    const double mag = std::abs(pref) * (m > 0 ? std::pow(std::abs(eps), k) : 1.0);
    out.err += mag * (4.0 * kEps * abs_series);
    scale += std::abs(piece);
  }
  out.err += 8.0 * kEps * scale;
  return out;
}

Sum near_one(const Params& p, Complex eps, const EngineConfig& cfg, Method* method) {
  const double g = p.gap();
  const double m = std::round(g);
  if (std::abs(g - m) <= cfg.integer_tol) {
    *method = Method::log_connection;
    return log_connection(p, static_cast<int>(m), eps, cfg);
  }
  *method = Method::connection_1mz;
  return connection_one_minus_z(p, eps, cfg);
}

Sum eval_disc(const Params& p, Complex z, const EngineConfig& cfg, Method* method);

Sum euler(const Params& p, Complex z, const EngineConfig& cfg, bool dispatch_inner) {
  const Complex w = z / (z - 1.0);
  const Complex factor = std::pow(1.0 - z, -p.b);
  const Params inner{p.b, p.c - p.a, p.c};
  Sum s;
  if (dispatch_inner) {
    Method ignored;
    s = eval_disc(inner, w, cfg, &ignored);
  } else {
    s = maclaurin(inner.a, inner.b, inner.c, w, cfg.tol, cfg.max_terms);
  }
  return {factor * s.value, std::abs(factor) * s.err};
}

// Analytic continuation by re-expanding about z0 = r0 z/|z| (inside the
// Maclaurin disc) and summing the Taylor series generated by the
// hypergeometric differential equation.
Sum taylor_recentre(const Params& p, Complex z, const EngineConfig& cfg) {
  const double a = p.a, b = p.b, c = p.c;
  const Complex z0 = cfg.series_radius * z / std::abs(z);
  const Complex h = z - z0;
  if (!(std::abs(h) < std::min(std::abs(z0), std::abs(1.0 - z0)))) {
    throw Error(ErrorKind::domain, "taylor re-expansion does not converge at z=" + describe(z));
  }
  const Sum f0 = maclaurin(a, b, c, z0, cfg.tol, cfg.max_terms);
  const Sum f1 = maclaurin(a + 1, b + 1, c + 1, z0, cfg.tol, cfg.max_terms);
  const double dscale = a * b / c;

  const Complex A0 = z0 * (1.0 - z0);
  const Complex A1 = 1.0 - 2.0 * z0;
  const Complex B0 = c - (a + b + 1.0) * z0;

  Complex d_prev = f0.value;             // c_k h^k
  Complex d_curr = dscale * f1.value * h;  // c_{k+1} h^{k+1}
  Complex sum = d_prev + d_curr;
  double abs_sum = std::abs(d_prev) + std::abs(d_curr);
  int small = 0;
  std::size_t k = 0;
  for (; k < cfg.max_terms; ++k) {
    const double dk = static_cast<double>(k);
    const Complex next = -((A1 * dk * (dk + 1.0) + B0 * (dk + 1.0)) * h * d_curr -
                           (dk + a) * (dk + b) * h * h * d_prev) /
                         (A0 * (dk + 1.0) * (dk + 2.0));
    sum += next;
    abs_sum += std::abs(next);
    d_prev = d_curr;
    d_curr = next;
    if (std::abs(next) <= cfg.tol * std::abs(sum)) {
      if (++small == 3) break;
    } else {
      small = 0;
    }
  }
  if (k == cfg.max_terms) {
    throw Error(ErrorKind::non_convergence, "taylor re-expansion did not converge at z=" +
                                                describe(z) + " for " + describe(p));
  }
  // Errors in the initial data propagate roughly in proportion to the sum.
  const double rel0 = (f0.err / std::max(std::abs(f0.value), 1e-300)) +
                      (f1.err / std::max(std::abs(f1.value), 1e-300));
  return {sum, rel0 * std::abs(sum) + 8.0 * kEps * abs_sum};
}

Params snapped(const Params& p) {
  Params q = p;
  if (std::abs(q.a - std::round(q.a)) <= 1e-12 && std::round(q.a) <= 0) q.a = std::round(q.a);
  if (std::abs(q.b - std::round(q.b)) <= 1e-12 && std::round(q.b) <= 0) q.b = std::round(q.b);
  return q;
}

void require_disc(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(ErrorKind::domain, "argument is not finite");
  }
  if (std::abs(z) > 1.0 + kDiscSlack) {
    throw Error(ErrorKind::domain, "z=" + describe(z) + " lies outside the closed unit disc");
  }
}

Sum eval_disc(const Params& raw, Complex z, const EngineConfig& cfg, Method* method) {
  const Params p = snapped(raw);
  if (p.polynomial()) {
    *method = Method::maclaurin;
    return maclaurin(p.a, p.b, p.c, z, cfg.tol, cfg.max_terms);
  }
  if (z == Complex(0.0)) {
    *method = Method::maclaurin;
    return {1.0, 0.0};
  }
  const Complex eps = 1.0 - z;
  if (eps == Complex(0.0)) {
    const double g = p.gap();
    if (g <= cfg.integer_tol) {
      throw Error(ErrorKind::singularity, "singular point z=1 for c-a-b<=0");
    }
    *method = Method::connection_1mz;
    const double v = gamma_ratio({p.c, g}, {p.c - p.a, p.c - p.b});
    return {v, 8.0 * kEps * std::abs(v)};
  }
  if (std::abs(z) <= cfg.series_radius) {
    *method = Method::maclaurin;
    return maclaurin(p.a, p.b, p.c, z, cfg.tol, cfg.max_terms);
  }
  if (std::abs(eps) < cfg.connection_radius) {
    return near_one(p, eps, cfg, method);
  }
  if (std::abs(z) <= cfg.euler_radius * std::abs(eps)) {
    *method = Method::euler_transform;
    return euler(p, z, cfg, true);
  }
  *method = Method::taylor_recentre;
  return taylor_recentre(p, z, cfg);
}

EvalResult finish(const Sum& s, Method m) { return {s.value, s.err, m}; }

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::maclaurin: return "maclaurin";
    case Method::euler_transform: return "euler_transform";
    case Method::connection_1mz: return "connection_1mz";
    case Method::log_connection: return "log_connection";
    case Method::t1_large_arg: return "t1_large_arg";
    case Method::taylor_recentre: return "taylor_recentre";
  }
  return "unknown";
}

void Params::validate() const {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) {
    throw Error(ErrorKind::parameter, "parameters must be finite: " + describe(*this));
  }
  if (std::round(c) <= 0 && std::abs(c - std::round(c)) <= 1e-14) {
    throw Error(ErrorKind::parameter,
                "c must not be zero or a negative integer: " + describe(*this));
  }
}

bool Params::zero_balanced(double tol) const { return std::abs(gap()) <= tol; }

bool Params::log_case(double tol) const {
  return std::abs(gap() - std::round(gap())) <= tol;
}

bool Params::polynomial() const {
  auto np = [](double x) {
    return std::round(x) <= 0 && std::abs(x - std::round(x)) <= 1e-12;
  };
  return np(a) || np(b);
}

EvalResult gauss_series(const Params& p, Complex z, double tol, std::size_t max_terms) {
  p.validate();
  const Params q = snapped(p);
  const double r = std::abs(z);
  if (!q.polynomial() && !(r < 1.0 || (r <= 1.0 + kDiscSlack && q.gap() > 0.0))) {
    throw Error(ErrorKind::domain, "defining series diverges at z=" + describe(z));
  }
  return finish(maclaurin(q.a, q.b, q.c, z, tol, max_terms), Method::maclaurin);
}

EvalResult hyp2f1(const Params& p, Complex z, const EngineConfig& cfg) {
  p.validate();
  require_disc(z);
  Method m = Method::maclaurin;
  const Sum s = eval_disc(p, z, cfg, &m);
  return finish(s, m);
}

EvalResult hyp2f1_via(Method method, const Params& raw, Complex z, const EngineConfig& cfg) {
  raw.validate();
  const Params p = snapped(raw);
  switch (method) {
    case Method::maclaurin:
      return gauss_series(p, z, cfg.tol, cfg.max_terms);
    case Method::euler_transform: {
      if (!(std::abs(z) < std::abs(1.0 - z))) {
        throw Error(ErrorKind::domain, "Euler transform does not converge at z=" + describe(z));
      }
      return finish(euler(p, z, cfg, false), method);
    }
    case Method::connection_1mz:
    case Method::log_connection: {
      const Complex eps = 1.0 - z;
      if (!(std::abs(eps) < 1.0) || eps == Complex(0.0)) {
        throw Error(ErrorKind::domain, "expansion about z=1 does not converge at z=" + describe(z));
      }
      const bool integral = p.log_case(cfg.integer_tol);
      if (integral != (method == Method::log_connection)) {
        throw Error(ErrorKind::domain, std::string(to_string(method)) +
                                           " does not apply to c-a-b=" + std::to_string(p.gap()));
      }
      Method used = method;
      const Sum s = near_one(p, eps, cfg, &used);
      return finish(s, used);
    }
    case Method::t1_large_arg: {
      if (std::abs(z.imag()) > 0.0 || !(z.real() <= -1.0)) {
        throw Error(ErrorKind::domain, "t1_large_arg needs real z <= -1");
      }
      EngineConfig forced = cfg;
      forced.integer_tol = 0.0;
      return hyp2f1_neg_real_large(p, -z.real(), forced);
    }
    case Method::taylor_recentre:
      require_disc(z);
      if (z == Complex(0.0)) return {1.0, 0.0, method};
      return finish(taylor_recentre(p, z, cfg), method);
  }
  throw Error(ErrorKind::domain, "unknown method");
}

EvalResult hyp2f1_neg_real_large(const Params& raw, double x, const EngineConfig& cfg) {
  raw.validate();
  if (!(x >= 2.0) || !std::isfinite(x)) {
    throw Error(ErrorKind::domain, "hyp2f1_neg_real_large needs x >= 2, got " + std::to_string(x));
  }
  const Params p = snapped(raw);
  const double a = p.a, b = p.b, c = p.c;
  if (p.polynomial()) {
    return finish(maclaurin(a, b, c, Complex(-x), cfg.tol, cfg.max_terms), Method::maclaurin);
  }
  const double diff = b - a;
  if (std::abs(diff - std::round(diff)) <= cfg.integer_tol) {
    // Degenerate 1/z connection: go through z/(z-1) = x/(1+x) instead.
    const double w = x / (1.0 + x);
    const double factor = std::pow(1.0 + x, -b);
    const Params inner = snapped(Params{b, c - a, c});
    if (inner.polynomial()) {
      // c - a in -N: (1+x)^{c-a-b} F(c-a, c-b; c; -x) is a finite sum with no
      // cancellation against 1 - w.
      const double pre = std::pow(1.0 + x, c - a - b);
      const Sum s = maclaurin(inner.b, c - b, c, Complex(-x), cfg.tol, cfg.max_terms);
      return {Complex(pre * s.value.real(), 0.0), pre * s.err, Method::euler_transform};
    }
    const double eps = 1.0 / (1.0 + x);  // 1 - w without the rounding of w
    Method ignored;
    const Sum s = eps < cfg.connection_radius
                      ? near_one(inner, Complex(eps), cfg, &ignored)
                      : eval_disc(inner, Complex(w), cfg, &ignored);
    return {Complex(factor * s.value.real(), 0.0), factor * s.err, Method::euler_transform};
  }
  const double inv = -1.0 / x;
  const double A1 = gamma_ratio({c, b - a}, {b, c - a});
  const double A2 = gamma_ratio({c, a - b}, {a, c - b});
  double value = 0.0, err = 0.0, scale = 0.0;
  if (A1 != 0.0) {
    const Sum s = maclaurin(a, 1.0 - c + a, 1.0 - b + a, Complex(inv), cfg.tol, cfg.max_terms);
    const double pre = A1 * std::pow(x, -a);
    value += pre * s.value.real();
    err += std::abs(pre) * s.err;
    scale += std::abs(pre * s.value.real());
  }
  if (A2 != 0.0) {
    const Sum s = maclaurin(b, 1.0 - c + b, 1.0 - a + b, Complex(inv), cfg.tol, cfg.max_terms);
    const double pre = A2 * std::pow(x, -b);
    value += pre * s.value.real();
    err += std::abs(pre) * s.err;
    scale += std::abs(pre * s.value.real());
  }
  return {Complex(value, 0.0), err + 8.0 * kEps * scale, Method::t1_large_arg};
}

EvalResult hyp2f1_continued(const Params& p, Complex z, const EngineConfig& cfg) {
  p.validate();
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(ErrorKind::domain, "argument is not finite");
  }
  if (std::abs(z) <= 1.0 + kDiscSlack) return hyp2f1(p, z, cfg);
  if (z.imag() == 0.0 && z.real() < 0.0) {
    const double x = -z.real();
    if (x >= 2.0) return hyp2f1_neg_real_large(p, x, cfg);
  }
  if (z.real() < 0.5) {
    const Params q = snapped(p);
    if (q.polynomial()) {
      return finish(maclaurin(q.a, q.b, q.c, z, cfg.tol, cfg.max_terms), Method::maclaurin);
    }
    return finish(euler(q, z, cfg, true), Method::euler_transform);
  }
  throw Error(ErrorKind::domain,
              "z=" + describe(z) + " is outside the closed disc and the half plane Re z < 1/2");
}

EvalResult hyp2f1_derivative(const Params& p, Complex z, const EngineConfig& cfg) {
  p.validate();
  const double scale = p.a * p.b / p.c;
  if (scale == 0.0) return {0.0, 0.0, Method::maclaurin};
  EvalResult r = hyp2f1_continued(Params{p.a + 1, p.b + 1, p.c + 1}, z, cfg);
  r.value *= scale;
  r.abs_err_est *= std::abs(scale);
  return r;
}

namespace {

// 1e-14, shrunk outside the disc by the |z|^{-min(a,b)} decay that F has
// towards infinity, so large negative arguments are not mistaken for zeros.
double hazard_floor(const Params& p, Complex z) {
  const double r = std::abs(z);
  const double decay = std::min(p.a, p.b);
  return r > 1.0 && decay > 0.0 ? 1e-14 * std::pow(r, -decay) : 1e-14;
}

}  // namespace

Complex ratio_G_over_F(const Params& p, Complex z, const EngineConfig& cfg) {
  p.validate();
  const Complex F = hyp2f1_continued(p, z, cfg).value;
  if (std::abs(F) < hazard_floor(p, z)) {
    throw Error(ErrorKind::division_hazard, "|F| below hazard floor at z=" + describe(z) + " for " +
                                                describe(p));
  }
  const Complex G = hyp2f1_continued(Params{p.a + 1, p.b, p.c}, z, cfg).value;
  const Complex H = hyp2f1_continued(Params{p.a + 1, p.b + 1, p.c + 1}, z, cfg).value;
  const Complex direct = G / F;
  // z F' = a (G - F) with F' = (ab/c) H.
  const Complex via = 1.0 + (p.b / p.c) * z * H / F;
  const double diff = std::abs(direct - via);
  if (diff > 1e-8 * std::max(std::abs(direct), std::abs(via))) {
    std::ostringstream os;
    os.precision(17);
    os << "G/F routes disagree at z=" << describe(z) << " for " << describe(p)
       << ": direct=" << describe(direct) << " transformed=" << describe(via);
    throw Error(ErrorKind::inconsistency, os.str());
  }
  return direct;
}

Complex ratio_H_over_G(const Params& p, Complex z, const EngineConfig& cfg) {
  p.validate();
  const Params g{p.a + 1, p.b, p.c};
  const Complex G = hyp2f1_continued(g, z, cfg).value;
  if (std::abs(G) < hazard_floor(g, z)) {
    throw Error(ErrorKind::division_hazard, "|G| below hazard floor at z=" + describe(z) + " for " +
                                                describe(p));
  }
  const Complex H = hyp2f1_continued(Params{p.a + 1, p.b + 1, p.c + 1}, z, cfg).value;
  return H / G;
}

}  // namespace hypgeo
