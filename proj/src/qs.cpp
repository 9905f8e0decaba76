#include "hypgeo/qs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hypgeo/errors.hpp"
#include "hypgeo/geometry.hpp"

namespace hypgeo {

QSCoefficients QSCoefficients::from(const Params& params) {
  const double a = params.a, b = params.b, c = params.c;
  QSCoefficients k;
  k.tau = (a - 1.0) * b / c;
  k.p = c - 2.0 + (1.0 - a) * (1.0 - b);
  k.q = c - 2.0 - (1.0 - a) * (1.0 - b);
  return k;
}

double eval_Q(const QSCoefficients& k, double t) {
  return k.tau * k.one_minus_a_one_minus_b() + k.p * (t * t - k.tau * t);
}

double eval_S(const QSCoefficients& k, double t) {
  const double tc = k.tau * k.c_minus_2();
  const double beta = tc - k.p * t;
  return (k.p - tc) * eval_Q(k, t) - beta * beta;
}

double Q_vertex_formula(const Params& params) {
  const QSCoefficients k = QSCoefficients::from(params);
  const double b = params.b, c = params.c;
  return k.tau * k.tau / (4.0 * b) * (4.0 * (b - 1.0) * c - k.p * b);
}

double S0_formula(const Params& params) {
  const QSCoefficients k = QSCoefficients::from(params);
  return k.p * k.tau * k.tau * (2.0 * params.b - params.c) / params.b;
}

double eval_I_direct(const QSCoefficients& k, double t, double x, double y) {
  const double r2 = x * x + y * y;
  const double ab = k.one_minus_a_one_minus_b();
  return -k.tau * (k.c_minus_2() - ab * r2 - k.q * x) +
         k.p * (1.0 + (t * t - k.tau * t) * r2 + (k.tau - 2.0 * t) * x);
}

double eval_I_completed(const QSCoefficients& k, double t, double x, double y) {
  const double Q = eval_Q(k, t);
  if (Q == 0.0) throw Error(ErrorKind::division_hazard, "Q(t) = 0 in completed-square form");
  const double beta = k.tau * k.c_minus_2() - k.p * t;
  const double shifted = x + beta / Q;
  return Q * y * y + Q * shifted * shifted + eval_S(k, t) / Q;
}

CheckReport check_QS_nonneg(const Params& raw, int grid_n) {
  raw.validate();
  const Params params = canonical(raw);
  if (auto failed = kappa_hypothesis_failure(params)) {
    throw Error(ErrorKind::precondition, "Q/S check needs " + *failed);
  }
  if (!(params.a > 1.0)) throw Error(ErrorKind::precondition, "Q/S check needs 1<a");
  if (grid_n < 2) throw Error(ErrorKind::parameter, "t grid needs at least 2 points");

  constexpr double kTol = 1e-12;
  const QSCoefficients k = QSCoefficients::from(params);
  const double dt = 1.0 / (grid_n - 1);
  double minQ = std::numeric_limits<double>::infinity(), minS = minQ;
  double tQ = 0.0, tS = 0.0;
  for (int i = 0; i < grid_n; ++i) {
    const double t = i * dt;
    const double Q = eval_Q(k, t), S = eval_S(k, t);
    if (Q < minQ) minQ = Q, tQ = t;
    if (S < minS) minS = S, tS = t;
  }

  // Each part is shifted so that <= 0 means satisfied.
  double worst = -std::numeric_limits<double>::infinity();
  std::string where;
  auto part = [&](double v, const std::string& loc) {
    if (v > worst) worst = v, where = loc;
  };
  std::ostringstream d;
  d.precision(12);
  part(-minQ - kTol, "t=" + std::to_string(tQ) + " (Q)");
  part(-minS - kTol, "t=" + std::to_string(tS) + " (S)");
  d << "tau=" << k.tau << " p=" << k.p << " q=" << k.q << " minQ=" << minQ << " minS=" << minS;

  const double b = params.b, c = params.c, a = params.a;
  const double Q0 = eval_Q(k, 0.0), Q1 = eval_Q(k, 1.0);
  part(std::abs(Q0 - k.tau * (1 - a) * (1 - b)) - kTol * std::max(1.0, std::abs(Q0)), "Q(0)");
  part(std::abs(Q1 - (c - 2 + (a - 1) * (2 * b - c) / c)) - kTol * std::max(1.0, std::abs(Q1)),
       "Q(1)");
  const double S1 = eval_S(k, 1.0);
  part(std::abs(S1) - kTol * std::max(1.0, k.p * k.p), "S(1)");
  const double S0 = eval_S(k, 0.0);
  part(std::abs(S0 - S0_formula(params)) - kTol * std::max(1.0, std::abs(S0)), "S(0)");
  const double sgn_expected = (2 * b - c > kTol) ? 1.0 : (2 * b - c < -kTol ? -1.0 : 0.0);
  if (sgn_expected > 0 && !(S0 > 0)) part(-S0, "sign S(0)");
  d << " S(0)=" << S0 << " S(1)=" << S1;

  if (k.tau > 0.0 && k.tau < 2.0) {
    const double vertex = Q_vertex_formula(params);
    const double direct = eval_Q(k, k.tau / 2.0);
    part(std::abs(vertex - direct) - kTol * std::max(1.0, std::abs(direct)), "vertex formula");
    // The grid minimum can exceed the vertex by at most p (dt/2)^2.
    const double slack = k.p * dt * dt / 4.0 + kTol;
    part(std::max(vertex - minQ - kTol, minQ - vertex - slack), "vertex vs grid");
    d << " Q(tau/2)=" << vertex;
  }
  return make_report("qs", worst, 0.0, where, d.str());
}

}  // namespace hypgeo
