#pragma once

#include "hypgeo/check_report.hpp"
#include "hypgeo/hyp2f1.hpp"

namespace hypgeo {

// Quadratics behind the positivity of Im M for the normalized
// pre-Schwarzian factor M = M1/M2 with
//   M1 = (c - 2 + (1-a)(1-b) z)/(1-z),  M2 = 1 + tau z H/G.

struct QSCoefficients {
  double tau = 0.0;  // (a-1) b / c
  double p = 0.0;    // c - 2 + (1-a)(1-b)
  double q = 0.0;    // c - 2 - (1-a)(1-b)

  static QSCoefficients from(const Params& params);
  double c_minus_2() const { return (p + q) / 2; }
  double one_minus_a_one_minus_b() const { return (p - q) / 2; }
};

/// Q(t) = tau (1-a)(1-b) + p (t^2 - tau t).
double eval_Q(const QSCoefficients& k, double t);

/// S(t) = [p - tau(c-2)] Q(t) - [tau(c-2) - p t]^2, from the defining expression.
double eval_S(const QSCoefficients& k, double t);

/// Q at the vertex t = tau/2 from the factored form (tau^2/(4b)) [4(b-1)c - p b].
double Q_vertex_formula(const Params& params);

/// S(0) factored: p tau^2 (2b - c)/b.
double S0_formula(const Params& params);

/// The integrand numerator I(t, x, y) of Im M |M2|^2 |1-z|^2 / y, expanded
/// directly from M1 and M2 for a point mass at t.
double eval_I_direct(const QSCoefficients& k, double t, double x, double y);

/// Same quantity as Q y^2 + Q (x + beta/Q)^2 + S/Q with beta = tau(c-2) - p t.
/// Requires Q(t) != 0.
double eval_I_completed(const QSCoefficients& k, double t, double x, double y);

/// Grid minimum of Q and S over t in [0, 1] (grid_n points) against -1e-12,
/// plus the vertex, Q(0), Q(1), S(0) and S(1) cross-checks. Requires the
/// closed-form kappa hypotheses with a > 1.
CheckReport check_QS_nonneg(const Params& params, int grid_n = 101);

}  // namespace hypgeo
