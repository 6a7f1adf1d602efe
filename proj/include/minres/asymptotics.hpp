#pragma once

#include "minres/medium.hpp"
#include "minres/pressure.hpp"
#include "minres/problem.hpp"

namespace minres {

/// sqrt((1 + sqrt 5)/2): contact slope of the slow-body envelope, a^4 = a^2 + 1.
double slow_contact_slope();

struct LimitCoefficients {
  int d = 2;
  double b = 0.0;
  double c = 0.0;
  double a = 0.0;
};

/// Moment coefficients of the slow-body expansion p = eps*b + V*c/sqrt(1+u^2). d must be 2 or 3.
LimitCoefficients limit_coefficients(const RadialDensity& density);

double small_V_pressure(Side side, double u, double V, const LimitCoefficients& k);

/// Convex envelope of 1/sqrt(1+u^2): 1 - a^{-5} u up to a, then the curve itself.
double slow_envelope(double u);
double slow_envelope_slope(double u);
/// d = 3 transform of the slow envelope in closed form.
double slow_q(double u);
double slow_Q(double u);

/// Optimal body in the slow limit. The report's R is the reduced resistance lim R/V.
Solution limit_profile_small_V(const LimitCoefficients& k, double h);

/// Optimal body in the fast limit (Newton's problem). The report's R is lim R/V^2 = flux * Newton optimum.
Solution limit_profile_large_V(int d, double h, double flux = 1.0);

}  // namespace minres
