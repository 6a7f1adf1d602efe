#include "minres/asymptotics.hpp"

#include <cmath>

#include "minres/errors.hpp"
#include "minres/numerics.hpp"
#include "minres/qtransform.hpp"

namespace minres {

namespace {

SideProfile slope_side(double h, double slope) {
  if (h <= 0.0) return SideProfile::flat();
  if (h >= slope) return SideProfile::polyline({{0.0, -h}, {1.0, 0.0}});
  double t0 = 1.0 - h / slope;
  return SideProfile::polyline({{0.0, -h}, {t0, -h}, {1.0, 0.0}});
}

double slow_h_map(double u) { return u - slow_Q(u) / slow_q(u); }

double slow_U(double h) {
  const double a = slow_contact_slope();
  if (h <= 0.0) return a;
  double hi = std::max(2.0 * a, 2.0 * h);
  while (slow_h_map(hi) <= h) hi *= 2.0;
  return num::bisect_predicate([&](double u) { return slow_h_map(u) <= h; }, a, hi, 1e-15 * hi, 200);
}

SideProfile slow_side_3d(double h, double U) {
  if (h <= 0.0) return SideProfile::flat();
  const double a = slow_contact_slope();
  const double qU = slow_q(U);
  SideProfile::Arc arc;
  arc.u_lo = a;
  arc.u_hi = U;
  arc.t_of = [qU](double u) { return slow_q(u) / qU; };
  arc.y_of = [qU, h](double u) { return -h + (u * slow_q(u) - slow_Q(u)) / qU; };
  return SideProfile::with_arc(h, slow_q(0.0) / qU, std::move(arc));
}

}  // namespace

double slow_contact_slope() { return std::sqrt(0.5 * (1.0 + std::sqrt(5.0))); }

LimitCoefficients limit_coefficients(const RadialDensity& density) {
  const int d = density.dimension();
  LimitCoefficients k;
  k.d = d;
  k.a = slow_contact_slope();
  if (d == 2) {
    k.b = 0.5 * M_PI * moment(density, 3);
    k.c = 4.0 * moment(density, 2);
  } else if (d == 3) {
    k.b = 2.0 * M_PI / 3.0 * moment(density, 4);
    k.c = 2.0 * M_PI * moment(density, 3);
  } else {
    throw DomainError("the slow-body expansion is available for d = 2 and d = 3 only");
  }
  return k;
}

double small_V_pressure(Side side, double u, double V, const LimitCoefficients& k) {
  return sign_of(side) * k.b + V * k.c / std::sqrt(1.0 + u * u);
}

double slow_envelope(double u) {
  const double a = slow_contact_slope();
  return u <= a ? 1.0 - u / std::pow(a, 5) : 1.0 / std::sqrt(1.0 + u * u);
}

double slow_envelope_slope(double u) {
  const double a = slow_contact_slope();
  return u <= a ? -1.0 / std::pow(a, 5) : -u / std::pow(1.0 + u * u, 1.5);
}

double slow_q(double u) {
  const double a = slow_contact_slope();
  return u <= a ? std::pow(a, 5) : std::pow(1.0 + u * u, 1.5) / u;
}

double slow_Q(double u) {
  if (u < 0.0) throw DomainError("Q evaluated at negative u");
  const double a = slow_contact_slope();
  if (u <= a) return std::pow(a, 5) * u;
  const double s = std::sqrt(1.0 + u * u);
  return s * (4.0 + u * u) / 3.0 + (2.0 + a * a) / 3.0 + std::log((s - 1.0) / u) - std::log((a * a - 1.0) / a);
}

Solution limit_profile_small_V(const LimitCoefficients& k, double h) {
  if (!(h > 0.0)) throw DomainError("height must be positive");
  const double a = slow_contact_slope();
  Solution out;
  SolveReport& rep = out.report;
  BodyProfile& body = out.profile;
  body.dimension = k.d;
  body.h = h;
  rep.landmarks = {a, std::pow(a, -5.0), a, std::pow(a, -5.0), a};
  if (k.d == 2) {
    rep.ball_factor = unit_ball_volume(1);
    if (h < a) {
      rep.kind = SolutionKind::Trapezium;
      rep.h_plus = h;
    } else if (h == a) {
      rep.kind = SolutionKind::IsoscelesTriangle;
      rep.h_plus = h;
    } else if (h < 2.0 * a) {
      rep.kind = SolutionKind::TriangleTrapezium;
      rep.h_plus = a;
    } else {
      rep.kind = SolutionKind::TwoTriangles;
      rep.h_plus = 0.5 * h;
    }
    rep.h_minus = h - rep.h_plus;
    body.front = slope_side(rep.h_plus, a);
    body.rear = slope_side(rep.h_minus, a);
    rep.R = 2.0 * k.c * slow_envelope(0.5 * h);
  } else if (k.d == 3) {
    rep.ball_factor = unit_ball_volume(2);
    rep.kind = SolutionKind::SecondKind;
    rep.h_star = 0.0;
    rep.h_plus = 0.5 * h;
    rep.h_minus = h - rep.h_plus;
    const double U = slow_U(rep.h_plus);
    rep.U_plus = rep.U_minus = U;
    body.front = slow_side_3d(rep.h_plus, U);
    body.rear = slow_side_3d(rep.h_minus, U);
    const double qU = slow_q(U);
    rep.R = 2.0 * k.c * (slow_envelope(U) + slow_Q(U) / (qU * qU));
  } else {
    throw DomainError("the slow-body limit is available for d = 2 and d = 3 only");
  }
  body.h_plus = rep.h_plus;
  body.h_minus = rep.h_minus;
  body.kind = rep.kind;
  return out;
}

Solution limit_profile_large_V(int d, double h, double flux) {
  if (d < 2) throw DomainError("dimension must be at least 2");
  if (!(h > 0.0)) throw DomainError("height must be positive");
  Solution out;
  SolveReport& rep = out.report;
  BodyProfile& body = out.profile;
  body.dimension = d;
  body.h = body.h_plus = rep.h_plus = h;
  rep.ball_factor = unit_ball_volume(d - 1);
  if (d == 2) {
    rep.kind = h < 1.0 ? SolutionKind::Trapezium : SolutionKind::IsoscelesTriangle;
    rep.landmarks = {1.0, 0.5, 0.0, 0.0, std::numeric_limits<double>::infinity()};
    body.front = slope_side(h, 1.0);
    rep.R = flux * (h <= 1.0 ? 1.0 - 0.5 * h : 1.0 / (1.0 + h * h));
  } else {
    auto env = std::make_shared<EnvelopeAnalysis>(std::make_shared<FunctionCurve>(newton_curve()));
    auto qt = std::make_shared<QTransform>(env, d);
    rep.kind = SolutionKind::FirstKind;
    rep.landmarks = {env->origin_contact(), env->origin_slope(), 0.0, 0.0, std::numeric_limits<double>::infinity()};
    rep.h_star = std::numeric_limits<double>::infinity();
    rep.U_plus = qt->solve_U(h);
    body.front = build_profile_nd(qt, h, rep.U_plus);
    rep.R = flux * qt->r_map(rep.U_plus);
  }
  body.kind = rep.kind;
  return out;
}

}  // namespace minres
