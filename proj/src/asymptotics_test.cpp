#include <cmath>
#include <memory>
#include <numbers>

#include "doctest.h"
#include "minres/asymptotics.hpp"
#include "minres/errors.hpp"
#include "minres/numerics.hpp"
#include "minres/problem.hpp"
#include "minres/qtransform.hpp"

using namespace minres;
using doctest::Approx;

namespace {

double sup_distance(const SideProfile& a, const SideProfile& b) {
  double worst = 0.0;
  for (int i = 0; i <= 400; ++i) {
    double t = i / 400.0;
    worst = std::max(worst, std::abs(a(t) - b(t)));
  }
  return worst;
}

}  // namespace

TEST_SUITE("asymptotics") {
  TEST_CASE("contact slope of the slow envelope") {
    const double a = slow_contact_slope();
    CHECK(std::abs(std::pow(a, 4) - a * a - 1.0) < 1e-15);
    CHECK(a == Approx(1.2720).epsilon(1e-4));
    CHECK(std::atan(a) * 180.0 / std::numbers::pi == Approx(51.83).epsilon(0.05 / 51.83));
    auto p = inverse_hypot_curve();
    CHECK(std::abs(slow_envelope(a) - p.value(a)) < 1e-15);
    CHECK(std::abs(slow_envelope_slope(a) - p.slope(a)) < 1e-12);
    for (double u : {0.0, 0.5, 1.0, 2.0, 5.0}) CHECK(slow_envelope(u) <= p.value(u) + 1e-15);
  }

  TEST_CASE("moment coefficients") {
    auto k2 = limit_coefficients(RadialDensity::gaussian(2));
    CHECK(k2.b == Approx(0.5).epsilon(1e-12));
    CHECK(k2.c == Approx(std::sqrt(2.0 / std::numbers::pi)).epsilon(1e-12));
    auto k3 = limit_coefficients(RadialDensity::gaussian(3));
    const double norm = std::pow(2 * std::numbers::pi, -1.5);
    CHECK(k3.b == Approx(2 * std::numbers::pi / 3 * norm * 3 * std::sqrt(std::numbers::pi / 2)).epsilon(1e-12));
    CHECK(k3.c == Approx(2 * std::numbers::pi * norm * 2.0).epsilon(1e-12));
    CHECK(k3.b > 0.0);
    CHECK(k3.c > 0.0);

    const double alpha = 3.0, beta = 1.7;
    auto g = RadialDensity::gaussian(2);
    auto scaled = limit_coefficients(RadialDensity::mixture(2, {RadialDensity::term(alpha, beta, g)}));
    CHECK(scaled.b == Approx(alpha / std::pow(beta, 4) * k2.b).epsilon(1e-10));
    CHECK(scaled.c == Approx(alpha / std::pow(beta, 3) * k2.c).epsilon(1e-10));
    CHECK_THROWS_AS(limit_coefficients(RadialDensity::gaussian(4)), DomainError);
  }

  TEST_CASE("two-term expansion converges at least linearly") {
    for (int d : {2, 3}) {
      auto k = limit_coefficients(RadialDensity::gaussian(d));
      for (double u : {0.0, 1.0, 3.0}) {
        for (Side side : {Side::Front, Side::Rear}) {
          // The residual is s^2/2 + eps*phi(0) s^3/3 with s = V/sqrt(1+u^2): the order tends to 1
          // from above on the front and from below on the rear.
          double prev = -1.0, prev_gap = 1.0;
          for (double V : {0.2, 0.1, 0.05, 0.025}) {
            double p = d == 2 ? gaussian_pressure_2d(side, u, V) : gaussian_pressure_3d(side, u, V);
            double err = std::abs(p - small_V_pressure(side, u, V, k)) / V;
            if (prev > 0.0) {
              double order = std::log2(prev / err);
              CHECK(order > 0.95);
              if (side == Side::Front) CHECK(order >= 1.0);
              CHECK(std::abs(order - 1.0) < prev_gap);
              prev_gap = std::abs(order - 1.0);
            }
            prev = err;
          }
        }
        double V = 0.01;
        double sum = d == 2 ? gaussian_pressure_2d(Side::Front, u, V) + gaussian_pressure_2d(Side::Rear, u, V)
                            : gaussian_pressure_3d(Side::Front, u, V) + gaussian_pressure_3d(Side::Rear, u, V);
        CHECK(sum / V == Approx(2 * k.c / std::sqrt(1 + u * u)).epsilon(1e-2));
      }
      CHECK(small_V_pressure(Side::Rear, 0.0, 0.1, k) == Approx(-k.b + 0.1 * k.c));
    }
  }

  TEST_CASE("closed-form transform of the slow envelope") {
    const double a = slow_contact_slope();
    for (double u : {0.3, a, 1.5, 3.0, 10.0}) {
      double numeric = num::integrate([](double x) { return slow_q(x); }, 0.0, a) +
                       (u > a ? num::integrate([](double x) { return slow_q(x); }, a, u) : 0.0);
      if (u < a) numeric = slow_q(0.0) * u;
      CHECK(slow_Q(u) == Approx(numeric).epsilon(1e-9));
    }
    auto qt = QTransform(std::make_shared<EnvelopeAnalysis>(std::make_shared<FunctionCurve>(inverse_hypot_curve())), 3);
    for (double u : {0.5, 2.0, 6.0}) {
      CHECK(qt.q(u) == Approx(slow_q(u)).epsilon(1e-8));
      CHECK(qt.Q(u) == Approx(slow_Q(u)).epsilon(1e-8));
    }
    // U for h = 1 from both routes.
    auto k = limit_coefficients(RadialDensity::gaussian(3));
    auto lim = limit_profile_small_V(k, 2.0);
    CHECK(lim.report.U_plus == Approx(qt.solve_U(1.0)).epsilon(1e-8));
  }

  TEST_CASE("planar slow limit kinds") {
    auto k = limit_coefficients(RadialDensity::gaussian(2));
    const double a = slow_contact_slope();
    auto t = limit_profile_small_V(k, 0.5);
    CHECK(t.report.kind == SolutionKind::Trapezium);
    CHECK(t.profile.front.slope(0.99) == Approx(a));
    CHECK(limit_profile_small_V(k, a).report.kind == SolutionKind::IsoscelesTriangle);
    // 1.27 lies just below a = 1.27202.
    CHECK(limit_profile_small_V(k, 1.27).report.kind == SolutionKind::Trapezium);
    CHECK(limit_profile_small_V(k, 2.0).report.kind == SolutionKind::TriangleTrapezium);
    auto r = limit_profile_small_V(k, 3.0);
    CHECK(r.report.kind == SolutionKind::TwoTriangles);
    CHECK(r.report.h_plus == Approx(1.5));
    CHECK(r.report.h_minus == Approx(1.5));
    CHECK(r.profile.front.slope(0.5) == Approx(1.5));
    for (double h : {0.5, 2.0, 3.0}) {
      auto s = limit_profile_small_V(k, h);
      CHECK(s.report.R == Approx(2 * k.c * slow_envelope(h / 2)));
      CHECK(s.report.h_plus + s.report.h_minus == Approx(h));
    }
    CHECK_THROWS_AS(limit_profile_small_V(k, 0.0), DomainError);
  }

  TEST_CASE("slow solutions approach the limit") {
    for (int d : {2, 3}) {
      auto k = limit_coefficients(RadialDensity::gaussian(d));
      const double V = 0.005;
      FlowProblem pb(FlowContext(RadialDensity::gaussian(d), V));
      for (double h : {0.5, 3.0}) {
        auto lim = limit_profile_small_V(k, h);
        auto s = solve(pb, h);
        CHECK(s.report.R / V == Approx(lim.report.R).epsilon(1e-3));
        if (d == 3) {
          CHECK(s.report.kind == SolutionKind::SecondKind);
          CHECK(sup_distance(s.profile.front, lim.profile.front) < 0.02);
          CHECK(sup_distance(s.profile.rear, lim.profile.rear) < 0.02);
        }
      }
    }
  }

  TEST_CASE("slow thresholds drift linearly towards (a, a, 2a)") {
    const double a = slow_contact_slope();
    double prev = 0.0;
    for (double V : {0.02, 0.01, 0.005}) {
      FlowProblem pb(FlowContext(RadialDensity::gaussian(2), V));
      double err = pb.landmarks().u_star / a - 1.0;
      CHECK(err > 0.0);
      if (prev > 0.0) CHECK(err / prev == Approx(0.5).epsilon(0.05));
      prev = err;
    }
  }

  TEST_CASE("fast limit in the plane") {
    auto t = limit_profile_large_V(2, 0.5);
    CHECK(t.report.kind == SolutionKind::Trapezium);
    CHECK(t.profile.front.knots()[1].t == Approx(0.5));
    CHECK(t.profile.front.slope(0.9) == Approx(1.0));
    CHECK(t.report.R == Approx(0.75));
    auto tri = limit_profile_large_V(2, 2.0);
    CHECK(tri.report.kind == SolutionKind::IsoscelesTriangle);
    CHECK(tri.report.R == Approx(0.2));
    CHECK(limit_profile_large_V(2, 2.0, 3.0).report.R == Approx(0.6));
    FlowProblem pb(FlowContext(RadialDensity::gaussian(2), 50.0));
    CHECK(pb.landmarks().u_plus0 == Approx(1.0).epsilon(0.02));
  }

  TEST_CASE("fast solutions approach Newton's body") {
    const double V = 50.0;
    auto lim = limit_profile_large_V(3, 1.0);
    CHECK(lim.report.kind == SolutionKind::FirstKind);
    auto s = solve(FlowContext(RadialDensity::gaussian(3), V), 1.0);
    CHECK(sup_distance(s.profile.front, lim.profile.front) < 0.02);
    CHECK(s.report.R / (V * V) == Approx(lim.report.R).epsilon(0.03));
    CHECK(side_resistance(lim.profile.front, newton_curve(), 3) == Approx(lim.report.R).epsilon(1e-7));
  }
}
