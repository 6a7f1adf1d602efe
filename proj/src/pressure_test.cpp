#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "gaussian_oracle.hpp"
#include "minres/asymptotics.hpp"
#include "minres/errors.hpp"
#include "minres/pressure.hpp"

using namespace minres;
using doctest::Approx;

namespace {

PressureOptions generic() {
  PressureOptions o;
  o.backend = Backend::Generic;
  return o;
}

}  // namespace

TEST_SUITE("pressure") {
  TEST_CASE("closed forms agree with the projection oracle") {
    for (double V : {0.2, 1.0, 3.0, 10.0}) {
      for (double u : {0.0, 0.3, 1.0, 2.5, 7.0, 40.0}) {
        for (int s : {1, -1}) {
          Side side = s > 0 ? Side::Front : Side::Rear;
          double ref = oracle::pressure(s, u, V);
          double scale = oracle::pressure(1, 0.0, V);
          CHECK(gaussian_pressure_2d(side, u, V) == Approx(ref).epsilon(1e-11).scale(scale));
          CHECK(gaussian_pressure_3d(side, u, V) == Approx(ref).epsilon(1e-11).scale(scale));
          double dref = oracle::pressure_slope(s, u, V);
          CHECK(gaussian_pressure_slope_2d(side, u, V) == Approx(dref).epsilon(1e-10).scale(scale));
          CHECK(gaussian_pressure_slope_3d(side, u, V) == Approx(dref).epsilon(1e-10).scale(scale));
        }
      }
    }
  }

  TEST_CASE("generic reduction agrees with both closed forms") {
    for (int d : {2, 3}) {
      for (double V : {0.2, 1.0, 3.0}) {
        FlowContext ctx(RadialDensity::gaussian(d), V);
        PressureCurve front(ctx, Side::Front, generic());
        PressureCurve rear(ctx, Side::Rear, generic());
        for (double u : {0.0, 0.5, 1.0, 2.0, 5.0}) {
          double fc = d == 2 ? gaussian_pressure_2d(Side::Front, u, V) : gaussian_pressure_3d(Side::Front, u, V);
          double rc = d == 2 ? gaussian_pressure_2d(Side::Rear, u, V) : gaussian_pressure_3d(Side::Rear, u, V);
          CHECK(front.exact_value(u) == Approx(fc).epsilon(1e-8));
          CHECK(rear.exact_value(u) == Approx(rc).epsilon(1e-8));
        }
      }
    }
  }

  TEST_CASE("tabulated curve matches its exact evaluation") {
    FlowContext ctx(RadialDensity::gaussian(3), 1.0);
    PressureCurve c(ctx, Side::Rear);
    for (double u = 0.0; u < 30.0; u += 0.37) {
      CHECK(c.value(u) == Approx(c.exact_value(u)).epsilon(1e-10).scale(1.0));
      CHECK(c.slope(u) == Approx(c.exact_slope(u)).epsilon(1e-10).scale(1.0));
    }
  }

  TEST_CASE("slope matches a central difference") {
    FlowContext ctx(RadialDensity::gaussian(2), 1.0);
    PressureCurve c(ctx, Side::Front);
    const double step = 1e-4;
    double fd = (c.exact_value(1.0 + step) - c.exact_value(1.0 - step)) / (2 * step);
    CHECK(c.exact_slope(1.0) == Approx(fd).epsilon(1e-5));
  }

  TEST_CASE("sign, tail and endpoint slopes for every test density") {
    std::vector<RadialDensity> media{RadialDensity::gaussian(2), RadialDensity::gaussian(3),
                                     RadialDensity::maxwell(3, 2.0, 0.5, 1.3),
                                     RadialDensity::scaled_pair(RadialDensity::gaussian(2), 1.0, 2.0)};
    for (const auto& m : media) {
      for (double V : {0.2, 1.0, 3.0}) {
        FlowContext ctx(m, V);
        PressureCurve pp(ctx, Side::Front), pm(ctx, Side::Rear);
        const double tol = 1e-6 * std::abs(pp.value(0.0));
        CHECK(std::abs(pp.tail() + pm.tail()) < tol);
        CHECK(std::abs(pp.slope(0.0)) < tol);
        CHECK(std::abs(pm.slope(0.0)) < tol);
        CHECK(std::abs(pp.slope(1e3)) < 1e-4);
        CHECK(std::abs(pm.slope(1e3)) < 1e-4);
        for (int i = 1; i <= 200; ++i) {
          double u = 0.1 * i;
          CHECK(pp.value(u) > 0.0);
          CHECK(pm.value(u) < 0.0);
          CHECK(pp.slope(u) < pm.slope(u));
          CHECK(pp.slope(u) < 0.0);
          CHECK(pm.value(u) > pm.tail());
        }
      }
    }
  }

  TEST_CASE("tail equals large-slope evaluation") {
    FlowContext ctx(RadialDensity::gaussian(3), 1.0);
    PressureCurve c(ctx, Side::Front);
    CHECK(c.tail() == Approx(c.exact_value(1e4)).epsilon(1e-4));
    CHECK(gaussian_pressure_tail_2d(Side::Front, 1.0) + gaussian_pressure_tail_2d(Side::Rear, 1.0) ==
          Approx(0.0).scale(1.0).epsilon(1e-8));
  }

  TEST_CASE("front curvature changes sign once, inside the known window") {
    for (double V : {0.2, 1.0, 3.0}) {
      FlowContext ctx(RadialDensity::gaussian(2), V);
      PressureCurve c(ctx, Side::Front);
      int changes = 0;
      double where = 0.0;
      double prev = c.curvature(1e-3);
      for (double u = 2e-3; u < 20.0; u += 1e-3) {
        double k = c.curvature(u);
        if ((k > 0) != (prev > 0)) {
          ++changes;
          where = u;
        }
        prev = k;
      }
      CHECK(changes == 1);
      CHECK(where > 1.0 / std::sqrt(3.0));
      CHECK(where < std::tan(0.3 * std::numbers::pi));
    }
  }

  TEST_CASE("fast and slow scalings") {
    CHECK(gaussian_pressure_2d(Side::Front, 1.0, 100.0) / 1e4 == Approx(0.5).epsilon(0.02));
    CHECK(gaussian_pressure_tail_2d(Side::Front, 100.0) / 1e4 < 1e-3);
    auto k = limit_coefficients(RadialDensity::gaussian(2));
    CHECK(gaussian_pressure_2d(Side::Front, 0.0, 0.05) == Approx(k.b + 0.05 * k.c).epsilon(5e-3));
  }

  TEST_CASE("large speeds stay finite") {
    for (double V : {38.0, 50.0, 200.0}) {
      double p = gaussian_pressure_2d(Side::Front, 0.5, V);
      CHECK(std::isfinite(p));
      CHECK(p == Approx(oracle::pressure(1, 0.5, V)).epsilon(1e-10));
      CHECK(std::isfinite(gaussian_pressure_3d(Side::Rear, 0.5, V)));
    }
  }

  TEST_CASE("radial marginal") {
    VarrhoKernel k(RadialDensity::gaussian(2), 1.0);
    CHECK(k(-1.0) > k(1.0));
    CHECK(k(0.3) == Approx(k.direct(0.3)).epsilon(1e-11));
    double prev = -1e300;
    for (double z = -1.0; z <= 1.0; z += 0.05) {
      double d = k.derivative(z);
      CHECK(d < 0.0);
      CHECK(d >= prev - 1e-9 * std::abs(d));
      CHECK(d == Approx(k.direct_derivative(z)).epsilon(1e-8));
      prev = d;
    }
    VarrhoKernel still(RadialDensity::gaussian(2), 0.0);
    double m3 = moment(RadialDensity::gaussian(2), 3);
    CHECK(still(-0.7) == Approx(m3).epsilon(1e-12));
    CHECK(still(0.9) == Approx(m3).epsilon(1e-12));
    CHECK_THROWS_AS(k(1.5), DomainError);
  }

  TEST_CASE("radial marginal of an interpolated density") {
    std::vector<double> r, s;
    for (int i = 0; i <= 200; ++i) {
      double x = 2.0 * i / 200;
      r.push_back(x);
      s.push_back((4.0 - x * x) * (4.0 - x * x));
    }
    VarrhoKernel k(RadialDensity::tabulated(3, r, s), 0.7);
    for (double z = -1.0; z <= 1.0; z += 0.0625) {
      CHECK(k(z) == Approx(k.direct(z)).epsilon(1e-10));
      CHECK(k.derivative(z) < 0.0);
    }
  }

  TEST_CASE("closed-form kernels") {
    CHECK(gaussian_l_kernel(0.0) == Approx(1.0));
    CHECK(gaussian_i_kernel(0.0) == Approx(3.0 * std::sqrt(std::numbers::pi / 2)));
    const double u = 0.8;
    const double band = u / std::sqrt(1 + u * u);
    CHECK(gaussian_angular_weight(u, -band - 1e-9) == 0.0);
    CHECK(gaussian_angular_weight(u, -0.99) == 0.0);
    CHECK(gaussian_angular_weight(u, band - 1e-12) == Approx(gaussian_angular_weight(u, band + 1e-12)).epsilon(1e-10));
    CHECK(gaussian_angular_weight(u, 1.0) == Approx(2 * std::numbers::pi / (1 + u * u)));
  }

  TEST_CASE("domain errors") {
    CHECK_THROWS_AS(gaussian_pressure_2d(Side::Front, -1.0, 1.0), DomainError);
    FlowContext ctx(RadialDensity::gaussian(2), 1.0);
    PressureCurve c(ctx, Side::Front);
    CHECK_THROWS_AS(c.value(-0.1), DomainError);
    PressureOptions o;
    o.backend = Backend::GaussianClosedForm3D;
    CHECK_THROWS_AS(PressureCurve(ctx, Side::Front, o), DomainError);
  }
}
