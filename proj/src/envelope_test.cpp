#include <cmath>
#include <memory>
#include <numbers>

#include "doctest.h"
#include "gaussian_oracle.hpp"
#include "minres/asymptotics.hpp"
#include "minres/envelope.hpp"
#include "minres/errors.hpp"
#include "minres/pressure.hpp"
#include "minres/problem.hpp"

using namespace minres;
using doctest::Approx;

namespace {

std::shared_ptr<const Curve> share(FunctionCurve c) { return std::make_shared<FunctionCurve>(std::move(c)); }

std::shared_ptr<const Curve> gaussian_side(int d, double V, Side side) {
  return std::make_shared<PressureCurve>(FlowContext(RadialDensity::gaussian(d), V), side);
}

// Second rear component engineered by adding a narrow, heavy velocity population.
constexpr double kMixAlpha = 1e5;
constexpr double kMixBeta = 17.43328822199988;
constexpr double kMixSpeed = 0.5;

FlowContext mixture_flow() {
  return FlowContext(RadialDensity::scaled_pair(RadialDensity::gaussian(2), kMixAlpha, kMixBeta), kMixSpeed);
}

}  // namespace

TEST_SUITE("envelope") {
  TEST_CASE("Newton curve: one component (0, 1) with B = 1/2") {
    EnvelopeAnalysis env(share(newton_curve()));
    REQUIRE(env.components().size() == 1);
    CHECK(env.components()[0].lo == 0.0);
    CHECK(env.components()[0].hi == Approx(1.0).epsilon(1e-8));
    CHECK(env.origin_slope() == Approx(0.5).epsilon(1e-8));
    auto [u0, B] = landmark_u0_B(env);
    CHECK(u0 == Approx(1.0).epsilon(1e-8));
    CHECK(B == Approx(0.5).epsilon(1e-8));

    auto newton = newton_curve();
    auto hull = oracle::lower_hull([&](double u) { return newton.value(u); }, 0.0, 20.0, 100001);
    auto gaps = hull.gaps(1e-12);
    REQUIRE(gaps.size() == 1);
    CHECK(gaps[0].second == Approx(1.0).epsilon(3e-4));
  }

  TEST_CASE("slow-limit curve: component (0, a) with exact tangency") {
    EnvelopeAnalysis env(share(inverse_hypot_curve()));
    const double a = slow_contact_slope();
    REQUIRE(env.components().size() == 1);
    double u0 = env.components()[0].hi;
    CHECK(u0 == Approx(a).epsilon(1e-10));
    const auto& p = env.source();
    double residual = (p.value(u0) - p.value(0.0)) / u0 - p.slope(u0);
    CHECK(std::abs(residual) < 1e-10);
    CHECK(env.origin_slope() == Approx(std::pow(a, -5.0)).epsilon(1e-10));
    CHECK(std::pow(a, -5.0) == Approx(0.3003).epsilon(1e-4));
  }

  TEST_CASE("a convex curve is its own envelope") {
    FunctionCurve convex([](double u) { return 1.0 + 1.0 / (1.0 + u); },
                         [](double u) { return -1.0 / ((1.0 + u) * (1.0 + u)); }, 1.0);
    EnvelopeAnalysis env(share(convex));
    CHECK(env.components().empty());
    for (double u : {0.0, 0.5, 3.0}) CHECK(env.value(u) == Approx(convex.value(u)));
    CHECK(env.origin_contact() == 0.0);
  }

  TEST_CASE("idempotence") {
    auto first = std::make_shared<EnvelopeAnalysis>(share(newton_curve()));
    EnvelopeAnalysis again(first);
    CHECK(again.components().empty());
    for (double u : {0.0, 0.4, 1.0, 2.0, 9.0}) CHECK(again.value(u) == Approx(first->value(u)).epsilon(1e-12));
  }

  TEST_CASE("component_of") {
    EnvelopeAnalysis env(share(newton_curve()));
    auto c = env.component_of(0.5);
    CHECK(c.lo == 0.0);
    CHECK(c.hi == Approx(1.0).epsilon(1e-8));
    auto out = env.component_of(2.0);
    CHECK(out.lo == 2.0);
    CHECK(out.hi == 2.0);
  }

  TEST_CASE("Gaussian landmarks against the oracle table") {
    for (const auto& row : oracle::kLandmarks) {
      for (int d : {2, 3}) {
        FlowProblem pb(FlowContext(RadialDensity::gaussian(d), row.V));
        const auto& m = pb.landmarks();
        CHECK(m.u_plus0 == Approx(row.u_plus0).epsilon(1e-9));
        CHECK(m.B_plus == Approx(row.B_plus).epsilon(1e-9));
        CHECK(m.u_minus0 == Approx(row.u_minus0).epsilon(1e-9));
        CHECK(m.B_minus == Approx(row.B_minus).epsilon(1e-9));
        CHECK(m.u_star == Approx(row.u_star).epsilon(1e-9));
        CHECK(pb.front().components().size() == 1);
        CHECK(pb.rear().components().front().lo == 0.0);
        CHECK(m.B_plus > m.B_minus);
        CHECK(m.B_minus > 0.0);
      }
    }
    FlowProblem v1(FlowContext(RadialDensity::gaussian(2), 1.0));
    CHECK(v1.landmarks().u_plus0 > 1.0);
    CHECK(v1.landmarks().u_plus0 < slow_contact_slope());
  }

  TEST_CASE("support lines and endpoint contact") {
    for (double V : {0.2, 1.0, 3.0}) {
      for (Side side : {Side::Front, Side::Rear}) {
        EnvelopeAnalysis env(gaussian_side(2, V, side));
        const auto& p = env.source();
        const double scale = p.value(0.0) - p.tail();
        for (double h = 0.0; h < 15.0; h += 0.25) {
          double base = env.value(h), s = env.slope(h);
          CHECK(env.value(h) <= p.value(h) + 1e-12 * scale);
          CHECK(s < 0.0);
          for (double u = 0.0; u < 30.0; u += 0.1) CHECK(p.value(u) >= base + s * (u - h) - 1e-11 * scale);
        }
        for (const auto& c : env.components()) {
          CHECK(p.value(c.hi) == Approx(env.value(c.hi)).epsilon(1e-10).scale(scale));
          if (c.lo > 0.0) CHECK(p.value(c.lo) == Approx(env.value(c.lo)).epsilon(1e-10).scale(scale));
        }
        double prev = env.slope(0.0);
        for (double u = 0.01; u < 40.0; u += 0.01) {
          double s = env.slope(u);
          CHECK(s >= prev - 1e-12 * scale);
          prev = s;
        }
      }
    }
  }

  TEST_CASE("B ordering for non-Gaussian media") {
    for (const auto& m : {RadialDensity::maxwell(2, 1.5, 0.8, 2.0),
                          RadialDensity::scaled_pair(RadialDensity::gaussian(2), 1.0, 2.0)}) {
      FlowProblem pb(FlowContext(m, 1.0));
      CHECK(pb.landmarks().B_plus > pb.landmarks().B_minus);
      CHECK(pb.landmarks().B_minus > 0.0);
    }
  }

  TEST_CASE("u* needs B_front > B_rear") {
    auto front = std::make_shared<EnvelopeAnalysis>(gaussian_side(2, 1.0, Side::Front));
    CHECK_THROWS_AS(find_u_star(*front, *front), InvariantError);
  }

  TEST_CASE("curves that touch their limit are rejected") {
    FunctionCurve bad([](double u) { return 1.0 / (1.0 + u * u) - (u > 5.0 ? 0.1 : 0.0); }, [](double) { return 0.0; },
                      0.0);
    CHECK_THROWS_AS(EnvelopeAnalysis(share(bad)), DomainError);
  }

  TEST_CASE("mixture medium has a second rear component") {
    auto rear = std::make_shared<PressureCurve>(mixture_flow(), Side::Rear);
    EnvelopeAnalysis env(rear);
    REQUIRE(env.components().size() == 2);
    auto second = env.components()[1];

    auto f = [](double u) { return oracle::mixture_pressure(-1, u, kMixSpeed, kMixAlpha, kMixBeta, 2); };
    auto hull = oracle::lower_hull(f, 0.0, 40.0, 400001);
    double scale = std::abs(f(40.0) - f(0.0));
    auto gaps = hull.gaps(1e-9 * scale);
    REQUIRE(gaps.size() == 2);
    CHECK(second.lo == Approx(gaps[1].first).epsilon(2e-4));
    CHECK(second.hi == Approx(gaps[1].second).epsilon(2e-4));
    CHECK(env.components()[0].hi == Approx(gaps[0].second).epsilon(2e-4));

    auto inside = env.component_of(0.5 * (second.lo + second.hi));
    CHECK(inside.lo == second.lo);
    CHECK(inside.hi == second.hi);
    CHECK(second.lo == Approx(3.895225).epsilon(1e-6));
    CHECK(second.hi == Approx(7.703571).epsilon(1e-6));
  }

  TEST_CASE("sampling") {
    EnvelopeAnalysis env(share(newton_curve()));
    auto s = sample_envelope(env, 4.0, 41);
    REQUIRE(s.size() == 41);
    CHECK(s[5].pbar == Approx(1.0 - 0.5 * s[5].u));
    CHECK(s.back().pbar == Approx(s.back().p));
    CHECK_THROWS_AS(sample_envelope(env, 4.0, 1), InputError);
  }
}
