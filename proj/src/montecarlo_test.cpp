#include <cmath>
#include <cstdlib>
#include <random>

#include "doctest.h"
#include "minres/errors.hpp"
#include "minres/montecarlo.hpp"
#include "minres/pressure.hpp"
#include "minres/problem.hpp"
#include "perturb.hpp"

using namespace minres;
using doctest::Approx;

namespace {

BodyProfile flat_body(int d) {
  BodyProfile b;
  b.dimension = d;
  return b;
}

double flat_value(const FlowContext& ctx) {
  return PressureCurve(ctx, Side::Front).value(0.0) + PressureCurve(ctx, Side::Rear).value(0.0);
}

RadialDensity compact_density(int d) {
  std::vector<double> r, s;
  for (int i = 0; i <= 200; ++i) {
    double x = 2.0 * i / 200;
    r.push_back(x);
    s.push_back((4.0 - x * x) * (4.0 - x * x));
  }
  return RadialDensity::tabulated(d, r, s);
}

}  // namespace

TEST_SUITE("montecarlo") {
  TEST_CASE("flat disk agrees with the pressure at zero slope") {
    for (int d : {2, 3}) {
      FlowContext ctx(RadialDensity::gaussian(d), 1.0);
      double exact = flat_value(ctx);
      int inside = 0;
      for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto e = estimate_resistance(flat_body(d), ctx, {20000, seed});
        if (std::abs(e.mean - exact) < 3 * e.standard_error) ++inside;
      }
      CHECK(inside >= 18);
    }
  }

  TEST_CASE("other media") {
    for (const auto& ctx : {FlowContext(RadialDensity::maxwell(3, 2.0, 0.7, 1.5), 0.8),
                            FlowContext(RadialDensity::scaled_pair(RadialDensity::gaussian(2), 1.0, 2.0), 1.2),
                            FlowContext(compact_density(2), 1.0)}) {
      auto e = estimate_resistance(flat_body(ctx.dimension()), ctx, {200000, 3});
      CHECK(std::abs(e.mean - flat_value(ctx)) < 4 * e.standard_error);
    }
  }

  TEST_CASE("fast flat disk approaches the flux") {
    const double V = 50.0;
    FlowContext ctx(RadialDensity::gaussian(2), V);
    auto e = estimate_resistance(flat_body(2), ctx, {20000, 9});
    CHECK(e.mean / (V * V) == Approx(1.0).epsilon(1e-3));
  }

  TEST_CASE("optimal body and perturbations") {
    FlowContext ctx(RadialDensity::gaussian(2), 1.0);
    FlowProblem pb(ctx);
    auto s = solve(pb, 3.0);
    auto e = estimate_resistance(s.profile, ctx, {400000, 21});
    CHECK(std::abs(e.mean - s.report.R) < 3 * e.standard_error);

    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
      BodyProfile other = s.profile;
      double z = 3.0 * unit(rng), lambda = unit(rng);
      other.front = oracle::blend(s.profile.front, oracle::random_side(rng, z), lambda);
      other.rear = oracle::blend(s.profile.rear, oracle::random_side(rng, 3.0 - z), lambda);
      auto p = estimate_resistance(other, ctx, {100000, 100 + static_cast<std::uint64_t>(i)});
      CHECK(p.mean >= s.report.R - 3 * p.standard_error);
    }
  }

  TEST_CASE("arc profiles in three dimensions") {
    FlowContext ctx(RadialDensity::gaussian(3), 1.0);
    auto s = solve(FlowProblem(ctx), 3.11);
    auto e = estimate_resistance(s.profile, ctx, {100000, 2});
    CHECK(std::abs(e.mean - s.report.R) < 3.5 * e.standard_error);
  }

  TEST_CASE("determinism and thread independence") {
    FlowContext ctx(RadialDensity::gaussian(2), 1.0);
    auto body = solve(FlowProblem(ctx), 6.0).profile;
    McOptions o{50000, 77};
    auto a = estimate_resistance(body, ctx, o);
    auto b = estimate_resistance(body, ctx, o);
    CHECK(a.mean == b.mean);
    CHECK(a.standard_error == b.standard_error);
    CHECK(a.seed == 77);
    CHECK(a.samples == 50000);

    const char* saved = std::getenv("MINRES_THREADS");
    std::string keep = saved ? saved : "";
    setenv("MINRES_THREADS", "1", 1);
    auto one = estimate_resistance(body, ctx, o);
    setenv("MINRES_THREADS", "7", 1);
    auto seven = estimate_resistance(body, ctx, o);
    if (saved) setenv("MINRES_THREADS", keep.c_str(), 1);
    else unsetenv("MINRES_THREADS");
    CHECK(one.mean == a.mean);
    CHECK(seven.mean == a.mean);
    CHECK(seven.standard_error == a.standard_error);

    auto other = estimate_resistance(body, ctx, {50000, 78});
    CHECK(other.mean != a.mean);
  }

  TEST_CASE("standard error scales as 1/sqrt(N)") {
    FlowContext ctx(RadialDensity::gaussian(2), 1.0);
    auto body = solve(FlowProblem(ctx), 3.0).profile;
    auto small = estimate_resistance(body, ctx, {50000, 5});
    auto large = estimate_resistance(body, ctx, {200000, 5});
    CHECK(small.standard_error / large.standard_error == Approx(2.0).epsilon(0.1));
    auto plain = estimate_resistance(body, ctx, {50000, 5, false});
    CHECK(plain.standard_error > 0.0);
  }

  TEST_CASE("invalid input") {
    FlowContext ctx(RadialDensity::gaussian(2), 1.0);
    CHECK_THROWS_AS(estimate_resistance(flat_body(2), ctx, {999, 1}), InputError);
    CHECK_THROWS_AS(estimate_resistance(flat_body(3), ctx), InputError);
    BodyProfile bent = flat_body(2);
    bent.front = SideProfile::polyline({{0.0, -1.0}, {0.5, -0.1}, {1.0, 0.0}});
    CHECK_THROWS_AS(estimate_resistance(bent, ctx), InputError);
  }
}
