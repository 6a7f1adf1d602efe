// Density file to optimal body, through serialization and back, checked by sampling.
#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "minres/io.hpp"
#include "minres/montecarlo.hpp"
#include "minres/problem.hpp"

using namespace minres;
using doctest::Approx;

TEST_SUITE("pipeline") {
  TEST_CASE("Maxwell gas end to end") {
    for (int d : {2, 3}) {
      auto path = std::filesystem::temp_directory_path() / ("minres_pipeline_" + std::to_string(d) + ".json");
      write_text(path, R"({"kind": "maxwell", "mass": 2.0, "temperature": 0.8, "number_density": 1.5})");
      RadialDensity gas = load_density(path, d);
      std::filesystem::remove(path);
      CHECK(flux_density(gas) == Approx(1.5).epsilon(1e-8));

      FlowContext ctx(gas, 0.9);
      FlowProblem problem(ctx);
      const double h = 2.5;
      Solution s = solve(problem, h);
      CHECK(s.report.h_plus + s.report.h_minus == Approx(h));

      BodyProfile back = profile_from_json(solution_to_json(s, 2048));
      double again = side_resistance(back.front, problem.front().source(), d) +
                     side_resistance(back.rear, problem.rear().source(), d);
      CHECK(again == Approx(s.report.R).epsilon(d == 2 ? 1e-12 : 1e-5));

      auto e = estimate_resistance(back, ctx, {200000, 11});
      CHECK(std::abs(e.mean - s.report.R) < 4 * e.standard_error);
    }
  }

  TEST_CASE("mixture medium: resistance is non-increasing in h") {
    FlowProblem problem(FlowContext(RadialDensity::scaled_pair(RadialDensity::gaussian(2), 1.0, 2.0), 1.0));
    double prev = INFINITY;
    for (double h = 0.25; h < 10.0; h += 0.25) {
      Solution s = solve(problem, h);
      CHECK(s.report.R <= prev + 1e-12);
      prev = s.report.R;
    }
  }
}
