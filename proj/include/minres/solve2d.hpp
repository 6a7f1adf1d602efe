#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "minres/envelope.hpp"
#include "minres/medium.hpp"
#include "minres/problem.hpp"
#include "minres/profile.hpp"

namespace minres {

struct SideSolution {
  SideProfile profile;
  double value = 0.0;
  Interval component;
};

/// Optimal side of height h in the plane: one slope h, or the two endpoint slopes of the
/// envelope component containing h. The value is pbar(h).
SideSolution minimize_side_2d(const EnvelopeAnalysis& analysis, double h);

Solution solve_2d(const FlowProblem& problem, double h);
Solution solve_2d(const FlowContext& ctx, double h);

struct RegionRow {
  double V = 0.0;
  double u_plus0 = 0.0;
  double u_star = 0.0;
  double u_star_plus_u_minus0 = 0.0;
};

/// Thresholds over a grid of speeds for densities of the given template. Runs in parallel.
std::vector<RegionRow> region_curves_2d(const RadialDensity& density, const std::vector<double>& speeds);

}  // namespace minres
