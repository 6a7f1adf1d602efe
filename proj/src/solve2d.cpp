#include "minres/solve2d.hpp"

#include <cmath>
#include <sstream>

#include "minres/errors.hpp"
#include "minres/numerics.hpp"
#include "minres/parallel.hpp"

namespace minres {

SideSolution minimize_side_2d(const EnvelopeAnalysis& analysis, double h) {
  if (!(h >= 0.0)) throw DomainError("height must be non-negative");
  if (h == 0.0) return {SideProfile::flat(), analysis.value(0.0), {0.0, 0.0}};
  Interval comp = analysis.component_of(h);
  const double value = analysis.value(h);
  if (comp.width() <= 0.0) return {SideProfile::polyline({{0.0, -h}, {1.0, 0.0}}), value, comp};
  const double t0 = (comp.hi - h) / comp.width();
  std::vector<Knot> knots{{0.0, -h}};
  if (t0 > 0.0 && t0 < 1.0) knots.push_back({t0, -h + comp.lo * t0});
  knots.push_back({1.0, 0.0});
  return {SideProfile::polyline(std::move(knots)), value, comp};
}

Solution solve_2d(const FlowProblem& problem, double h) {
  if (problem.dimension() != 2) throw DomainError("solve_2d requires d = 2");
  if (!(h > 0.0)) throw DomainError("height must be positive");
  const auto& front = problem.front();
  const auto& rear = problem.rear();
  const Landmarks& m = problem.landmarks();

  SolveReport rep;
  rep.landmarks = m;
  rep.ball_factor = unit_ball_volume(1);
  rep.tie = front.has_tie() || rear.has_tie();
  const double p_front0 = front.value(0.0);
  const double p_rear0 = rear.value(0.0);

  if (h < m.u_plus0) {
    rep.kind = SolutionKind::Trapezium;
    rep.h_plus = h;
    rep.R = p_front0 - m.B_plus * h + p_rear0;
  } else if (h <= m.u_star) {
    rep.kind = SolutionKind::IsoscelesTriangle;
    rep.h_plus = h;
    rep.R = front.value(h) + p_rear0;
  } else if (h < m.u_star + m.u_minus0) {
    rep.kind = SolutionKind::TriangleTrapezium;
    rep.h_plus = m.u_star;
    rep.R = front.value(m.u_star) + p_rear0 - m.B_minus * (h - m.u_star);
  } else {
    auto split_slope = [&](double z) { return front.slope(z) - rear.slope(h - z); };
    double lo = m.u_star;
    double hi = h - m.u_minus0;
    num::RootResult root{lo, split_slope(lo), 0};
    if (hi > lo) root = num::bisect_increasing(split_slope, lo, hi, 1e-15 * h, 1e-13, 200);
    rep.h_plus = root.x;
    rep.split_residual = std::abs(root.residual);
    rep.iterations = root.iterations;
    rep.kind = rear.component_of(h - root.x).width() > 0.0 ? SolutionKind::TwoTrianglesTrapezium
                                                             : SolutionKind::TwoTriangles;
    rep.R = front.value(rep.h_plus) + rear.value(h - rep.h_plus);
  }
  rep.h_minus = h - rep.h_plus;
  if (rep.tie) rep.diagnostics.push_back("envelope components touch; the minimizer is not unique");

  Solution out;
  out.profile.dimension = 2;
  out.profile.h = h;
  out.profile.h_plus = rep.h_plus;
  out.profile.h_minus = rep.h_minus;
  out.profile.kind = rep.kind;
  out.profile.front = minimize_side_2d(front, rep.h_plus).profile;
  out.profile.rear = minimize_side_2d(rear, rep.h_minus).profile;
  out.report = std::move(rep);
  return out;
}

Solution solve_2d(const FlowContext& ctx, double h) {
  if (!(h > 0.0)) throw DomainError("height must be positive");
  return solve_2d(FlowProblem(ctx), h);
}

std::vector<RegionRow> region_curves_2d(const RadialDensity& density, const std::vector<double>& speeds) {
  if (density.dimension() != 2) throw DomainError("region curves are defined for d = 2");
  for (std::size_t i = 0; i < speeds.size(); ++i) {
    if (!(speeds[i] > 0.0) || (i > 0 && !(speeds[i] > speeds[i - 1]))) {
      throw InputError("speed grid must be positive and increasing");
    }
  }
  std::vector<RegionRow> rows(speeds.size());
  parallel_for(speeds.size(), [&](std::size_t i) {
    try {
      FlowProblem problem(FlowContext(density, speeds[i]));
      const Landmarks& m = problem.landmarks();
      rows[i] = {speeds[i], m.u_plus0, m.u_star, m.u_star + m.u_minus0};
    } catch (...) {
      std::ostringstream msg;
      msg << "V = " << speeds[i] << ": ";
      rethrow_with_context(msg.str());
    }
  });
  return rows;
}

}  // namespace minres
