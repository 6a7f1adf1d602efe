#pragma once

#include <vector>

#include "minres/medium.hpp"
#include "minres/problem.hpp"
#include "minres/qtransform.hpp"

namespace minres {

/// pbar(U) + Q(U)/q(U)^{d-1}
double side_value_nd(const QTransform& qt, double U);

/// h* = u* - B_-^{1/(d-2)} Q_+(u*).
double compute_h_star(const QTransform& front, const EnvelopeAnalysis& rear, double u_star);

Solution solve_nd(const FlowProblem& problem, double h);
Solution solve_nd(const FlowContext& ctx, double h);

struct HStarRow {
  double V = 0.0;
  double h_star = 0.0;
};
std::vector<HStarRow> h_star_curve(const RadialDensity& density, const std::vector<double>& speeds);

}  // namespace minres
