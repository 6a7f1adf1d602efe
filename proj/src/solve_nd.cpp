#include "minres/solve_nd.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "minres/errors.hpp"
#include "minres/numerics.hpp"
#include "minres/parallel.hpp"

namespace minres {

namespace {

/// Largest u with pbar'(u) <= slope.
double slope_preimage(const EnvelopeAnalysis& env, double slope) {
  if (slope <= env.slope(0.0)) return env.origin_contact();
  double hi = std::max(1.0, env.origin_contact());
  while (env.slope(hi) <= slope) {
    hi *= 2.0;
    if (hi > 1e12) throw NumericError("no bracket for the envelope slope preimage");
  }
  return num::bisect_predicate([&](double u) { return env.slope(u) <= slope; }, 0.0, hi, 1e-15 * hi, 200);
}

}  // namespace

double side_value_nd(const QTransform& qt, double U) { return qt.r_map(U); }

double compute_h_star(const QTransform& front, const EnvelopeAnalysis& rear, double u_star) {
  return u_star - std::pow(rear.origin_slope(), front.omega()) * front.Q(u_star);
}

Solution solve_nd(const FlowProblem& problem, double h) {
  const int d = problem.dimension();
  if (d < 3) throw DomainError("solve_nd requires d >= 3");
  if (!(h > 0.0)) throw DomainError("height must be positive");
  auto fq = problem.front_q();
  auto rq = problem.rear_q();
  const auto& front = problem.front();
  const auto& rear = problem.rear();

  SolveReport rep;
  rep.landmarks = problem.landmarks();
  rep.h_star = problem.h_star();
  rep.ball_factor = unit_ball_volume(d - 1);
  rep.tie = front.has_tie() || rear.has_tie();

  if (h <= rep.h_star) {
    rep.kind = SolutionKind::FirstKind;
    rep.h_plus = h;
    rep.h_minus = 0.0;
    rep.U_plus = fq->solve_U(h);
    rep.U_minus = rear.origin_contact();
    rep.R = fq->r_map(rep.U_plus) + rear.value(0.0);
  } else {
    // Parametrize the split by the front slope; the matching rear slope has the same envelope derivative.
    auto total_height = [&](double up) {
      double um = slope_preimage(rear, front.slope(up));
      return fq->h_map(up) + rq->h_map(um) - h;
    };
    double lo = rep.landmarks.u_star;
    double hi = fq->solve_U(h);
    num::RootResult root = num::bisect_increasing(total_height, lo, hi, 1e-15 * hi, 0.0, 200);
    rep.kind = SolutionKind::SecondKind;
    rep.iterations = root.iterations;
    rep.U_plus = root.x;
    rep.h_plus = std::clamp(fq->h_map(root.x), 0.0, h);
    rep.h_minus = h - rep.h_plus;
    rep.U_minus = rq->solve_U(rep.h_minus);
    rep.split_residual = std::abs(front.slope(rep.U_plus) - rear.slope(rep.U_minus));
    rep.R = fq->r_map(rep.U_plus) + rq->r_map(rep.U_minus);
  }
  if (rep.tie) rep.diagnostics.push_back("envelope components touch; the minimizer is not unique");

  Solution out;
  out.profile.dimension = d;
  out.profile.h = h;
  out.profile.h_plus = rep.h_plus;
  out.profile.h_minus = rep.h_minus;
  out.profile.kind = rep.kind;
  out.profile.front = build_profile_nd(fq, rep.h_plus, rep.U_plus);
  out.profile.rear = build_profile_nd(rq, rep.h_minus, rep.U_minus);
  out.report = std::move(rep);
  return out;
}

Solution solve_nd(const FlowContext& ctx, double h) {
  if (!(h > 0.0)) throw DomainError("height must be positive");
  return solve_nd(FlowProblem(ctx), h);
}

std::vector<HStarRow> h_star_curve(const RadialDensity& density, const std::vector<double>& speeds) {
  if (density.dimension() < 3) throw DomainError("h* is defined for d >= 3");
  for (std::size_t i = 0; i < speeds.size(); ++i) {
    if (!(speeds[i] > 0.0) || (i > 0 && !(speeds[i] > speeds[i - 1]))) {
      throw InputError("speed grid must be positive and increasing");
    }
  }
  std::vector<HStarRow> rows(speeds.size());
  parallel_for(speeds.size(), [&](std::size_t i) {
    try {
      FlowProblem problem(FlowContext(density, speeds[i]));
      rows[i] = {speeds[i], problem.h_star()};
    } catch (...) {
      std::ostringstream msg;
      msg << "V = " << speeds[i] << ": ";
      rethrow_with_context(msg.str());
    }
  });
  return rows;
}

}  // namespace minres
