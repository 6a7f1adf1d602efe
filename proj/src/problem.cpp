#include "minres/problem.hpp"

#include <cmath>

#include "minres/errors.hpp"
#include "minres/solve2d.hpp"
#include "minres/solve_nd.hpp"

namespace minres {

FlowProblem::FlowProblem(const FlowContext& ctx, PressureOptions pressure, EnvelopeOptions envelope)
    : d_(ctx.dimension()), ctx_(ctx) {
  front_curve_ = std::make_shared<PressureCurve>(ctx, Side::Front, pressure);
  rear_curve_ = std::make_shared<PressureCurve>(ctx, Side::Rear, pressure);
  init(envelope);
}

FlowProblem::FlowProblem(int d, std::shared_ptr<const Curve> front, std::shared_ptr<const Curve> rear,
                         EnvelopeOptions envelope)
    : d_(d), front_curve_(std::move(front)), rear_curve_(std::move(rear)) {
  if (d < 2) throw DomainError("dimension must be at least 2");
  if (!front_curve_ || !rear_curve_) throw InputError("both pressure curves are required");
  init(envelope);
}

void FlowProblem::init(EnvelopeOptions envelope) {
  front_ = std::make_shared<EnvelopeAnalysis>(front_curve_, envelope);
  rear_ = std::make_shared<EnvelopeAnalysis>(rear_curve_, envelope);
  Landmark f = landmark_u0_B(*front_);
  Landmark r = landmark_u0_B(*rear_);
  marks_ = {f.contact, f.slope, r.contact, r.slope, find_u_star(*front_, *rear_)};
  if (d_ >= 3) {
    front_q_ = std::make_shared<QTransform>(front_, d_);
    rear_q_ = std::make_shared<QTransform>(rear_, d_);
    h_star_ = compute_h_star(*front_q_, *rear_, marks_.u_star);
  }
}

std::shared_ptr<const QTransform> FlowProblem::front_q() const {
  if (!front_q_) throw DomainError("q-transform is defined for d >= 3 only");
  return front_q_;
}

std::shared_ptr<const QTransform> FlowProblem::rear_q() const {
  if (!rear_q_) throw DomainError("q-transform is defined for d >= 3 only");
  return rear_q_;
}

double FlowProblem::h_star() const {
  if (!front_q_) throw DomainError("h* is defined for d >= 3 only");
  return h_star_;
}

Solution solve(const FlowProblem& problem, double h) {
  return problem.dimension() == 2 ? solve_2d(problem, h) : solve_nd(problem, h);
}

Solution solve(const FlowContext& ctx, double h) {
  if (!(h > 0.0)) throw DomainError("height must be positive");
  return solve(FlowProblem(ctx), h);
}

double unit_ball_volume(int n) {
  if (n < 0) throw DomainError("ball dimension must be non-negative");
  return std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

}  // namespace minres
