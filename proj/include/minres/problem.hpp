#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "minres/envelope.hpp"
#include "minres/medium.hpp"
#include "minres/pressure.hpp"
#include "minres/profile.hpp"
#include "minres/qtransform.hpp"

namespace minres {

struct Landmarks {
  double u_plus0 = 0.0;
  double B_plus = 0.0;
  double u_minus0 = 0.0;
  double B_minus = 0.0;
  double u_star = 0.0;
};

/// Front and rear pressure curves of one flow, their envelopes and the derived thresholds.
/// Immutable after construction.
class FlowProblem {
 public:
  explicit FlowProblem(const FlowContext& ctx, PressureOptions pressure = {}, EnvelopeOptions envelope = {});
  FlowProblem(int d, std::shared_ptr<const Curve> front, std::shared_ptr<const Curve> rear,
              EnvelopeOptions envelope = {});

  int dimension() const { return d_; }
  const std::optional<FlowContext>& context() const { return ctx_; }

  const EnvelopeAnalysis& front() const { return *front_; }
  const EnvelopeAnalysis& rear() const { return *rear_; }
  std::shared_ptr<const EnvelopeAnalysis> front_ptr() const { return front_; }
  std::shared_ptr<const EnvelopeAnalysis> rear_ptr() const { return rear_; }

  const Landmarks& landmarks() const { return marks_; }

  /// d >= 3 only.
  std::shared_ptr<const QTransform> front_q() const;
  std::shared_ptr<const QTransform> rear_q() const;
  double h_star() const;

 private:
  void init(EnvelopeOptions envelope);

  int d_;
  std::optional<FlowContext> ctx_;
  std::shared_ptr<const Curve> front_curve_;
  std::shared_ptr<const Curve> rear_curve_;
  std::shared_ptr<const EnvelopeAnalysis> front_;
  std::shared_ptr<const EnvelopeAnalysis> rear_;
  Landmarks marks_;
  std::shared_ptr<const QTransform> front_q_;
  std::shared_ptr<const QTransform> rear_q_;
  double h_star_ = std::numeric_limits<double>::quiet_NaN();
};

struct SolveReport {
  /// Reduced resistance R(h); the body resistance is ball_factor * R.
  double R = 0.0;
  double ball_factor = 0.0;
  double h_plus = 0.0;
  double h_minus = 0.0;
  SolutionKind kind = SolutionKind::Trapezium;
  Landmarks landmarks;
  double U_plus = std::numeric_limits<double>::quiet_NaN();
  double U_minus = std::numeric_limits<double>::quiet_NaN();
  double h_star = std::numeric_limits<double>::quiet_NaN();
  /// |pbar_+'(.) - pbar_-'(.)| at the split, 0 when no split was solved.
  double split_residual = 0.0;
  int iterations = 0;
  bool tie = false;
  std::vector<std::string> diagnostics;
};

struct Solution {
  BodyProfile profile;
  SolveReport report;
};

/// Routes to the d = 2 or d >= 3 solver.
Solution solve(const FlowProblem& problem, double h);
Solution solve(const FlowContext& ctx, double h);

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

}  // namespace minres
