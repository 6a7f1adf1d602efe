#pragma once

#include <functional>

namespace minres {

/// A C^1 function of the slope u >= 0 with a finite limit at +infinity.
class Curve {
 public:
  virtual ~Curve() = default;
  virtual double value(double u) const = 0;
  virtual double slope(double u) const = 0;
  /// Second derivative; the default differentiates slope() numerically.
  virtual double curvature(double u) const;
  virtual double tail() const = 0;
};

/// Curve given by closures, mostly for analytic model curves.
class FunctionCurve : public Curve {
 public:
  using Fn = std::function<double(double)>;
  FunctionCurve(Fn value, Fn slope, double tail, Fn curvature = nullptr);
  double value(double u) const override { return value_(u); }
  double slope(double u) const override { return slope_(u); }
  double curvature(double u) const override;
  double tail() const override { return tail_; }

 private:
  Fn value_;
  Fn slope_;
  Fn curvature_;
  double tail_;
};

/// p(u) = 1/(1+u^2), the pressure of Newton's classical problem.
FunctionCurve newton_curve();
/// p(u) = 1/sqrt(1+u^2), the slow-flow limit shape.
FunctionCurve inverse_hypot_curve();

}  // namespace minres
