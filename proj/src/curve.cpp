#include "minres/curve.hpp"

#include <algorithm>
#include <cmath>

namespace minres {

double Curve::curvature(double u) const {
  double h = 1e-5 * std::max(1.0, u);
  double lo = std::max(0.0, u - h);
  return (slope(u + h) - slope(lo)) / (u + h - lo);
}

FunctionCurve::FunctionCurve(Fn value, Fn slope, double tail, Fn curvature)
    : value_(std::move(value)), slope_(std::move(slope)), curvature_(std::move(curvature)), tail_(tail) {}

double FunctionCurve::curvature(double u) const {
  if (curvature_) return curvature_(u);
  return Curve::curvature(u);
}

FunctionCurve newton_curve() {
  return FunctionCurve([](double u) { return 1.0 / (1.0 + u * u); },
                       [](double u) {
                         double w = 1.0 + u * u;
                         return -2.0 * u / (w * w);
                       },
                       0.0,
                       [](double u) {
                         double w = 1.0 + u * u;
                         return (6.0 * u * u - 2.0) / (w * w * w);
                       });
}

FunctionCurve inverse_hypot_curve() {
  return FunctionCurve([](double u) { return 1.0 / std::sqrt(1.0 + u * u); },
                       [](double u) { return -u / std::pow(1.0 + u * u, 1.5); },
                       0.0,
                       [](double u) { return (2.0 * u * u - 1.0) / std::pow(1.0 + u * u, 2.5); });
}

}  // namespace minres
