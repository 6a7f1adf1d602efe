#pragma once

#include <functional>
#include <string>
#include <vector>

#include "minres/curve.hpp"

namespace minres {

enum class SolutionKind {
  Trapezium,
  IsoscelesTriangle,
  TriangleTrapezium,
  TwoTriangles,
  TwoTrianglesTrapezium,
  FirstKind,
  SecondKind,
};

/// Short names used in JSON and CSV: "trapezium", "triangle", ..., "first", "second".
std::string to_string(SolutionKind kind);
SolutionKind parse_solution_kind(const std::string& name);

struct Knot {
  double t;
  double y;
};

/// Convex, non-positive, non-decreasing generatrix f on [0, 1] of one side of the body.
/// Either a polyline or a flat disk followed by a parametric strictly convex arc.
class SideProfile {
 public:
  /// Arc (t(u), y(u)) for u in [u_lo, u_hi], t non-decreasing in u; the slope at t is u.
  struct Arc {
    std::function<double(double)> t_of;
    std::function<double(double)> y_of;
    double u_lo = 0.0;
    double u_hi = 0.0;
  };

  /// f = 0: the side degenerates to the flat disk.
  static SideProfile flat();
  /// Knots must start at t = 0 and end at t = 1 with strictly increasing t.
  static SideProfile polyline(std::vector<Knot> knots);
  /// -height on [0, flat_end], then the arc up to (1, y_of(u_hi)).
  static SideProfile with_arc(double height, double flat_end, Arc arc);

  double height() const { return -knots_.front().y; }
  double operator()(double t) const;
  /// Right derivative; the left one at t = 1.
  double slope(double t) const;

  bool parametric() const { return has_arc_; }
  /// Polyline knots; for arc profiles (0, -h), (t0, -h), (1, f(1)).
  const std::vector<Knot>& knots() const { return knots_; }
  double flat_end() const;
  const Arc& arc() const { return arc_; }

  /// Slope at the arc parameter inverse of t: u with t_of(u) = t (largest such u).
  double arc_parameter(double t) const;

  std::vector<Knot> sample(std::size_t n) const;
  /// Breakpoints of f' (polyline knots, or 0, t0, 1).
  std::vector<double> breakpoints() const;

  /// Checks convexity, monotonicity, non-positivity and f(0) = -height within tol.
  std::vector<std::string> defects(double tol = 1e-9) const;

 private:
  std::vector<Knot> knots_;
  bool has_arc_ = false;
  Arc arc_;
};

struct BodyProfile {
  int dimension = 2;
  double h = 0.0;
  double h_plus = 0.0;
  double h_minus = 0.0;
  SolutionKind kind = SolutionKind::Trapezium;
  SideProfile front = SideProfile::flat();
  SideProfile rear = SideProfile::flat();
};

/// int_0^1 p(f'(t)) d t^{d-1}: closed sum for polylines, quadrature over the arc otherwise.
double side_resistance(const SideProfile& side, const Curve& pressure, int d);

}  // namespace minres
