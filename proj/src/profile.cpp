#include "minres/profile.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "minres/errors.hpp"
#include "minres/numerics.hpp"

namespace minres {

namespace {

constexpr std::array<std::pair<SolutionKind, const char*>, 7> kKindNames{{
    {SolutionKind::Trapezium, "trapezium"},
    {SolutionKind::IsoscelesTriangle, "triangle"},
    {SolutionKind::TriangleTrapezium, "triangle+trapezium"},
    {SolutionKind::TwoTriangles, "two-triangles"},
    {SolutionKind::TwoTrianglesTrapezium, "two-triangles+trapezium"},
    {SolutionKind::FirstKind, "first"},
    {SolutionKind::SecondKind, "second"},
}};

}  // namespace

std::string to_string(SolutionKind kind) {
  for (auto [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

SolutionKind parse_solution_kind(const std::string& name) {
  for (auto [k, n] : kKindNames) {
    if (name == n) return k;
  }
  throw InputError("unknown solution kind '" + name + "'");
}

SideProfile SideProfile::flat() { return polyline({{0.0, 0.0}, {1.0, 0.0}}); }

SideProfile SideProfile::polyline(std::vector<Knot> knots) {
  if (knots.size() < 2) throw InputError("profile needs at least two knots");
  if (knots.front().t != 0.0 || knots.back().t != 1.0) throw InputError("profile knots must span [0, 1]");
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    if (!(knots[i + 1].t > knots[i].t)) throw InputError("profile knots must have increasing t");
  }
  for (const auto& k : knots) {
    if (!std::isfinite(k.t) || !std::isfinite(k.y)) throw InputError("profile knots must be finite");
  }
  SideProfile p;
  p.knots_ = std::move(knots);
  return p;
}

SideProfile SideProfile::with_arc(double height, double flat_end, Arc arc) {
  if (!(height >= 0.0)) throw InputError("profile height must be non-negative");
  if (!(flat_end > 0.0 && flat_end <= 1.0)) throw InputError("flat disk radius must lie in (0, 1]");
  if (!arc.t_of || !arc.y_of || !(arc.u_hi >= arc.u_lo)) throw InputError("malformed profile arc");
  SideProfile p;
  p.has_arc_ = true;
  p.arc_ = std::move(arc);
  p.knots_ = {{0.0, -height}, {flat_end, -height}, {1.0, p.arc_.y_of(p.arc_.u_hi)}};
  if (flat_end >= 1.0) p.knots_.erase(p.knots_.begin() + 1);
  return p;
}

double SideProfile::flat_end() const { return has_arc_ && knots_.size() == 3 ? knots_[1].t : 1.0; }

double SideProfile::arc_parameter(double t) const {
  if (!has_arc_) throw InvariantError("arc_parameter on a polyline profile");
  auto below = [&](double u) { return arc_.t_of(u) <= t; };
  if (!below(arc_.u_lo)) return arc_.u_lo;
  if (below(arc_.u_hi)) return arc_.u_hi;
  return num::bisect_predicate(below, arc_.u_lo, arc_.u_hi, 1e-15, 200);
}

double SideProfile::operator()(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("profile evaluated outside [0, 1]");
  if (has_arc_) {
    if (t <= flat_end()) return knots_.front().y;
    return arc_.y_of(arc_parameter(t));
  }
  auto it = std::upper_bound(knots_.begin(), knots_.end(), t, [](double v, const Knot& k) { return v < k.t; });
  if (it == knots_.end()) return knots_.back().y;
  const Knot& b = *it;
  const Knot& a = *(it - 1);
  return a.y + (b.y - a.y) * (t - a.t) / (b.t - a.t);
}

double SideProfile::slope(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("profile evaluated outside [0, 1]");
  if (has_arc_) {
    if (t < flat_end()) return 0.0;
    return arc_parameter(t);
  }
  auto it = std::upper_bound(knots_.begin(), knots_.end(), t, [](double v, const Knot& k) { return v < k.t; });
  if (it == knots_.end()) --it;
  const Knot& b = *it;
  const Knot& a = *(it - 1);
  return (b.y - a.y) / (b.t - a.t);
}

std::vector<Knot> SideProfile::sample(std::size_t n) const {
  if (n < 2) throw InputError("profile sampling needs at least two points");
  std::vector<Knot> out;
  if (!has_arc_) {
    // Knots are exact; pad with interior points for plotting.
    for (std::size_t i = 0; i < n; ++i) {
      double t = static_cast<double>(i) / static_cast<double>(n - 1);
      out.push_back({t, (*this)(t)});
    }
    for (const auto& k : knots_) out.push_back(k);
    std::sort(out.begin(), out.end(), [](const Knot& a, const Knot& b) { return a.t < b.t; });
    out.erase(std::unique(out.begin(), out.end(), [](const Knot& a, const Knot& b) { return a.t == b.t; }),
              out.end());
    return out;
  }
  // Arc: Chebyshev-spaced parameter nodes on [u_lo, u_hi].
  out.push_back(knots_.front());
  const double lo = arc_.u_lo;
  const double hi = arc_.u_hi;
  for (std::size_t i = 0; i < n; ++i) {
    double x = 0.5 * (1.0 - std::cos(M_PI * static_cast<double>(i) / static_cast<double>(n - 1)));
    double u = lo + (hi - lo) * x;
    double t = std::clamp(arc_.t_of(u), 0.0, 1.0);
    if (t < out.back().t) continue;
    if (t == out.back().t) {
      out.back().y = arc_.y_of(u);
      continue;
    }
    out.push_back({t, arc_.y_of(u)});
  }
  out.back().t = 1.0;
  return out;
}

std::vector<double> SideProfile::breakpoints() const {
  std::vector<double> out;
  for (const auto& k : knots_) out.push_back(k.t);
  return out;
}

std::vector<std::string> SideProfile::defects(double tol) const {
  std::vector<std::string> out;
  auto note = [&](const std::string& what, double t) {
    std::ostringstream msg;
    msg << what << " at t = " << t;
    out.push_back(msg.str());
  };
  if (height() < -tol) note("negative height", 0.0);
  std::vector<Knot> pts = has_arc_ ? sample(256) : knots_;
  double prev_slope = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double dt = pts[i + 1].t - pts[i].t;
    if (!(dt > 0.0)) continue;
    double s = (pts[i + 1].y - pts[i].y) / dt;
    if (s < -tol) note("decreasing", pts[i].t);
    if (s < prev_slope - tol * std::max(1.0, std::abs(prev_slope))) note("not convex", pts[i].t);
    prev_slope = s;
    if (pts[i + 1].y > tol) note("positive value", pts[i + 1].t);
  }
  return out;
}

double side_resistance(const SideProfile& side, const Curve& pressure, int d) {
  if (d < 2) throw DomainError("dimension must be at least 2");
  const double e = d - 1.0;
  if (!side.parametric()) {
    const auto& k = side.knots();
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < k.size(); ++i) {
      double s = (k[i + 1].y - k[i].y) / (k[i + 1].t - k[i].t);
      total += pressure.value(std::max(0.0, s)) * (std::pow(k[i + 1].t, e) - std::pow(k[i].t, e));
    }
    return total;
  }
  const double t0 = side.flat_end();
  double total = pressure.value(0.0) * std::pow(t0, e);
  if (t0 < 1.0) {
    num::ScalarFn f = [&](double t) { return pressure.value(side.arc_parameter(t)) * e * std::pow(t, e - 1.0); };
    total += num::integrate(f, t0, 1.0, {1e-300, 1e-12, 2000});
  }
  return total;
}

}  // namespace minres
