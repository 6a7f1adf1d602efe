#include "minres/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "minres/errors.hpp"
#include "minres/numerics.hpp"

namespace minres {

namespace {

struct Point {
  double u;
  double p;
};

double cross(const Point& o, const Point& a, const Point& b) {
  return (a.u - o.u) * (b.p - o.p) - (a.p - o.p) * (b.u - o.u);
}

std::vector<std::size_t> lower_hull(const std::vector<Point>& pts) {
  std::vector<std::size_t> hull;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    while (hull.size() >= 2 && cross(pts[hull[hull.size() - 2]], pts[hull.back()], pts[k]) <= 0.0) hull.pop_back();
    hull.push_back(k);
  }
  return hull;
}

}  // namespace

EnvelopeAnalysis::EnvelopeAnalysis(std::shared_ptr<const Curve> curve, EnvelopeOptions opts)
    : curve_(std::move(curve)), opts_(opts) {
  if (!curve_) throw InputError("envelope: null curve");
  if (opts_.grid < 16) throw InputError("envelope: grid needs at least 16 samples");
  const double tail = curve_->tail();
  const std::size_t n = opts_.grid;

  std::vector<Point> pts(n);
  for (std::size_t k = 0; k < n; ++k) {
    double phi = 0.5 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    double u = k == 0 ? 0.0 : std::tan(phi);
    pts[k] = {u, curve_->value(u)};
    if (!std::isfinite(pts[k].p)) throw NumericError("envelope: non-finite curve sample");
    if (!(pts[k].p > tail)) {
      std::ostringstream msg;
      msg << "envelope: curve does not stay above its limit at infinity (u = " << u << ", p - p(inf) = "
          << pts[k].p - tail << ")";
      throw DomainError(msg.str());
    }
  }
  const double scale = pts.front().p - tail;
  const double gap = opts_.gap_tol * scale;

  std::vector<std::size_t> hull = lower_hull(pts);
  // The horizontal asymptote closes the hull at infinity; edges rising towards it are not part of pbar.
  while (hull.size() >= 2 && pts[hull.back()].p >= pts[hull[hull.size() - 2]].p) hull.pop_back();

  for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
    std::size_t i = hull[e];
    std::size_t j = hull[e + 1];
    if (j == i + 1) continue;
    const Point& a = pts[i];
    const Point& b = pts[j];
    double s = (b.p - a.p) / (b.u - a.u);
    double worst = 0.0;
    for (std::size_t k = i + 1; k < j; ++k) worst = std::max(worst, pts[k].p - (a.p + s * (pts[k].u - a.u)));
    if (worst <= gap) continue;
    Segment seg{{a.u, b.u}, a.p, s};
    if (i == 0) {
      refine_origin(seg, pts[j - 1].u, j + 1 < n ? pts[j + 1].u : 2.0 * b.u);
    } else {
      refine_interior(seg);
    }
    segments_.push_back(seg);
  }

  for (std::size_t k = 0; k + 1 < segments_.size(); ++k) {
    if (segments_[k + 1].span.lo - segments_[k].span.hi < opts_.merge_tol) {
      tie_ = true;
      std::ostringstream msg;
      msg << "components touch at u = " << segments_[k].span.hi;
      notes_.push_back(msg.str());
    }
  }
  components_.reserve(segments_.size());
  for (const auto& seg : segments_) components_.push_back(seg.span);
}

void EnvelopeAnalysis::refine_origin(Segment& seg, double lo_guess, double hi_guess) {
  const Curve& p = *curve_;
  const double p0 = p.value(0.0);
  num::ScalarFn g = [&](double b) { return p.value(b) - p0 - b * p.slope(b); };
  double lo = lo_guess;
  double hi = hi_guess;
  for (int k = 0; k < 40 && (g(lo) > 0.0) == (g(hi) > 0.0); ++k) {
    lo *= 0.5;
    hi *= 2.0;
  }
  if ((g(lo) > 0.0) == (g(hi) > 0.0)) {
    notes_.push_back("origin component left at grid resolution: no tangency bracket");
    return;
  }
  double b = num::solve_bracketed(g, lo, hi, opts_.root_tol);
  seg.span = {0.0, b};
  seg.base = p0;
  seg.slope = p.slope(b);
  residual_ = std::max(residual_, std::abs(g(b)));
}

void EnvelopeAnalysis::refine_interior(Segment& seg) {
  const Curve& p = *curve_;
  double a = seg.span.lo;
  double b = seg.span.hi;
  const double a0 = a;
  const double b0 = b;
  double res = 0.0;
  bool ok = false;
  for (int it = 0; it < 60; ++it) {
    double da1 = p.slope(a);
    double db1 = p.slope(b);
    double f1 = da1 - db1;
    double f2 = p.value(b) - p.value(a) - da1 * (b - a);
    res = std::max(std::abs(f1), std::abs(f2));
    if (res <= opts_.root_tol * std::max(1.0, std::abs(p.value(a)))) {
      ok = true;
      break;
    }
    double ca = p.curvature(a);
    double cb = p.curvature(b);
    double j11 = ca, j12 = -cb;
    double j21 = -ca * (b - a), j22 = db1 - da1;
    double det = j11 * j22 - j12 * j21;
    if (!(std::abs(det) > 0.0) || !std::isfinite(det)) break;
    double step_a = (f1 * j22 - j12 * f2) / det;
    double step_b = (j11 * f2 - j21 * f1) / det;
    double damp = 1.0;
    while (damp > 1e-6 && !(a - damp * step_a >= 0.0 && b - damp * step_b > a - damp * step_a)) damp *= 0.5;
    a -= damp * step_a;
    b -= damp * step_b;
    if (std::abs(damp * step_a) + std::abs(damp * step_b) < 1e-15 * (1.0 + b)) {
      ok = true;
      break;
    }
  }
  if (!ok || !(b > a) || a < 0.5 * a0 || b > 2.0 * b0) {
    notes_.push_back("interior component left at grid resolution: endpoint refinement failed");
    return;
  }
  seg.span = {a, b};
  seg.base = p.value(a);
  seg.slope = p.slope(a);
  residual_ = std::max(residual_, res);
}

const EnvelopeAnalysis::Segment* EnvelopeAnalysis::segment_at(double u) const {
  for (const auto& seg : segments_) {
    if (u >= seg.span.lo && u <= seg.span.hi) return &seg;
  }
  return nullptr;
}

double EnvelopeAnalysis::value(double u) const {
  if (!(u >= 0.0)) throw DomainError("envelope: slope must be non-negative");
  if (std::isinf(u)) return tail();
  if (const Segment* seg = segment_at(u)) return seg->base + seg->slope * (u - seg->span.lo);
  return curve_->value(u);
}

double EnvelopeAnalysis::slope(double u) const {
  if (!(u >= 0.0)) throw DomainError("envelope: slope must be non-negative");
  if (std::isinf(u)) return 0.0;
  if (const Segment* seg = segment_at(u)) return seg->slope;
  return curve_->slope(u);
}

double EnvelopeAnalysis::curvature(double u) const {
  if (segment_at(u)) return 0.0;
  return curve_->curvature(u);
}

Interval EnvelopeAnalysis::component_of(double h) const {
  for (const auto& c : components_) {
    if (c.contains(h)) return c;
  }
  return {h, h};
}

double EnvelopeAnalysis::origin_contact() const {
  if (!components_.empty() && components_.front().lo == 0.0) return components_.front().hi;
  return 0.0;
}

Landmark landmark_u0_B(const EnvelopeAnalysis& analysis) {
  return {analysis.origin_contact(), analysis.origin_slope()};
}

double find_u_star(const EnvelopeAnalysis& front, const EnvelopeAnalysis& rear) {
  const double b_front = front.origin_slope();
  const double b_rear = rear.origin_slope();
  if (!(b_front > b_rear)) {
    std::ostringstream msg;
    msg << "front envelope slope at 0 (" << b_front << ") does not exceed the rear one (" << b_rear << ")";
    throw InvariantError(msg.str());
  }
  const Curve& p = front.source();
  num::ScalarFn f = [&](double u) { return p.slope(u) + b_rear; };
  double lo = front.origin_contact();
  double hi = std::max(2.0 * lo, 1.0);
  while (f(hi) <= 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) throw NumericError("find_u_star: no sign change of p'(u) + B_rear");
  }
  return num::solve_bracketed(f, lo, hi, 1e-14);
}

std::vector<EnvelopeSample> sample_envelope(const EnvelopeAnalysis& analysis, double u_max, std::size_t n) {
  if (n < 2 || !(u_max > 0.0)) throw InputError("sample_envelope: need n >= 2 and u_max > 0");
  std::vector<EnvelopeSample> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    double u = u_max * static_cast<double>(k) / static_cast<double>(n - 1);
    out.push_back({u, analysis.source().value(u), analysis.value(u), analysis.slope(u)});
  }
  return out;
}

}  // namespace minres
