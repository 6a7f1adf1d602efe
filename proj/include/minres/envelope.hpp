#pragma once

#include <memory>
#include <string>
#include <vector>

#include "minres/curve.hpp"

namespace minres {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
  bool contains(double x) const { return lo < x && x < hi; }
};

struct EnvelopeOptions {
  /// Number of samples, uniform in atan(u) over [0, pi/2).
  std::size_t grid = 2048;
  /// A sample lies on the envelope when p - pbar < gap_tol * (p(0) - p(inf)).
  double gap_tol = 1e-9;
  /// Components whose endpoints are closer than this are reported as touching.
  double merge_tol = 1e-8;
  /// Tolerance of the endpoint refinement.
  double root_tol = 1e-12;
};

/// Maximal convex minorant pbar of a curve on [0, inf) with its non-contact set,
/// a finite list of open intervals on which pbar is affine and below the curve.
class EnvelopeAnalysis : public Curve {
 public:
  explicit EnvelopeAnalysis(std::shared_ptr<const Curve> curve, EnvelopeOptions opts = {});

  double value(double u) const override;
  double slope(double u) const override;
  double curvature(double u) const override;
  double tail() const override { return curve_->tail(); }

  const Curve& source() const { return *curve_; }
  std::shared_ptr<const Curve> source_ptr() const { return curve_; }

  const std::vector<Interval>& components() const { return components_; }
  /// Maximal component containing h, or the degenerate [h, h].
  Interval component_of(double h) const;

  /// Right end of the component at the origin (0 when the curve touches its envelope there).
  double origin_contact() const;
  /// B = -pbar'(0)
  double origin_slope() const { return -slope(0.0); }

  /// Some components touch end to end, so the minimizer is not unique.
  bool has_tie() const { return tie_; }
  /// Largest residual of the endpoint conditions after refinement.
  double refinement_residual() const { return residual_; }
  const std::vector<std::string>& diagnostics() const { return notes_; }

 private:
  struct Segment {
    Interval span;
    double base;   // pbar(span.lo)
    double slope;  // constant pbar' on the span
  };
  const Segment* segment_at(double u) const;
  void refine_origin(Segment& seg, double lo_guess, double hi_guess);
  void refine_interior(Segment& seg);

  std::shared_ptr<const Curve> curve_;
  EnvelopeOptions opts_;
  std::vector<Segment> segments_;
  std::vector<Interval> components_;
  bool tie_ = false;
  double residual_ = 0.0;
  std::vector<std::string> notes_;
};

/// (u0, B): right end of the component at the origin and B = -pbar'(0).
struct Landmark {
  double contact = 0.0;
  double slope = 0.0;
};
Landmark landmark_u0_B(const EnvelopeAnalysis& analysis);

/// The slope u* > u0_front with front'(u*) = -B_rear.
double find_u_star(const EnvelopeAnalysis& front, const EnvelopeAnalysis& rear);

struct EnvelopeSample {
  double u;
  double p;
  double pbar;
  double pbar_slope;
};
std::vector<EnvelopeSample> sample_envelope(const EnvelopeAnalysis& analysis, double u_max, std::size_t n);

}  // namespace minres
