#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace minres::num {

using ScalarFn = std::function<double(double)>;

struct QuadTolerance {
  double abs = 1e-14;
  double rel = 1e-12;
  std::size_t max_panels = 4000;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;  // integral of |f|
  std::size_t panels = 0;
  bool converged = false;
};

/// Globally adaptive Gauss-Kronrod (21 point) integration on a finite interval.
/// The relative tolerance applies to the integral of |f|.
QuadResult integrate_adaptive(const ScalarFn& f, double a, double b, const QuadTolerance& tol = {});

/// Same, but throws NumericError when the error target is missed.
double integrate(const ScalarFn& f, double a, double b, const QuadTolerance& tol = {});

/// Integrates over consecutive sorted breakpoints; empty pieces are skipped. With edge_map, each interval is mapped by x = m + h sin t,
/// which absorbs square-root behaviour at the interval ends.
double integrate_pieces(const ScalarFn& f, std::span<const double> breaks, const QuadTolerance& tol = {},
                        bool edge_map = false);

/// Integral over [a, +inf) by marching panels of geometrically growing width.
/// Stops once |f(r)|*r falls below 1e-15 of the running total. Throws NumericError
/// when the tail does not decay.
double integrate_to_infinity(const ScalarFn& f, double a, double step, const QuadTolerance& tol = {});

/// Integral over [0, +inf) of an integrand concentrated around `peak`.
double integrate_half_line(const ScalarFn& f, double peak, double step, const QuadTolerance& tol = {});

/// Piecewise Chebyshev interpolant with adaptive bisection of panels.
class ChebyshevTable {
 public:
  struct Options {
    int degree = 16;
    double rel_tol = 1e-13;
    double abs_tol = 0.0;
    int max_depth = 22;
  };

  ChebyshevTable() = default;
  static ChebyshevTable build(const ScalarFn& f, double a, double b, const Options& opts);
  static ChebyshevTable build(const ScalarFn& f, double a, double b) { return build(f, a, b, Options{}); }

  double operator()(double x) const;
  double derivative(double x) const;
  double lower() const { return panels_.front().a; }
  double upper() const { return panels_.back().b; }
  std::size_t panel_count() const { return panels_.size(); }
  bool empty() const { return panels_.empty(); }
  /// Number of panels accepted only because max_depth was reached.
  std::size_t unresolved() const { return unresolved_; }

 private:
  struct Panel {
    double a;
    double b;
    std::vector<double> coef;
    std::vector<double> dcoef;
  };
  const Panel& locate(double x) const;
  std::vector<Panel> panels_;
  std::size_t unresolved_ = 0;
};

/// Scaled complementary error function exp(x^2) erfc(x).
double erfcx(double x);

/// Surface area of the unit sphere S^{n-1} in R^n.
double sphere_area(int n);

/// Root of a function that is increasing across [lo, hi] (f(lo) <= 0 <= f(hi)).
/// Terminates on |f| <= ftol, interval width <= xtol, or max_iter.
struct RootResult {
  double x = 0.0;
  double residual = 0.0;
  int iterations = 0;
};
RootResult bisect_increasing(const ScalarFn& f, double lo, double hi, double xtol = 1e-14, double ftol = 0.0,
                             int max_iter = 200);

/// Largest x in [lo, hi] with pred(x) true, assuming pred is true on a prefix.
double bisect_predicate(const std::function<bool(double)>& pred, double lo, double hi, double xtol = 1e-14,
                        int max_iter = 200);

/// Brent-type (TOMS 748) root on a sign-changing bracket.
double solve_bracketed(const ScalarFn& f, double lo, double hi, double xtol = 1e-15, int max_iter = 200);

}  // namespace minres::num
