#include "minres/numerics.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>
#include <queue>
#include <sstream>

#include "minres/errors.hpp"

namespace minres::num {

namespace {

struct Piece {
  double a;
  double b;
  double value;
  double error;
  double l1;
  bool operator<(const Piece& other) const { return error < other.error; }
};

Piece gk_piece(const ScalarFn& f, double a, double b) {
  double err = 0.0;
  double l1 = 0.0;
  double v = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(f, a, b, 0, 0.0, &err, &l1);
  // Without recursion Boost reports the error on the reference interval [-1, 1].
  return {a, b, v, err * 0.5 * std::abs(b - a), l1};
}

}  // namespace

QuadResult integrate_adaptive(const ScalarFn& f, double a, double b, const QuadTolerance& tol) {
  QuadResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  if (!(std::isfinite(a) && std::isfinite(b))) throw DomainError("integrate_adaptive: bounds must be finite");
  std::priority_queue<Piece> heap;
  Piece first = gk_piece(f, a, b);
  heap.push(first);
  double total = first.value;
  double total_err = first.error;
  double total_l1 = first.l1;
  std::size_t panels = 1;
  // Accuracy is measured against the integral of |f| so sign-changing integrands with a small net value converge.
  auto target = [&] { return std::max(tol.abs, tol.rel * total_l1); };
  while (total_err > target() && panels < tol.max_panels) {
    Piece worst = heap.top();
    double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // interval exhausted at double resolution
    heap.pop();
    Piece left = gk_piece(f, worst.a, mid);
    Piece right = gk_piece(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    total_l1 += left.l1 + right.l1 - worst.l1;
    heap.push(left);
    heap.push(right);
    ++panels;
  }
  // Re-sum to shed the accumulated rounding of incremental updates.
  total = 0.0;
  total_err = 0.0;
  total_l1 = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    total_err += heap.top().error;
    total_l1 += heap.top().l1;
    heap.pop();
  }
  out.value = total;
  out.error = total_err;
  out.l1 = total_l1;
  out.panels = panels;
  out.converged = total_err <= target();
  if (!std::isfinite(total)) out.converged = false;
  return out;
}

double integrate(const ScalarFn& f, double a, double b, const QuadTolerance& tol) {
  QuadResult r = integrate_adaptive(f, a, b, tol);
  if (!r.converged) {
    // Accept a result whose error estimate is within a modest factor of the target;
    // the Kronrod-Gauss difference overestimates the error of smooth integrands.
    double target = std::max(tol.abs, tol.rel * r.l1);
    if (!std::isfinite(r.value) || r.error > 1e3 * target) {
      std::ostringstream msg;
      msg << "quadrature did not converge on [" << a << ", " << b << "]: estimate " << r.value << ", error "
          << r.error;
      throw NumericError(msg.str());
    }
  }
  return r.value;
}

double integrate_pieces(const ScalarFn& f, std::span<const double> breaks, const QuadTolerance& tol,
                        bool edge_map) {
  auto piece_fn = [&](double a, double b) -> std::pair<ScalarFn, std::pair<double, double>> {
    if (!edge_map) return {f, {a, b}};
    double m = 0.5 * (a + b);
    double h = 0.5 * (b - a);
    ScalarFn g = [&f, m, h](double t) { return f(m + h * std::sin(t)) * h * std::cos(t); };
    return {g, {-0.5 * std::numbers::pi, 0.5 * std::numbers::pi}};
  };
  // A coarse pass fixes the overall scale so that small pieces share an absolute target.
  double scale = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) continue;
    auto [g, range] = piece_fn(breaks[i], breaks[i + 1]);
    scale += gk_piece(g, range.first, range.second).l1;
  }
  QuadTolerance local = tol;
  local.abs = std::max(tol.abs, 0.1 * tol.rel * scale);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) continue;
    auto [g, range] = piece_fn(breaks[i], breaks[i + 1]);
    total += integrate(g, range.first, range.second, local);
  }
  return total;
}

double integrate_to_infinity(const ScalarFn& f, double a, double step, const QuadTolerance& tol) {
  if (!(step > 0.0)) throw DomainError("integrate_to_infinity: step must be positive");
  double total = 0.0;
  double lo = a;
  double width = step;
  for (int k = 0; k < 90; ++k) {
    double hi = lo + width;
    QuadTolerance local = tol;
    local.abs = std::max(tol.abs, 0.1 * tol.rel * std::abs(total));
    double piece = integrate(f, lo, hi, local);
    total += piece;
    double edge = std::abs(f(hi)) * (hi - a + step);
    double scale = std::abs(total);
    if (edge <= 1e-16 * scale && std::abs(piece) <= 1e-15 * scale) return total;
    if (scale == 0.0 && edge == 0.0 && piece == 0.0 && k > 4) return total;
    lo = hi;
    width *= 2.0;
  }
  throw NumericError("integral over [a, inf) does not converge: integrand tail does not decay");
}

double integrate_half_line(const ScalarFn& f, double peak, double step, const QuadTolerance& tol) {
  double total = integrate_to_infinity(f, std::max(peak, 0.0), step, tol);
  double hi = std::max(peak, 0.0);
  double width = step;
  while (hi > 0.0) {
    double lo = std::max(0.0, hi - width);
    QuadTolerance local = tol;
    local.abs = std::max(tol.abs, 0.1 * tol.rel * std::abs(total));
    total += integrate(f, lo, hi, local);
    hi = lo;
    width *= 2.0;
  }
  return total;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<double> cheb_coefficients(std::span<const double> values) {
  // values at Lobatto nodes x_j = cos(pi j / n), j = 0..n
  const int n = static_cast<int>(values.size()) - 1;
  std::vector<double> c(n + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    double s = 0.0;
    for (int j = 0; j <= n; ++j) {
      double w = (j == 0 || j == n) ? 0.5 : 1.0;
      s += w * values[j] * std::cos(std::numbers::pi * j * k / n);
    }
    c[k] = 2.0 * s / n;
  }
  c[0] *= 0.5;
  c[n] *= 0.5;
  return c;
}

std::vector<double> cheb_derivative(const std::vector<double>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  std::vector<double> d(n + 1, 0.0);
  if (n == 0) return d;
  d[n - 1] = 2.0 * n * c[n];
  for (int k = n - 2; k >= 0; --k) d[k] = (k + 2 < n + 1 ? d[k + 2] : 0.0) + 2.0 * (k + 1) * c[k + 1];
  d[0] *= 0.5;
  return d;
}

double clenshaw(const std::vector<double>& c, double t) {
  double b1 = 0.0;
  double b2 = 0.0;
  for (int k = static_cast<int>(c.size()) - 1; k >= 1; --k) {
    double b0 = 2.0 * t * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return t * b1 - b2 + c[0];
}

}  // namespace

ChebyshevTable ChebyshevTable::build(const ScalarFn& f, double a, double b, const Options& opts) {
  if (!(b > a)) throw DomainError("ChebyshevTable: empty interval");
  ChebyshevTable table;
  double scale = 0.0;
  for (int i = 0; i <= 32; ++i) scale = std::max(scale, std::abs(f(a + (b - a) * i / 32.0)));
  const int n = opts.degree;

  std::function<void(double, double, int)> refine = [&](double lo, double hi, int depth) {
    std::vector<double> vals(n + 1);
    for (int j = 0; j <= n; ++j) {
      double x = 0.5 * (lo + hi) + 0.5 * (hi - lo) * std::cos(std::numbers::pi * j / n);
      if (j == 0) x = hi;
      if (j == n) x = lo;
      vals[j] = f(x);
      if (!std::isfinite(vals[j])) throw NumericError("ChebyshevTable: non-finite sample");
      scale = std::max(scale, std::abs(vals[j]));
    }
    std::vector<double> c = cheb_coefficients(vals);
    double tail = std::max({std::abs(c[n]), std::abs(c[n - 1]), std::abs(c[n - 2])});
    double tol = std::max(opts.abs_tol, opts.rel_tol * scale);
    if (tail <= tol || depth >= opts.max_depth) {
      if (tail > tol) ++table.unresolved_;
      Panel p{lo, hi, c, cheb_derivative(c)};
      double s = 2.0 / (hi - lo);
      for (double& v : p.dcoef) v *= s;
      table.panels_.push_back(std::move(p));
      return;
    }
    double mid = 0.5 * (lo + hi);
    refine(lo, mid, depth + 1);
    refine(mid, hi, depth + 1);
  };
  refine(a, b, 0);
  return table;
}

const ChebyshevTable::Panel& ChebyshevTable::locate(double x) const {
  if (panels_.empty()) throw InvariantError("ChebyshevTable: evaluation of empty table");
  auto it = std::lower_bound(panels_.begin(), panels_.end(), x,
                             [](const Panel& p, double v) { return p.b < v; });
  if (it == panels_.end()) --it;
  return *it;
}

double ChebyshevTable::operator()(double x) const {
  const Panel& p = locate(x);
  double t = std::clamp((2.0 * x - p.a - p.b) / (p.b - p.a), -1.0, 1.0);
  return clenshaw(p.coef, t);
}

double ChebyshevTable::derivative(double x) const {
  const Panel& p = locate(x);
  double t = std::clamp((2.0 * x - p.a - p.b) / (p.b - p.a), -1.0, 1.0);
  return clenshaw(p.dcoef, t);
}

// ---------------------------------------------------------------------------

double erfcx(double x) {
  if (x < 0.0) {
    if (x < -26.5) return std::numeric_limits<double>::infinity();
    return 2.0 * std::exp(x * x) - erfcx(-x);
  }
  if (x < 5.0) return std::exp(x * x) * std::erfc(x);
  double t = x;
  for (int k = 80; k >= 1; --k) t = x + 0.5 * k / t;
  return 1.0 / (std::sqrt(std::numbers::pi) * t);
}

double sphere_area(int n) {
  if (n < 1) throw DomainError("sphere_area: dimension must be >= 1");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

RootResult bisect_increasing(const ScalarFn& f, double lo, double hi, double xtol, double ftol, int max_iter) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo > 0.0 || fhi < 0.0) {
    std::ostringstream msg;
    msg << "bisection bracket [" << lo << ", " << hi << "] does not straddle a root (" << flo << ", " << fhi
        << ")";
    throw NumericError(msg.str());
  }
  RootResult r;
  if (flo == 0.0) return {lo, 0.0, 0};
  if (fhi == 0.0) return {hi, 0.0, 0};
  for (r.iterations = 0; r.iterations < max_iter; ++r.iterations) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if (fm <= 0.0) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
    if (std::abs(fm) <= ftol || hi - lo <= xtol * std::max(1.0, std::abs(mid))) break;
  }
  if (std::abs(flo) <= std::abs(fhi)) {
    r.x = lo;
    r.residual = flo;
  } else {
    r.x = hi;
    r.residual = fhi;
  }
  return r;
}

double bisect_predicate(const std::function<bool(double)>& pred, double lo, double hi, double xtol,
                        int max_iter) {
  for (int i = 0; i < max_iter && hi - lo > xtol * std::max(1.0, std::abs(hi)); ++i) {
    double mid = 0.5 * (lo + hi);
    if (pred(mid))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

double solve_bracketed(const ScalarFn& f, double lo, double hi, double xtol, int max_iter) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    std::ostringstream msg;
    msg << "root bracket [" << lo << ", " << hi << "] has no sign change";
    throw NumericError(msg.str());
  }
  std::uintmax_t iters = static_cast<std::uintmax_t>(max_iter);
  auto stop = [xtol](double x0, double x1) { return std::abs(x1 - x0) <= xtol * std::max(1.0, std::abs(x0)); };
  auto res = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, stop, iters);
  return 0.5 * (res.first + res.second);
}

}  // namespace minres::num
