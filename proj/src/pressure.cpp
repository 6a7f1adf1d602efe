#include "minres/pressure.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "minres/errors.hpp"

namespace minres {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;

double slope_to_angle(double u) {
  if (!(u >= 0.0)) throw DomainError("slope u must be non-negative");
  return std::isinf(u) ? kHalfPi : std::atan(u);
}

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

// Weight of the positive-part square over the sphere S^{d-2}:
//   F(a, b) = int (a + b xi_1)_+^2 dxi, b >= 0, with partial derivatives.
struct Weight {
  double value;
  double da;
  double db;
};

Weight circle_weight(double a, double b) {
  if (a >= b) return {2.0 * kPi * a * a + kPi * b * b, 4.0 * kPi * a, 2.0 * kPi * b};
  if (a <= -b) return {0.0, 0.0, 0.0};
  double root = std::sqrt(std::max(0.0, b * b - a * a));
  double theta = std::acos(clamp_unit(-a / b));
  return {(2.0 * a * a + b * b) * theta + 3.0 * a * root, 4.0 * a * theta + 4.0 * root,
          2.0 * b * theta + 2.0 * a * root / b};
}

Weight sphere_weight(int d, double a, double b, const num::QuadTolerance& tol) {
  if (d == 3) return circle_weight(a, b);
  // S^{d-2}: measure |S^{d-3}| (1 - x^2)^{(d-4)/2} dx on x = xi_1.
  const double area = num::sphere_area(d - 2);
  const double expo = 0.5 * (d - 4);
  if (b <= 1e-300) {
    double ap = std::max(a, 0.0);
    double full = num::sphere_area(d - 1);
    return {ap * ap * full, 2.0 * ap * full, 0.0};
  }
  double lo = std::max(-1.0, -a / b);
  if (lo >= 1.0) return {0.0, 0.0, 0.0};
  auto w = [expo](double x) { return std::pow(std::max(0.0, 1.0 - x * x), expo); };
  num::ScalarFn fv = [&](double x) {
    double y = a + b * x;
    return y * y * w(x);
  };
  num::ScalarFn fa = [&](double x) { return 2.0 * (a + b * x) * w(x); };
  num::ScalarFn fb = [&](double x) { return 2.0 * (a + b * x) * x * w(x); };
  return {area * num::integrate(fv, lo, 1.0, tol), area * num::integrate(fa, lo, 1.0, tol),
          area * num::integrate(fb, lo, 1.0, tol)};
}

std::vector<double> sorted_breaks(std::initializer_list<double> pts, double lo, double hi) {
  std::vector<double> out{lo, hi};
  for (double p : pts)
    if (p > lo && p < hi) out.push_back(p);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---- generic reduction through the radial marginal ----------------------

double generic_value(const VarrhoKernel& rho, double eps, double phi, const num::QuadTolerance& tol) {
  const int d = rho.dimension();
  if (d == 2) {
    num::ScalarFn f = [&](double beta) {
      double c = std::cos(beta);
      return c * c * rho(clamp_unit(-eps * std::cos(beta + phi)));
    };
    auto br = sorted_breaks({-phi, kHalfPi - phi}, -kHalfPi, kHalfPi);
    return eps * num::integrate_pieces(f, br, tol);
  }
  const double cphi = std::cos(phi);
  const double sphi = std::sin(phi);
  const double expo = 0.5 * (d - 3);
  num::ScalarFn f = [&](double zeta) {
    double s2 = std::max(0.0, 1.0 - zeta * zeta);
    double s = std::sqrt(s2);
    Weight w = sphere_weight(d, -eps * zeta * cphi, s * sphi, tol);
    double jac = expo == 0.0 ? 1.0 : std::pow(s2, expo);
    return rho(zeta) * jac * w.value;
  };
  auto br = sorted_breaks({-sphi, sphi}, -1.0, 1.0);
  return eps * num::integrate_pieces(f, br, tol, true);
}

// d p / d phi
double generic_angle_slope(const VarrhoKernel& rho, double eps, double phi, const num::QuadTolerance& tol) {
  const int d = rho.dimension();
  if (d == 2) {
    num::ScalarFn f = [&](double beta) { return std::sin(2.0 * beta) * rho(clamp_unit(-eps * std::cos(beta + phi))); };
    auto br = sorted_breaks({-phi, kHalfPi - phi}, -kHalfPi, kHalfPi);
    return eps * num::integrate_pieces(f, br, tol);
  }
  const double cphi = std::cos(phi);
  const double sphi = std::sin(phi);
  const double expo = 0.5 * (d - 3);
  num::ScalarFn f = [&](double zeta) {
    double s2 = std::max(0.0, 1.0 - zeta * zeta);
    double s = std::sqrt(s2);
    Weight w = sphere_weight(d, -eps * zeta * cphi, s * sphi, tol);
    double jac = expo == 0.0 ? 1.0 : std::pow(s2, expo);
    return rho(zeta) * jac * (w.da * eps * zeta * sphi + w.db * s * cphi);
  };
  auto br = sorted_breaks({-sphi, sphi}, -1.0, 1.0);
  return eps * num::integrate_pieces(f, br, tol, true);
}

// ---- Gaussian closed forms ----------------------------------------------

const num::QuadTolerance kClosedFormTol{1e-300, 1e-13, 4000};

double closed_value_2d(double eps, double phi, double v, const num::QuadTolerance& tol) {
  num::ScalarFn f = [&](double tau) {
    double m[5];
    scaled_gaussian_moments(eps * v * std::cos(tau + phi), v, m);
    double c = std::cos(tau);
    return c * c * 0.5 * m[3];
  };
  auto br = sorted_breaks({-phi, kHalfPi - phi}, -kHalfPi, kHalfPi);
  return eps / kPi * num::integrate_pieces(f, br, tol);
}

double closed_angle_slope_2d(double eps, double phi, double v, const num::QuadTolerance& tol) {
  num::ScalarFn f = [&](double tau) {
    double m[5];
    scaled_gaussian_moments(eps * v * std::cos(tau + phi), v, m);
    double c = std::cos(tau);
    return c * c * std::sin(tau + phi) * m[4];
  };
  auto br = sorted_breaks({-phi, kHalfPi - phi}, -kHalfPi, kHalfPi);
  return -v / (2.0 * kPi) * num::integrate_pieces(f, br, tol);
}

// u-derivative of the angular weight
double angular_weight_slope(double u, double zeta) {
  const double w = 1.0 + u * u;
  const double s = std::sqrt(std::max(0.0, 1.0 - zeta * zeta));
  const double band = u / std::sqrt(w);
  if (zeta <= -band) return 0.0;
  const double a = zeta;
  const double b = u * s;
  if (zeta >= band) {
    double k = 2.0 * a * a + b * b;
    return 2.0 * kPi * b * s / w - 2.0 * u * kPi * k / (w * w);
  }
  double root = std::sqrt(std::max(0.0, u * u - zeta * zeta * w));
  double theta = std::acos(clamp_unit(-zeta / (u * s)));
  double big_f = (2.0 * a * a + b * b) * theta + 3.0 * a * root;
  double dfdb = 2.0 * b * theta + 2.0 * a * root / b;
  return s * dfdb / w - 2.0 * u * big_f / (w * w);
}

double integrate_banded(const num::ScalarFn& f, double band, const num::QuadTolerance& tol) {
  const std::array<double, 3> br{-band, band, 1.0};
  return num::integrate_pieces(f, br, tol, true);
}

double closed_value_3d(double eps, double u, double v, const num::QuadTolerance& tol) {
  const double pref = eps * std::pow(2.0 * kPi, -1.5);
  num::ScalarFn f = [&](double zeta) {
    double m[5];
    scaled_gaussian_moments(eps * v * zeta, v, m);
    return m[4] * gaussian_angular_weight(u, zeta);
  };
  double band = std::isinf(u) ? 1.0 : u / std::sqrt(1.0 + u * u);
  if (std::isinf(u)) {
    num::ScalarFn g = [&](double zeta) {
      double m[5];
      scaled_gaussian_moments(eps * v * zeta, v, m);
      return m[4] * 0.5 * kPi * (1.0 - zeta * zeta);
    };
    return pref * num::integrate(g, -1.0, 1.0, tol);
  }
  return pref * integrate_banded(f, band, tol);
}

double closed_slope_3d(double eps, double u, double v, const num::QuadTolerance& tol) {
  if (std::isinf(u)) return 0.0;
  const double pref = eps * std::pow(2.0 * kPi, -1.5);
  num::ScalarFn f = [&](double zeta) {
    double m[5];
    scaled_gaussian_moments(eps * v * zeta, v, m);
    return m[4] * angular_weight_slope(u, zeta);
  };
  double band = u / std::sqrt(1.0 + u * u);
  return pref * integrate_banded(f, band, tol);
}

// Sum over Gaussian components w g(s r): p = sum w s^{-(d+2)} p_g(u, s V).
template <class F>
double over_gaussian_terms(const FlowContext& ctx, F&& unit) {
  auto terms = ctx.density().gaussian_terms();
  const int d = ctx.dimension();
  double total = 0.0;
  for (auto [w, s] : *terms) {
    if (w == 0.0) continue;
    total += w * std::pow(s, -(d + 2)) * unit(s * ctx.speed());
  }
  return total;
}

}  // namespace

std::string to_string(Side side) { return side == Side::Front ? "front" : "rear"; }

std::string to_string(Backend backend) {
  switch (backend) {
    case Backend::Auto: return "auto";
    case Backend::Generic: return "generic";
    case Backend::GaussianClosedForm2D: return "gaussian-2d";
    case Backend::GaussianClosedForm3D: return "gaussian-3d";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------

void scaled_gaussian_moments(double z, double speed, double out[5]) {
  const double damp = std::exp(-0.5 * speed * speed);
  if (z < -8.0) {
    // Asymptotic series of int r^k e^{-r^2/2 - t r} dr, t = -z.
    const double t = -z;
    for (int k = 0; k <= 4; ++k) {
      double term = std::tgamma(k + 1.0) / std::pow(t, k + 1);
      double sum = term;
      for (int n = 0; n < 200; ++n) {
        double next = -term * (k + 2.0 * n + 1.0) * (k + 2.0 * n + 2.0) / (2.0 * (n + 1.0) * t * t);
        if (std::abs(next) >= std::abs(term)) break;
        term = next;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
      }
      out[k] = damp * sum;
    }
    return;
  }
  const double root_half_pi = std::sqrt(0.5 * kPi);
  const double x = z / std::sqrt(2.0);
  double m0;
  if (z >= 0.0) {
    double lead = 2.0 * std::exp(0.5 * (z * z - speed * speed));
    // erfcx(x) <= 1, so the correction is negligible once damp is below the rounding of lead.
    m0 = root_half_pi * (damp < 1e-18 * lead ? lead : lead - damp * num::erfcx(x));
  }
  else
    m0 = root_half_pi * damp * num::erfcx(-x);
  out[0] = m0;
  out[1] = damp + z * out[0];
  out[2] = out[0] + z * out[1];
  out[3] = 2.0 * out[1] + z * out[2];
  out[4] = 3.0 * out[2] + z * out[3];
}

double gaussian_l_kernel(double z) {
  double m[5];
  scaled_gaussian_moments(z, 0.0, m);
  return 0.5 * m[3];
}

double gaussian_i_kernel(double z) {
  double m[5];
  scaled_gaussian_moments(z, 0.0, m);
  return m[4];
}

double gaussian_angular_weight(double u, double zeta) {
  if (!(u >= 0.0)) throw DomainError("slope u must be non-negative");
  const double w = 1.0 + u * u;
  const double band = u / std::sqrt(w);
  if (zeta <= -band) return 0.0;
  const double z2 = zeta * zeta;
  if (zeta >= band) return kPi * (2.0 * z2 + u * u * (1.0 - z2)) / w;
  const double theta0 = std::acos(clamp_unit(-zeta / (u * std::sqrt(1.0 - z2))));
  const double root = std::sqrt(std::max(0.0, u * u - z2 * w));
  return (theta0 * (2.0 * z2 + u * u * (1.0 - z2)) + 3.0 * zeta * root) / w;
}

double gaussian_pressure_2d(Side side, double u, double speed) {
  return closed_value_2d(sign_of(side), slope_to_angle(u), speed, kClosedFormTol);
}

double gaussian_pressure_slope_2d(Side side, double u, double speed) {
  double phi = slope_to_angle(u);
  double c = std::cos(phi);
  return c * c * closed_angle_slope_2d(sign_of(side), phi, speed, kClosedFormTol);
}

double gaussian_pressure_tail_2d(Side side, double speed) {
  return closed_value_2d(sign_of(side), kHalfPi, speed, kClosedFormTol);
}

double gaussian_pressure_3d(Side side, double u, double speed) {
  if (!(u >= 0.0)) throw DomainError("slope u must be non-negative");
  return closed_value_3d(sign_of(side), u, speed, kClosedFormTol);
}

double gaussian_pressure_slope_3d(Side side, double u, double speed) {
  if (!(u >= 0.0)) throw DomainError("slope u must be non-negative");
  return closed_slope_3d(sign_of(side), u, speed, kClosedFormTol);
}

double gaussian_pressure_tail_3d(Side side, double speed) {
  return closed_value_3d(sign_of(side), std::numeric_limits<double>::infinity(), speed, kClosedFormTol);
}

// ---------------------------------------------------------------------------

VarrhoKernel::VarrhoKernel(RadialDensity density, double speed)
    : density_(std::move(density)), speed_(speed), nodes_(density_.breakpoints()) {
  if (!(speed >= 0.0) || !std::isfinite(speed)) throw DomainError("kernel speed must be non-negative");
  num::ChebyshevTable::Options opts{16, 1e-14, 0.0, 22};
  double floor_value = direct(1.0);
  log_table_ = floor_value > 1e-280;
  if (log_table_) {
    // Interpolated densities make rho only finitely smooth where the support edge crosses a node.
    opts.abs_tol = nodes_.empty() ? 1e-13 : 1e-11;
    opts.rel_tol = 0.0;
    table_ = num::ChebyshevTable::build([this](double z) { return std::log(direct(z)); }, -1.0, 1.0, opts);
  } else {
    table_ = num::ChebyshevTable::build([this](double z) { return direct(z); }, -1.0, 1.0, opts);
  }
}

double VarrhoKernel::operator()(double z) const {
  if (std::abs(z) > 1.0 + 1e-12) throw DomainError("varrho: |z| must not exceed 1");
  return log_table_ ? std::exp(table_(z)) : table_(z);
}

double VarrhoKernel::derivative(double z) const {
  if (std::abs(z) > 1.0 + 1e-12) throw DomainError("varrho: |z| must not exceed 1");
  return log_table_ ? std::exp(table_(z)) * table_.derivative(z) : table_.derivative(z);
}

double VarrhoKernel::direct(double z) const {
  if (std::abs(z) > 1.0 + 1e-12) throw DomainError("varrho: |z| must not exceed 1");
  z = clamp_unit(z);
  const int d = dimension();
  const double v = speed_;
  num::ScalarFn f = [&](double r) {
    double a = r + v * z;
    double s = std::sqrt(a * a + v * v * (1.0 - z * z));
    return std::pow(r, d + 1) * density_(s);
  };
  num::QuadTolerance tol{1e-300, 1e-14, 4000};
  return radial_integral(f, z, tol);
}

double VarrhoKernel::direct_derivative(double z) const {
  if (std::abs(z) > 1.0 + 1e-12) throw DomainError("varrho: |z| must not exceed 1");
  z = clamp_unit(z);
  const int d = dimension();
  const double v = speed_;
  num::ScalarFn f = [&](double r) {
    double a = r + v * z;
    double s = std::max(1e-12, std::sqrt(a * a + v * v * (1.0 - z * z)));
    return std::pow(r, d + 2) * v * density_.derivative(s) / s;
  };
  num::QuadTolerance tol{1e-300, 1e-13, 4000};
  return radial_integral(f, z, tol);
}

double VarrhoKernel::radial_integral(const num::ScalarFn& f, double z, const num::QuadTolerance& tol) const {
  const double v = speed_;
  if (nodes_.empty()) return num::integrate_half_line(f, std::max(0.0, -v * z), density_.length_scale(), tol);
  // |r + V z| has distance sqrt(r^2 + 2 r V z + V^2) = node at r = -V z +- sqrt(node^2 - V^2 (1 - z^2)).
  std::vector<double> breaks{0.0};
  const double across = v * v * (1.0 - z * z);
  for (double node : nodes_) {
    double gap = node * node - across;
    if (gap < 0.0) continue;
    for (double r : {-v * z - std::sqrt(gap), -v * z + std::sqrt(gap)})
      if (r > 0.0) breaks.push_back(r);
  }
  if (-v * z > 0.0) breaks.push_back(-v * z);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  return num::integrate_pieces(f, breaks, tol) +
         num::integrate_to_infinity(f, breaks.back(), density_.length_scale(), tol);
}

// ---------------------------------------------------------------------------

Backend select_backend(const FlowContext& ctx, Backend requested) {
  const int d = ctx.dimension();
  const bool gaussian_family = ctx.density().gaussian_terms().has_value();
  switch (requested) {
    case Backend::Auto:
      if (gaussian_family && d == 2) return Backend::GaussianClosedForm2D;
      if (gaussian_family && d == 3) return Backend::GaussianClosedForm3D;
      return Backend::Generic;
    case Backend::Generic: return Backend::Generic;
    case Backend::GaussianClosedForm2D:
      if (!gaussian_family || d != 2) throw DomainError("two-dimensional closed form needs a Gaussian density, d=2");
      return requested;
    case Backend::GaussianClosedForm3D:
      if (!gaussian_family || d != 3) throw DomainError("three-dimensional closed form needs a Gaussian density, d=3");
      return requested;
  }
  return Backend::Generic;
}

PressureCurve::PressureCurve(FlowContext ctx, Side side, PressureOptions opts)
    : ctx_(std::move(ctx)), side_(side), backend_(select_backend(ctx_, opts.backend)), opts_(opts) {
  if (backend_ == Backend::Generic) kernel_ = std::make_shared<const VarrhoKernel>(ctx_);
  // Quadrature accuracy is judged against the size of the curve, not of each value:
  // the rear curve can be vanishingly small near u = 0 while its tail is not.
  tail_ = exact_tail();
  opts_.quad.abs = std::max(opts_.quad.abs, 1e-2 * opts_.quad.rel * std::abs(tail_));
  opts_.quad.abs = std::max(opts_.quad.abs, 1e-2 * opts_.quad.rel * std::abs(exact_value_phi(0.0)));
  values_ = num::ChebyshevTable::build([this](double phi) { return exact_value_phi(phi); }, 0.0, kHalfPi,
                                       opts_.table);
  slopes_ = num::ChebyshevTable::build([this](double phi) { return exact_slope_phi(phi); }, 0.0, kHalfPi,
                                       opts_.table);
}

double PressureCurve::exact_value_phi(double phi) const {
  const double eps = sign_of(side_);
  switch (backend_) {
    case Backend::GaussianClosedForm2D:
      return over_gaussian_terms(ctx_, [&](double v) { return closed_value_2d(eps, phi, v, opts_.quad); });
    case Backend::GaussianClosedForm3D: {
      double u = phi >= kHalfPi ? std::numeric_limits<double>::infinity() : std::tan(phi);
      return over_gaussian_terms(ctx_, [&](double v) { return closed_value_3d(eps, u, v, opts_.quad); });
    }
    default: return generic_value(*kernel_, eps, phi, opts_.quad);
  }
}

double PressureCurve::exact_slope_phi(double phi) const {
  const double eps = sign_of(side_);
  if (phi >= kHalfPi) return 0.0;
  const double c = std::cos(phi);
  switch (backend_) {
    case Backend::GaussianClosedForm2D:
      return c * c *
             over_gaussian_terms(ctx_, [&](double v) { return closed_angle_slope_2d(eps, phi, v, opts_.quad); });
    case Backend::GaussianClosedForm3D: {
      double u = std::tan(phi);
      return over_gaussian_terms(ctx_, [&](double v) { return closed_slope_3d(eps, u, v, opts_.quad); });
    }
    default: return c * c * generic_angle_slope(*kernel_, eps, phi, opts_.quad);
  }
}

double PressureCurve::exact_value(double u) const { return exact_value_phi(slope_to_angle(u)); }
double PressureCurve::exact_slope(double u) const { return exact_slope_phi(slope_to_angle(u)); }
double PressureCurve::exact_tail() const { return exact_value_phi(kHalfPi); }

double PressureCurve::value(double u) const { return values_(slope_to_angle(u)); }
double PressureCurve::slope(double u) const { return slopes_(slope_to_angle(u)); }

double PressureCurve::curvature(double u) const {
  double phi = slope_to_angle(u);
  double c = std::cos(phi);
  return slopes_.derivative(phi) * c * c;
}

}  // namespace minres
