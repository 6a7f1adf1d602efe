#pragma once

#include <memory>
#include <string>
#include <vector>

#include "minres/curve.hpp"
#include "minres/medium.hpp"
#include "minres/numerics.hpp"

namespace minres {

/// Front (upstream) or rear surface of the body.
enum class Side { Front = 1, Rear = -1 };

inline double sign_of(Side side) { return side == Side::Front ? 1.0 : -1.0; }
std::string to_string(Side side);

enum class Backend { Auto, Generic, GaussianClosedForm2D, GaussianClosedForm3D };
std::string to_string(Backend backend);

/// Radial marginal rho(z) = int_0^inf r^{d+1} sigma(sqrt(r^2 + 2 r V z + V^2)) dr on [-1, 1].
class VarrhoKernel {
 public:
  /// speed may be zero here (the z-independent limit).
  VarrhoKernel(RadialDensity density, double speed);
  explicit VarrhoKernel(const FlowContext& ctx) : VarrhoKernel(ctx.density(), ctx.speed()) {}

  double operator()(double z) const;
  double derivative(double z) const;
  /// Defining integral evaluated by quadrature, bypassing the table.
  double direct(double z) const;
  double direct_derivative(double z) const;

  int dimension() const { return density_.dimension(); }
  double speed() const { return speed_; }
  std::size_t panel_count() const { return table_.panel_count(); }

 private:
  /// Integral over r in [0, inf), split where |r + V z e| crosses a node of the density.
  double radial_integral(const num::ScalarFn& f, double z, const num::QuadTolerance& tol) const;

  RadialDensity density_;
  double speed_;
  std::vector<double> nodes_;
  bool log_table_ = true;
  num::ChebyshevTable table_;
};

// Closed forms for the unit Gaussian.

/// l(z) = 1 + z^2/2 + sqrt(pi)/(2 sqrt 2) e^{z^2/2} (3z + z^3)(1 + erf(z/sqrt 2))
double gaussian_l_kernel(double z);
/// I(z) = sqrt(pi/2) e^{z^2/2} (3 + 6z^2 + z^4)(1 + erf(z/sqrt 2)) + 5z + z^3
double gaussian_i_kernel(double z);
/// e^{-V^2/2} int_0^inf r^k e^{-r^2/2 + z r} dr for k = 0..4, stable for all z with |z| <= V.
void scaled_gaussian_moments(double z, double speed, double out[5]);
/// Angular weight of the three-dimensional closed form; zero below the band.
double gaussian_angular_weight(double u, double zeta);

double gaussian_pressure_2d(Side side, double u, double speed);
double gaussian_pressure_3d(Side side, double u, double speed);
double gaussian_pressure_slope_2d(Side side, double u, double speed);
double gaussian_pressure_slope_3d(Side side, double u, double speed);
double gaussian_pressure_tail_2d(Side side, double speed);
double gaussian_pressure_tail_3d(Side side, double speed);

struct PressureOptions {
  Backend backend = Backend::Auto;
  /// The table tolerance must stay above the quadrature noise of the sampled values.
  num::ChebyshevTable::Options table{16, 1e-10, 0.0, 16};
  num::QuadTolerance quad{1e-300, 1e-13, 4000};
};

/// p_eps(u, V) for one side of the body, tabulated over the compactified slope
/// phi = atan(u) in [0, pi/2] and evaluable exactly through the chosen backend.
class PressureCurve : public Curve {
 public:
  PressureCurve(FlowContext ctx, Side side, PressureOptions opts = {});

  double value(double u) const override;
  double slope(double u) const override;
  double curvature(double u) const override;
  double tail() const override { return tail_; }

  double exact_value(double u) const;
  double exact_slope(double u) const;
  double exact_tail() const;

  Side side() const { return side_; }
  Backend backend() const { return backend_; }
  const FlowContext& context() const { return ctx_; }
  std::size_t panel_count() const { return values_.panel_count() + slopes_.panel_count(); }

 private:
  double exact_value_phi(double phi) const;
  double exact_slope_phi(double phi) const;

  FlowContext ctx_;
  Side side_;
  Backend backend_;
  PressureOptions opts_;
  std::shared_ptr<const VarrhoKernel> kernel_;
  num::ChebyshevTable values_;
  num::ChebyshevTable slopes_;
  double tail_ = 0.0;
};

/// Resolves Backend::Auto for a context.
Backend select_backend(const FlowContext& ctx, Backend requested);

}  // namespace minres
