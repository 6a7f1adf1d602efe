#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace minres {

enum class DensityKind { Gaussian, Maxwell, Mixture, Tabulated };

std::string to_string(DensityKind kind);

/// Radial velocity distribution sigma(r) of the medium in R^d. Immutable and cheap to copy.
class RadialDensity {
 public:
  struct Term {
    double weight;  // alpha_i >= 0
    double scale;   // beta_i > 0, the term is weight * base(scale * r)
    std::shared_ptr<const RadialDensity> base;
  };

  /// (2 pi)^{-d/2} exp(-r^2/2)
  static RadialDensity gaussian(int d);
  /// number_density * (mass / (2 pi T))^{d/2} exp(-mass r^2 / (2 T)), temperature in energy units.
  static RadialDensity maxwell(int d, double mass, double temperature, double number_density);
  /// sum_i weight_i * base_i(scale_i * r)
  static RadialDensity mixture(int d, std::vector<Term> terms);
  static Term term(double weight, double scale, const RadialDensity& base);
  /// base(r) + alpha * base(beta r)
  static RadialDensity scaled_pair(const RadialDensity& base, double alpha, double beta);
  /// Monotone cubic interpolation of (r, sigma); zero beyond the last node.
  static RadialDensity tabulated(int d, std::vector<double> r, std::vector<double> sigma);

  DensityKind kind() const;
  int dimension() const;

  double operator()(double r) const;
  double derivative(double r) const;

  /// Typical speed; used to size quadrature panels.
  double length_scale() const;

  /// Radii where sigma is only finitely smooth (interpolation nodes), sorted; empty for analytic kinds.
  std::vector<double> breakpoints() const;

  /// When sigma(r) = sum_i w_i g(s_i r) with g the unit Gaussian, the list of (w_i, s_i).
  std::optional<std::vector<std::pair<double, double>>> gaussian_terms() const;

  // Kind-specific accessors (throw std::logic_error on the wrong kind).
  double mass() const;
  double temperature() const;
  double number_density() const;
  const std::vector<Term>& terms() const;
  const std::vector<double>& grid_r() const;
  const std::vector<double>& grid_sigma() const;

 private:
  struct Impl;
  explicit RadialDensity(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// Density, speed and dimension of the flow around the body.
class FlowContext {
 public:
  FlowContext(RadialDensity density, double speed);
  const RadialDensity& density() const { return density_; }
  double speed() const { return speed_; }
  int dimension() const { return density_.dimension(); }

 private:
  RadialDensity density_;
  double speed_;
};

struct ValidationGrid {
  std::vector<double> r;
  double tolerance = 1e-9;
  /// Report monotonicity failures of sigma'/r as warnings instead of rejecting.
  bool lenient = false;
  static ValidationGrid log_spaced(double lo = 1e-4, double hi = 40.0, std::size_t n = 512);
};

struct CheckResult {
  std::string name;
  bool passed = true;
  double worst_r = 0.0;
  double magnitude = 0.0;
};

struct Admissibility {
  bool admissible = true;
  std::vector<CheckResult> checks;
  std::vector<std::string> warnings;
  std::vector<std::string> violated() const;
};

Admissibility validate_condition_A(const RadialDensity& density,
                                   const ValidationGrid& grid = ValidationGrid::log_spaced());

/// Integral of sigma(r) r^k over [0, inf).
double moment(const RadialDensity& density, int k);

/// nu = |S^{d-1}| * moment(sigma, d-1)
double flux_density(const FlowContext& ctx);
double flux_density(const RadialDensity& density);

}  // namespace minres
