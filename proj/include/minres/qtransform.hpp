#pragma once

#include <memory>
#include <vector>

#include "minres/envelope.hpp"
#include "minres/profile.hpp"

namespace minres {

/// q(u) = |pbar'(u)|^{-1/(d-2)} and its primitive Q for the d >= 3 side problem.
class QTransform {
 public:
  QTransform(std::shared_ptr<const EnvelopeAnalysis> envelope, int d);

  int dimension() const { return d_; }
  double omega() const { return omega_; }
  const EnvelopeAnalysis& envelope() const { return *env_; }

  double q(double u) const;
  /// Integral of q over [0, u]; panels up to a fixed node grid are cached.
  double Q(double u) const;
  /// u - Q(u)/q(u), non-decreasing from 0.
  double h_map(double u) const;
  /// pbar(u) + Q(u)/q(u)^{d-1}, non-increasing.
  double r_map(double u) const;

  /// Largest U with h_map(U) <= h.
  double solve_U(double h) const;

 private:
  double integrate_q(double a, double b) const;

  std::shared_ptr<const EnvelopeAnalysis> env_;
  int d_;
  double omega_;
  std::vector<double> nodes_;
  std::vector<double> cumulative_;
};

/// Flat disk on [0, t0] at -h, then the arc t = q(u)/q(U), y = -h + (u q(u) - Q(u))/q(U) up to u = U.
SideProfile build_profile_nd(std::shared_ptr<const QTransform> qt, double h, double U);

}  // namespace minres
