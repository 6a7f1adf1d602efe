#include "minres/qtransform.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "minres/errors.hpp"
#include "minres/numerics.hpp"

namespace minres {

namespace {

constexpr std::size_t kNodeCount = 512;
constexpr num::QuadTolerance kQTol{1e-300, 1e-13, 2000};

}  // namespace

QTransform::QTransform(std::shared_ptr<const EnvelopeAnalysis> envelope, int d)
    : env_(std::move(envelope)), d_(d), omega_(d > 2 ? 1.0 / (d - 2.0) : 0.0) {
  if (!env_) throw InputError("QTransform needs an envelope");
  if (d < 3) throw DomainError("QTransform requires d >= 3");
  nodes_.push_back(0.0);
  for (std::size_t k = 1; k < kNodeCount; ++k) {
    nodes_.push_back(std::tan(0.5 * M_PI * static_cast<double>(k) / kNodeCount));
  }
  for (const auto& c : env_->components()) {
    nodes_.push_back(c.lo);
    nodes_.push_back(c.hi);
  }
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  cumulative_.resize(nodes_.size(), 0.0);
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    cumulative_[i] = cumulative_[i - 1] + integrate_q(nodes_[i - 1], nodes_[i]);
  }
}

double QTransform::q(double u) const {
  double s = env_->slope(u);
  if (!(s < 0.0)) {
    std::ostringstream msg;
    msg << "envelope slope is not negative at u = " << u;
    throw NumericError(msg.str());
  }
  return std::pow(-s, -omega_);
}

double QTransform::integrate_q(double a, double b) const {
  if (b <= a) return 0.0;
  return num::integrate([this](double u) { return q(u); }, a, b, kQTol);
}

double QTransform::Q(double u) const {
  if (u < 0.0) throw DomainError("Q evaluated at negative u");
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), u);
  std::size_t i = static_cast<std::size_t>(it - nodes_.begin()) - 1;
  return cumulative_[i] + integrate_q(nodes_[i], u);
}

double QTransform::h_map(double u) const { return u - Q(u) / q(u); }

double QTransform::r_map(double u) const { return env_->value(u) + Q(u) / std::pow(q(u), d_ - 1.0); }

double QTransform::solve_U(double h) const {
  if (h < 0.0) throw DomainError("height must be non-negative");
  if (h == 0.0) return env_->origin_contact();
  double hi = std::max({1.0, 2.0 * h, env_->origin_contact()});
  while (h_map(hi) <= h) {
    hi *= 2.0;
    if (hi > 1e12) throw NumericError("no bracket for U - Q(U)/q(U) = h");
  }
  return num::bisect_predicate([&](double u) { return h_map(u) <= h; }, 0.0, hi, 1e-15 * hi, 200);
}

SideProfile build_profile_nd(std::shared_ptr<const QTransform> qt, double h, double U) {
  if (h < 0.0) throw DomainError("height must be non-negative");
  if (h == 0.0) return SideProfile::flat();
  const double qU = qt->q(U);
  const double t0 = qt->q(0.0) / qU;
  SideProfile::Arc arc;
  arc.u_lo = std::min(qt->envelope().origin_contact(), U);
  arc.u_hi = U;
  arc.t_of = [qt, qU](double u) { return qt->q(u) / qU; };
  arc.y_of = [qt, qU, h](double u) { return -h + (u * qt->q(u) - qt->Q(u)) / qU; };
  return SideProfile::with_arc(h, std::min(t0, 1.0), std::move(arc));
}

}  // namespace minres
