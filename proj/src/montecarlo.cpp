#include "minres/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <span>
#include <vector>

#include "minres/errors.hpp"
#include "minres/numerics.hpp"
#include "minres/parallel.hpp"

namespace minres {

namespace {

/// Draws particle velocities w ~ sigma / nu in R^d.
class VelocitySampler {
 public:
  explicit VelocitySampler(const RadialDensity& density) : d_(density.dimension()) {
    if (auto terms = density.gaussian_terms()) {
      for (auto [w, s] : *terms) {
        double mass = w * std::pow(s, -d_);
        weights_.push_back(mass);
        inv_scales_.push_back(1.0 / s);
        total_ += mass;
      }
      return;
    }
    build_radial_table(density);
  }

  template <class Rng>
  void operator()(Rng& rng, std::span<double> v) const {
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unit;
    for (auto& x : v) x = normal(rng);
    if (!weights_.empty()) {
      std::size_t i = 0;
      if (weights_.size() > 1) {
        double pick = unit(rng) * total_;
        while (i + 1 < weights_.size() && pick >= weights_[i]) pick -= weights_[i++];
      }
      for (auto& x : v) x *= inv_scales_[i];
      return;
    }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    double r = radius(unit(rng));
    for (auto& x : v) x *= r / norm;
  }

 private:
  void build_radial_table(const RadialDensity& density) {
    const double L = density.length_scale();
    auto mass = [&](double r) { return std::pow(r, d_ - 1) * density(r); };
    double r_max = 4.0 * L;
    double peak = 0.0;
    for (double r = 0.0; r < r_max; r += 0.01 * L) peak = std::max(peak, mass(r));
    while (mass(r_max) > 1e-17 * peak && r_max < 1e4 * L) r_max *= 1.25;
    const std::size_t n = 1 << 14;
    radii_.resize(n + 1);
    cdf_.assign(n + 1, 0.0);
    for (std::size_t i = 0; i <= n; ++i) radii_[i] = r_max * static_cast<double>(i) / n;
    for (std::size_t i = 1; i <= n; ++i) {
      cdf_[i] = cdf_[i - 1] + num::integrate(mass, radii_[i - 1], radii_[i], {1e-300, 1e-12, 200});
    }
    const double total = cdf_.back();
    if (!(total > 0.0)) throw InputError("density has no mass to sample");
    for (auto& c : cdf_) c /= total;
  }

  double radius(double x) const {
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), x);
    std::size_t i = std::clamp<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), 1, cdf_.size() - 1);
    double span = cdf_[i] - cdf_[i - 1];
    double f = span > 0.0 ? (x - cdf_[i - 1]) / span : 0.0;
    return radii_[i - 1] + f * (radii_[i] - radii_[i - 1]);
  }

  int d_;
  std::vector<double> weights_;
  std::vector<double> inv_scales_;
  double total_ = 0.0;
  std::vector<double> radii_;
  std::vector<double> cdf_;
};

double impact(double sign, double slope, double v_lateral, double v_axial) {
  double proj = v_lateral * slope + sign * v_axial;
  if (proj >= 0.0) return 0.0;
  return sign * proj * proj / (1.0 + slope * slope);
}

}  // namespace

McEstimate estimate_resistance(const BodyProfile& body, const FlowContext& ctx, const McOptions& opts) {
  const int d = ctx.dimension();
  if (body.dimension != d) throw InputError("profile and flow dimensions differ");
  if (opts.samples < 1000) throw InputError("at least 1000 samples are required");
  if (opts.chunk == 0) throw InputError("chunk size must be positive");
  for (const SideProfile* side : {&body.front, &body.rear}) {
    auto defects = side->defects();
    if (!defects.empty()) throw InputError("invalid profile: " + defects.front());
  }

  const VelocitySampler sampler(ctx.density());
  const double flux = flux_density(ctx);
  const double V = ctx.speed();
  const double inv_e = 1.0 / (d - 1.0);

  const std::size_t chunks = (opts.samples + opts.chunk - 1) / opts.chunk;
  std::vector<double> sums(chunks, 0.0);
  std::vector<double> squares(chunks, 0.0);
  parallel_for(chunks, [&](std::size_t c) {
    std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unit;
    std::vector<double> v(static_cast<std::size_t>(d));
    const std::size_t begin = c * opts.chunk;
    const std::size_t end = std::min(opts.samples, begin + opts.chunk);
    double sum = 0.0;
    double sq = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      sampler(rng, v);
      const double lateral = v.front();
      const double axial = v.back() - V;
      const double s_front = body.front.slope(std::pow(unit(rng), inv_e));
      const double s_rear = body.rear.slope(std::pow(unit(rng), inv_e));
      double x = impact(1.0, s_front, lateral, axial) + impact(-1.0, s_rear, lateral, axial);
      if (opts.antithetic) {
        x = 0.5 * (x + impact(1.0, s_front, -lateral, axial) + impact(-1.0, s_rear, -lateral, axial));
      }
      x *= flux;
      sum += x;
      sq += x * x;
    }
    sums[c] = sum;
    squares[c] = sq;
  });

  double sum = 0.0;
  double sq = 0.0;
  for (std::size_t c = 0; c < chunks; ++c) {
    sum += sums[c];
    sq += squares[c];
  }
  const double n = static_cast<double>(opts.samples);
  const double mean = sum / n;
  const double var = std::max(0.0, (sq - n * mean * mean) / (n - 1.0));
  return {mean, std::sqrt(var / n), opts.samples, opts.seed};
}

}  // namespace minres
