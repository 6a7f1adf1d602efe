#include "minres/medium.hpp"

#include <algorithm>
#include <cmath>

using std::isnan;  // pchip in Boost 1.74 calls isnan unqualified
#include <boost/math/interpolators/pchip.hpp>
#include <limits>
#include <numbers>
#include <sstream>
#include <variant>

#include "minres/errors.hpp"
#include "minres/numerics.hpp"

namespace minres {

std::string to_string(DensityKind kind) {
  switch (kind) {
    case DensityKind::Gaussian: return "gaussian";
    case DensityKind::Maxwell: return "maxwell";
    case DensityKind::Mixture: return "mixture";
    case DensityKind::Tabulated: return "tabulated";
  }
  return "unknown";
}

namespace {

struct GaussianData {};
struct MaxwellData {
  double mass;
  double temperature;
  double number_density;
};
struct MixtureData {
  std::vector<RadialDensity::Term> terms;
};
struct TabulatedData {
  std::vector<double> r;
  std::vector<double> sigma;
  std::shared_ptr<boost::math::interpolators::pchip<std::vector<double>>> spline;
};

void check_dimension(int d) {
  if (d < 2) throw DomainError("dimension must be at least 2");
}

}  // namespace

struct RadialDensity::Impl {
  int d;
  std::variant<GaussianData, MaxwellData, MixtureData, TabulatedData> data;
  double norm = 1.0;   // Gaussian and Maxwell prefactor
  double kappa = 1.0;  // Maxwell inverse thermal speed
};

RadialDensity RadialDensity::gaussian(int d) {
  check_dimension(d);
  auto impl = std::make_shared<Impl>(Impl{d, GaussianData{}});
  impl->norm = std::pow(2.0 * std::numbers::pi, -0.5 * d);
  return RadialDensity(impl);
}

RadialDensity RadialDensity::maxwell(int d, double mass, double temperature, double number_density) {
  check_dimension(d);
  if (!(mass > 0.0) || !(temperature > 0.0) || !(number_density > 0.0))
    throw DomainError("maxwell: mass, temperature and density must be positive");
  auto impl = std::make_shared<Impl>(Impl{d, MaxwellData{mass, temperature, number_density}});
  impl->kappa = std::sqrt(mass / temperature);
  impl->norm = number_density * std::pow(mass / (2.0 * std::numbers::pi * temperature), 0.5 * d);
  return RadialDensity(impl);
}

RadialDensity::Term RadialDensity::term(double weight, double scale, const RadialDensity& base) {
  return Term{weight, scale, std::make_shared<const RadialDensity>(base)};
}

RadialDensity RadialDensity::mixture(int d, std::vector<Term> terms) {
  check_dimension(d);
  if (terms.empty()) throw InputError("mixture: at least one component required");
  for (const Term& t : terms) {
    if (!(t.weight >= 0.0) || !(t.scale > 0.0) || !t.base)
      throw DomainError("mixture: weights must be >= 0 and scales > 0");
    if (t.base->dimension() != d) throw InputError("mixture: component dimension mismatch");
  }
  return RadialDensity(std::make_shared<Impl>(Impl{d, MixtureData{std::move(terms)}}));
}

RadialDensity RadialDensity::scaled_pair(const RadialDensity& base, double alpha, double beta) {
  return mixture(base.dimension(), {term(1.0, 1.0, base), term(alpha, beta, base)});
}

RadialDensity RadialDensity::tabulated(int d, std::vector<double> r, std::vector<double> sigma) {
  check_dimension(d);
  if (r.size() != sigma.size()) throw InputError("tabulated: r and sigma lengths differ");
  if (r.size() < 4) throw InputError("tabulated: at least 4 nodes required");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!std::isfinite(r[i]) || !std::isfinite(sigma[i])) throw InputError("tabulated: non-finite value");
    if (i > 0 && !(r[i] > r[i - 1])) throw InputError("tabulated: r must be strictly increasing");
  }
  if (r.front() < 0.0) throw InputError("tabulated: r must be non-negative");
  TabulatedData data{r, sigma, nullptr};
  data.spline = std::make_shared<boost::math::interpolators::pchip<std::vector<double>>>(std::move(r),
                                                                                        std::move(sigma));
  return RadialDensity(std::make_shared<Impl>(Impl{d, std::move(data)}));
}

DensityKind RadialDensity::kind() const {
  return static_cast<DensityKind>(impl_->data.index());
}

int RadialDensity::dimension() const { return impl_->d; }

double RadialDensity::operator()(double r) const {
  const Impl& m = *impl_;
  switch (kind()) {
    case DensityKind::Gaussian: return m.norm * std::exp(-0.5 * r * r);
    case DensityKind::Maxwell: {
      double x = m.kappa * r;
      return m.norm * std::exp(-0.5 * x * x);
    }
    case DensityKind::Mixture: {
      double s = 0.0;
      for (const Term& t : std::get<MixtureData>(m.data).terms) s += t.weight * (*t.base)(t.scale * r);
      return s;
    }
    case DensityKind::Tabulated: {
      const auto& tab = std::get<TabulatedData>(m.data);
      if (r >= tab.r.back()) return r == tab.r.back() ? tab.sigma.back() : 0.0;
      if (r <= tab.r.front()) return tab.sigma.front();
      return (*tab.spline)(r);
    }
  }
  return 0.0;
}

double RadialDensity::derivative(double r) const {
  const Impl& m = *impl_;
  switch (kind()) {
    case DensityKind::Gaussian: return -r * m.norm * std::exp(-0.5 * r * r);
    case DensityKind::Maxwell: {
      double x = m.kappa * r;
      return -m.kappa * x * m.norm * std::exp(-0.5 * x * x);
    }
    case DensityKind::Mixture: {
      double s = 0.0;
      for (const Term& t : std::get<MixtureData>(m.data).terms)
        s += t.weight * t.scale * t.base->derivative(t.scale * r);
      return s;
    }
    case DensityKind::Tabulated: {
      const auto& tab = std::get<TabulatedData>(m.data);
      if (r >= tab.r.back() || r < tab.r.front()) return 0.0;
      return tab.spline->prime(r);
    }
  }
  return 0.0;
}

double RadialDensity::length_scale() const {
  const Impl& m = *impl_;
  switch (kind()) {
    case DensityKind::Gaussian: return 1.0;
    case DensityKind::Maxwell: return 1.0 / m.kappa;
    case DensityKind::Mixture: {
      double s = std::numeric_limits<double>::infinity();
      for (const Term& t : std::get<MixtureData>(m.data).terms) s = std::min(s, t.base->length_scale() / t.scale);
      return s;
    }
    case DensityKind::Tabulated: {
      const auto& tab = std::get<TabulatedData>(m.data);
      return (tab.r.back() - tab.r.front()) / 16.0;
    }
  }
  return 1.0;
}

std::vector<double> RadialDensity::breakpoints() const {
  const Impl& m = *impl_;
  std::vector<double> out;
  if (kind() == DensityKind::Tabulated) {
    out = std::get<TabulatedData>(m.data).r;
  } else if (kind() == DensityKind::Mixture) {
    for (const Term& t : std::get<MixtureData>(m.data).terms) {
      for (double r : t.base->breakpoints()) out.push_back(r / t.scale);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return out;
}

std::optional<std::vector<std::pair<double, double>>> RadialDensity::gaussian_terms() const {
  const Impl& m = *impl_;
  switch (kind()) {
    case DensityKind::Gaussian: return std::vector<std::pair<double, double>>{{1.0, 1.0}};
    case DensityKind::Maxwell: {
      // norm * exp(-(kappa r)^2/2) = w * (2 pi)^{-d/2} exp(-(kappa r)^2/2)
      double w = m.norm * std::pow(2.0 * std::numbers::pi, 0.5 * m.d);
      return std::vector<std::pair<double, double>>{{w, m.kappa}};
    }
    case DensityKind::Mixture: {
      std::vector<std::pair<double, double>> out;
      for (const Term& t : std::get<MixtureData>(m.data).terms) {
        auto inner = t.base->gaussian_terms();
        if (!inner) return std::nullopt;
        for (auto [w, s] : *inner) out.emplace_back(t.weight * w, t.scale * s);
      }
      return out;
    }
    case DensityKind::Tabulated: return std::nullopt;
  }
  return std::nullopt;
}

double RadialDensity::mass() const { return std::get<MaxwellData>(impl_->data).mass; }
double RadialDensity::temperature() const { return std::get<MaxwellData>(impl_->data).temperature; }
double RadialDensity::number_density() const { return std::get<MaxwellData>(impl_->data).number_density; }
const std::vector<RadialDensity::Term>& RadialDensity::terms() const {
  return std::get<MixtureData>(impl_->data).terms;
}
const std::vector<double>& RadialDensity::grid_r() const { return std::get<TabulatedData>(impl_->data).r; }
const std::vector<double>& RadialDensity::grid_sigma() const {
  return std::get<TabulatedData>(impl_->data).sigma;
}

// ---------------------------------------------------------------------------

FlowContext::FlowContext(RadialDensity density, double speed) : density_(std::move(density)), speed_(speed) {
  if (!(speed > 0.0) || !std::isfinite(speed)) throw DomainError("flow speed V must be positive and finite");
}

ValidationGrid ValidationGrid::log_spaced(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) throw InputError("validation grid: need 0 < lo < hi and n >= 2");
  ValidationGrid g;
  g.r.resize(n);
  double step = std::log(hi / lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) g.r[i] = lo * std::exp(step * static_cast<double>(i));
  g.r.back() = hi;
  return g;
}

std::vector<std::string> Admissibility::violated() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.passed) out.push_back(c.name);
  return out;
}

Admissibility validate_condition_A(const RadialDensity& density, const ValidationGrid& grid) {
  const auto& r = grid.r;
  if (r.empty()) throw InputError("validation grid is empty");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] > 0.0) || !std::isfinite(r[i])) throw InputError("validation grid must be positive and finite");
    if (i > 0 && !(r[i] > r[i - 1])) throw InputError("validation grid must be strictly increasing");
  }
  const int d = density.dimension();
  const std::size_t n = r.size();
  std::vector<double> s(n), g(n), t(n);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = density(r[i]);
    double ds = density.derivative(r[i]);
    if (!std::isfinite(s[i])) throw InputError("density value is not finite");
    g[i] = ds / r[i];
    t[i] = std::pow(r[i], d + 2) * s[i];
  }
  const double tol = grid.tolerance;
  Admissibility out;

  CheckResult nonneg{"nonnegative"};
  double smax = *std::max_element(s.begin(), s.end());
  for (std::size_t i = 0; i < n; ++i) {
    if (s[i] < -tol * std::max(smax, 1e-300) && -s[i] > nonneg.magnitude) {
      nonneg.passed = false;
      nonneg.magnitude = -s[i];
      nonneg.worst_r = r[i];
    }
  }
  out.checks.push_back(nonneg);

  double gmax = 0.0;
  bool gfinite = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(g[i])) gfinite = false;
    else gmax = std::max(gmax, std::abs(g[i]));
  }

  CheckResult negative{"derivative_ratio_negative"};
  if (gmax == 0.0) {
    negative.passed = false;
    negative.worst_r = r.front();
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (std::isfinite(g[i]) && g[i] > tol * gmax && g[i] > negative.magnitude) {
      negative.passed = false;
      negative.magnitude = g[i];
      negative.worst_r = r[i];
    }
  }
  out.checks.push_back(negative);

  CheckResult bounded{"derivative_ratio_bounded_below"};
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(g[i])) {
      bounded.passed = false;
      bounded.worst_r = r[i];
      bounded.magnitude = std::numeric_limits<double>::infinity();
      break;
    }
  }
  out.checks.push_back(bounded);

  CheckResult increasing{"derivative_ratio_increasing"};
  if (gfinite) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      double drop = g[i] - g[i + 1];
      if (drop > tol * gmax && drop > increasing.magnitude) {
        increasing.passed = false;
        increasing.magnitude = drop;
        increasing.worst_r = r[i + 1];
      }
    }
  }
  if (!increasing.passed && grid.lenient) {
    std::ostringstream msg;
    msg << "sigma'/r decreases by " << increasing.magnitude << " near r=" << increasing.worst_r;
    out.warnings.push_back(msg.str());
    increasing.passed = true;
  }
  out.checks.push_back(increasing);

  CheckResult tail{"moment_finite"};
  double tmax = 0.0;
  for (double v : t) tmax = std::max(tmax, std::abs(v));
  std::size_t start = n - std::max<std::size_t>(n / 10, 2);
  for (std::size_t i = start; i + 1 < n; ++i) {
    double rise = t[i + 1] - t[i];
    if (rise > tol * tmax && rise > tail.magnitude) {
      tail.passed = false;
      tail.magnitude = rise;
      tail.worst_r = r[i + 1];
    }
  }
  if (tmax > 0.0 && std::abs(t.back()) > 1e-8 * tmax) {
    tail.passed = false;
    tail.worst_r = r.back();
    tail.magnitude = std::max(tail.magnitude, std::abs(t.back()) / tmax);
  }
  out.checks.push_back(tail);

  for (const auto& c : out.checks) out.admissible = out.admissible && c.passed;
  return out;
}

double moment(const RadialDensity& density, int k) {
  if (k < 0) throw DomainError("moment order must be non-negative");
  num::ScalarFn f = [&](double r) { return r == 0.0 ? (k == 0 ? density(0.0) : 0.0) : density(r) * std::pow(r, k); };
  num::QuadTolerance tol{1e-300, 1e-13, 4000};
  return num::integrate_to_infinity(f, 0.0, density.length_scale(), tol);
}

double flux_density(const RadialDensity& density) {
  const int d = density.dimension();
  return num::sphere_area(d) * moment(density, d - 1);
}

double flux_density(const FlowContext& ctx) { return flux_density(ctx.density()); }

}  // namespace minres
