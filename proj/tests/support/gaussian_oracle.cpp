#include "gaussian_oracle.hpp"

namespace oracle {

Hull lower_hull(const std::function<double(double)>& f, double lo, double hi, int n) {
  Hull h;
  h.x.resize(n);
  h.y.resize(n);
  for (int i = 0; i < n; ++i) {
    h.x[i] = lo + (hi - lo) * i / (n - 1);
    h.y[i] = f(h.x[i]);
  }
  auto& v = h.vertices;
  for (int i = 0; i < n; ++i) {
    while (v.size() >= 2) {
      int a = v[v.size() - 2], b = v.back();
      double cross = (h.x[b] - h.x[a]) * (h.y[i] - h.y[a]) - (h.y[b] - h.y[a]) * (h.x[i] - h.x[a]);
      if (cross > 0.0) break;
      v.pop_back();
    }
    v.push_back(i);
  }
  return h;
}

double Hull::value(double at) const {
  for (std::size_t k = 0; k + 1 < vertices.size(); ++k) {
    int a = vertices[k], b = vertices[k + 1];
    if (at >= x[a] && at <= x[b]) return y[a] + (y[b] - y[a]) * (at - x[a]) / (x[b] - x[a]);
  }
  return y.back();
}

std::vector<std::pair<double, double>> Hull::gaps(double tol) const {
  std::vector<std::pair<double, double>> out;
  for (std::size_t k = 0; k + 1 < vertices.size(); ++k) {
    int a = vertices[k], b = vertices[k + 1];
    if (b == a + 1) continue;
    double worst = 0.0;
    for (int i = a + 1; i < b; ++i) {
      double chord = y[a] + (y[b] - y[a]) * (x[i] - x[a]) / (x[b] - x[a]);
      worst = std::max(worst, y[i] - chord);
    }
    if (worst > tol) out.emplace_back(x[a], x[b]);
  }
  return out;
}

}  // namespace oracle
