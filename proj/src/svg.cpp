#include "minres/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "minres/errors.hpp"

namespace minres {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 56.0;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b"};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

std::string tick(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

struct Frame {
  double x0, x1, y0, y1;
  double px(double x) const { return kMargin + (x - x0) / (x1 - x0) * (kWidth - 2 * kMargin); }
  double py(double y) const { return kHeight - kMargin - (y - y0) / (y1 - y0) * (kHeight - 2 * kMargin); }
};

Frame frame_for(const std::vector<Series>& series) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series) {
    for (double x : s.x) {
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
    }
    for (double y : s.y) {
      if (!std::isfinite(y)) continue;
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  if (!(x1 > x0)) x1 = x0 + 1.0;
  if (!(y1 > y0)) y1 = y0 + 1.0;
  double pad = 0.05 * (y1 - y0);
  return {x0, x1, std::min(0.0, y0 - pad), y1 + pad};
}

void header(std::ostringstream& out) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void axes(std::ostringstream& out, const Frame& f, const std::string& xl, const std::string& yl) {
  out << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n"
      << "<rect x=\"" << fmt(kMargin) << "\" y=\"" << fmt(kMargin) << "\" width=\"" << fmt(kWidth - 2 * kMargin)
      << "\" height=\"" << fmt(kHeight - 2 * kMargin) << "\"/>\n</g>\n";
  out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
  for (int i = 0; i <= 5; ++i) {
    double x = f.x0 + (f.x1 - f.x0) * i / 5.0;
    double y = f.y0 + (f.y1 - f.y0) * i / 5.0;
    out << "<text x=\"" << fmt(f.px(x)) << "\" y=\"" << fmt(kHeight - kMargin + 16) << "\" text-anchor=\"middle\">"
        << tick(x) << "</text>\n";
    out << "<text x=\"" << fmt(kMargin - 6) << "\" y=\"" << fmt(f.py(y) + 4) << "\" text-anchor=\"end\">" << tick(y)
        << "</text>\n";
  }
  out << "<text x=\"" << fmt(kWidth / 2) << "\" y=\"" << fmt(kHeight - 12) << "\" text-anchor=\"middle\">" << xl
      << "</text>\n";
  out << "<text x=\"14\" y=\"" << fmt(kHeight / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
      << fmt(kHeight / 2) << ")\">" << yl << "</text>\n</g>\n";
}

void polyline(std::ostringstream& out, const Frame& f, const std::vector<double>& x, const std::vector<double>& y,
              const std::string& color) {
  out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(y[i])) continue;
    out << fmt(f.px(x[i])) << ',' << fmt(f.py(y[i])) << ' ';
  }
  out << "\"/>\n";
}

void legend(std::ostringstream& out, const std::vector<Series>& series) {
  out << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    double y = kMargin + 14 + 14 * static_cast<double>(i);
    const char* color = kPalette[i % std::size(kPalette)];
    out << "<line x1=\"" << fmt(kWidth - kMargin - 110) << "\" y1=\"" << fmt(y - 4) << "\" x2=\""
        << fmt(kWidth - kMargin - 92) << "\" y2=\"" << fmt(y - 4) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << fmt(kWidth - kMargin - 88) << "\" y=\"" << fmt(y) << "\">" << series[i].label
        << "</text>\n";
  }
  out << "</g>\n";
}

}  // namespace

std::string curves_svg(const std::vector<Series>& series, const std::string& x_label, const std::string& y_label) {
  if (series.empty()) throw InputError("nothing to plot");
  Frame f = frame_for(series);
  std::ostringstream out;
  header(out);
  axes(out, f, x_label, y_label);
  for (std::size_t i = 0; i < series.size(); ++i) {
    polyline(out, f, series[i].x, series[i].y, kPalette[i % std::size(kPalette)]);
  }
  legend(out, series);
  out << "</svg>\n";
  return out.str();
}

std::string region_svg(const std::vector<RegionRow>& rows) {
  if (rows.empty()) throw InputError("empty region table");
  Series a{"u+0", {}, {}}, b{"u*", {}, {}}, c{"u*+u-0", {}, {}};
  for (const auto& r : rows) {
    for (Series* s : {&a, &b, &c}) s->x.push_back(r.V);
    a.y.push_back(r.u_plus0);
    b.y.push_back(r.u_star);
    c.y.push_back(r.u_star_plus_u_minus0);
  }
  std::vector<Series> all{a, b, c};
  Frame f = frame_for(all);
  std::ostringstream out;
  header(out);
  // Bands between consecutive curves.
  const char* fills[] = {"#dbe9f6", "#fde0dd", "#e5f5e0", "#efedf5"};
  std::vector<const std::vector<double>*> bounds{nullptr, &a.y, &b.y, &c.y, nullptr};
  for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
    out << "<polygon fill=\"" << fills[k] << "\" stroke=\"none\" points=\"";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      double y = bounds[k] ? (*bounds[k])[i] : f.y0;
      out << fmt(f.px(rows[i].V)) << ',' << fmt(f.py(y)) << ' ';
    }
    for (std::size_t i = rows.size(); i-- > 0;) {
      double y = bounds[k + 1] ? std::min((*bounds[k + 1])[i], f.y1) : f.y1;
      out << fmt(f.px(rows[i].V)) << ',' << fmt(f.py(y)) << ' ';
    }
    out << "\"/>\n";
  }
  axes(out, f, "V", "h");
  for (std::size_t i = 0; i < all.size(); ++i) polyline(out, f, all[i].x, all[i].y, kPalette[i]);
  legend(out, all);
  out << "</svg>\n";
  return out.str();
}

std::string h_star_svg(const std::vector<HStarRow>& rows) {
  if (rows.empty()) throw InputError("empty h* table");
  Series s{"h*", {}, {}};
  for (const auto& r : rows) {
    s.x.push_back(r.V);
    s.y.push_back(r.h_star);
  }
  return curves_svg({s}, "V", "h");
}

std::string profile_svg(const BodyProfile& body, std::size_t samples) {
  std::vector<double> xs;
  std::vector<double> top;
  std::vector<double> bottom;
  for (std::size_t i = 0; i <= 2 * samples; ++i) {
    double x = -1.0 + static_cast<double>(i) / static_cast<double>(samples);
    double t = std::min(1.0, std::abs(x));
    xs.push_back(x);
    top.push_back(-body.front(t));
    bottom.push_back(body.rear(t));
  }
  // Equal scales on both axes.
  const double span = std::max(2.0, body.h) * 1.1;
  const double mid = 0.5 * (body.h_plus - body.h_minus);
  const double scale = std::min(kWidth, kHeight) - 2 * kMargin;
  auto px = [&](double x) { return kWidth / 2 + x / span * scale; };
  auto py = [&](double y) { return kHeight / 2 - (y - mid) / span * scale; };
  std::ostringstream out;
  header(out);
  out << "<polygon fill=\"#c6dbef\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) out << fmt(px(xs[i])) << ',' << fmt(py(top[i])) << ' ';
  for (std::size_t i = xs.size(); i-- > 0;) out << fmt(px(xs[i])) << ',' << fmt(py(bottom[i])) << ' ';
  out << "\"/>\n";
  out << "<line x1=\"" << fmt(px(-1.0)) << "\" y1=\"" << fmt(py(0.0)) << "\" x2=\"" << fmt(px(1.0)) << "\" y2=\""
      << fmt(py(0.0)) << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  out << "<text x=\"" << fmt(kMargin) << "\" y=\"" << fmt(kMargin / 2) << "\" font-family=\"sans-serif\" "
      << "font-size=\"12\">d = " << body.dimension << ", h = " << tick(body.h) << ", h+ = " << tick(body.h_plus)
      << ", h- = " << tick(body.h_minus) << ", " << to_string(body.kind) << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace minres
