#include "minres/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "minres/errors.hpp"

namespace minres {

using Json = nlohmann::ordered_json;

namespace {

Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

RadialDensity density_from(const Json& j, std::optional<int> d_override) {
  if (!j.is_object()) throw InputError("density must be a JSON object");
  const std::string kind = j.value("kind", "gaussian");
  int d = d_override.value_or(j.value("d", 2));
  if (d_override && j.contains("d") && j["d"].get<int>() != *d_override) {
    throw InputError("density dimension does not match --d");
  }
  if (kind == "gaussian") return RadialDensity::gaussian(d);
  if (kind == "maxwell") {
    return RadialDensity::maxwell(d, j.at("mass").get<double>(), j.at("temperature").get<double>(),
                                  j.value("number_density", 1.0));
  }
  if (kind == "mixture") {
    std::vector<RadialDensity::Term> terms;
    for (const auto& t : j.at("terms")) {
      Json base = t.value("base", Json{{"kind", "gaussian"}});
      terms.push_back(RadialDensity::term(t.at("weight").get<double>(), t.value("scale", 1.0), density_from(base, d)));
    }
    return RadialDensity::mixture(d, std::move(terms));
  }
  if (kind == "tabulated") {
    return RadialDensity::tabulated(d, j.at("r").get<std::vector<double>>(), j.at("sigma").get<std::vector<double>>());
  }
  throw InputError("unknown density kind '" + kind + "'");
}

Json density_json(const RadialDensity& density) {
  Json j;
  j["kind"] = to_string(density.kind());
  j["d"] = density.dimension();
  switch (density.kind()) {
    case DensityKind::Gaussian:
      break;
    case DensityKind::Maxwell:
      j["mass"] = density.mass();
      j["temperature"] = density.temperature();
      j["number_density"] = density.number_density();
      break;
    case DensityKind::Mixture: {
      Json terms = Json::array();
      for (const auto& t : density.terms()) {
        terms.push_back({{"weight", t.weight}, {"scale", t.scale}, {"base", density_json(*t.base)}});
      }
      j["terms"] = terms;
      break;
    }
    case DensityKind::Tabulated:
      j["r"] = density.grid_r();
      j["sigma"] = density.grid_sigma();
      break;
  }
  return j;
}

Json knots_json(const std::vector<Knot>& knots) {
  Json out = Json::array();
  for (const auto& k : knots) out.push_back({{"t", k.t}, {"y", k.y}});
  return out;
}

Json segments_json(const SideProfile& side) {
  Json out = Json::array();
  const auto& k = side.knots();
  for (std::size_t i = 0; i + 1 < k.size(); ++i) {
    bool arc = side.parametric() && i + 2 == k.size() && side.flat_end() < 1.0;
    out.push_back({{"t0", k[i].t}, {"t1", k[i + 1].t}, {"kind", arc ? "parametric" : "linear"}, {"parametric", arc}});
  }
  return out;
}

Json profile_json(const BodyProfile& body, std::size_t arc_samples) {
  auto points = [&](const SideProfile& s) { return s.parametric() ? s.sample(arc_samples) : s.knots(); };
  Json j;
  j["d"] = body.dimension;
  j["h"] = body.h;
  j["h_plus"] = body.h_plus;
  j["h_minus"] = body.h_minus;
  j["kind"] = to_string(body.kind);
  j["f_plus"] = knots_json(points(body.front));
  j["f_minus"] = knots_json(points(body.rear));
  j["f_plus_segments"] = segments_json(body.front);
  j["f_minus_segments"] = segments_json(body.rear);
  return j;
}

Json report_json(const SolveReport& r) {
  Json j;
  j["R"] = r.R;
  j["ball_factor"] = r.ball_factor;
  j["body_resistance"] = r.ball_factor * r.R;
  j["h_plus"] = r.h_plus;
  j["h_minus"] = r.h_minus;
  j["kind"] = to_string(r.kind);
  j["landmarks"] = {{"u_plus0", r.landmarks.u_plus0},
                    {"u_minus0", r.landmarks.u_minus0},
                    {"u_star", number_or_null(r.landmarks.u_star)},
                    {"B_plus", r.landmarks.B_plus},
                    {"B_minus", r.landmarks.B_minus}};
  j["U_plus"] = number_or_null(r.U_plus);
  j["U_minus"] = number_or_null(r.U_minus);
  j["h_star"] = number_or_null(r.h_star);
  j["split_residual"] = r.split_residual;
  j["iterations"] = r.iterations;
  j["tie"] = r.tie;
  j["diagnostics"] = r.diagnostics;
  return j;
}

SideProfile side_from(const Json& knots, double height, const char* name) {
  std::vector<Knot> pts;
  for (const auto& k : knots) pts.push_back({k.at("t").get<double>(), k.at("y").get<double>()});
  SideProfile side = SideProfile::polyline(std::move(pts));
  const double tol = 1e-9 * std::max(1.0, height);
  if (std::abs(side.height() - height) > tol) throw InputError(std::string(name) + " does not start at -height");
  auto defects = side.defects(tol);
  if (!defects.empty()) throw InputError(std::string(name) + ": " + defects.front());
  return side;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

RadialDensity parse_density_json(const std::string& text, std::optional<int> d) {
  try {
    return density_from(Json::parse(text), d);
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed density JSON: ") + e.what());
  }
}

RadialDensity read_density_csv(std::istream& in, int d) {
  std::vector<double> r;
  std::vector<double> sigma;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    for (auto& c : line) {
      if (c == ',' || c == ';' || c == '\t') c = ' ';
    }
    std::istringstream row(line);
    double a = 0.0;
    double b = 0.0;
    if (!(row >> a >> b)) {
      if (r.empty()) continue;  // header
      throw InputError("malformed density CSV line: " + line);
    }
    r.push_back(a);
    sigma.push_back(b);
  }
  return RadialDensity::tabulated(d, std::move(r), std::move(sigma));
}

RadialDensity load_density(const std::filesystem::path& path, std::optional<int> d) {
  if (path.extension() == ".csv") {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    return read_density_csv(in, d.value_or(2));
  }
  return parse_density_json(read_text(path), d);
}

std::string density_to_json(const RadialDensity& density) { return dump(density_json(density)); }

std::string profile_to_json(const BodyProfile& body, std::size_t arc_samples) {
  return dump(profile_json(body, arc_samples));
}

std::string report_to_json(const SolveReport& report) { return dump(report_json(report)); }

std::string solution_to_json(const Solution& solution, std::size_t arc_samples) {
  Json j;
  j["profile"] = profile_json(solution.profile, arc_samples);
  j["report"] = report_json(solution.report);
  return dump(j);
}

BodyProfile profile_from_json(const std::string& text) {
  try {
    Json j = Json::parse(text);
    if (j.contains("profile")) j = j["profile"];
    BodyProfile body;
    body.dimension = j.at("d").get<int>();
    body.h = j.at("h").get<double>();
    body.h_plus = j.at("h_plus").get<double>();
    body.h_minus = j.at("h_minus").get<double>();
    body.kind = parse_solution_kind(j.at("kind").get<std::string>());
    if (body.dimension < 2) throw InputError("profile dimension must be at least 2");
    if (!(body.h > 0.0) || body.h_plus < 0.0 || body.h_minus < 0.0) throw InputError("profile heights are invalid");
    if (std::abs(body.h_plus + body.h_minus - body.h) > 1e-12 * body.h) {
      throw InputError("profile heights do not add up");
    }
    body.front = side_from(j.at("f_plus"), body.h_plus, "f_plus");
    body.rear = side_from(j.at("f_minus"), body.h_minus, "f_minus");
    return body;
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed profile JSON: ") + e.what());
  }
}

std::string mc_to_json(const McEstimate& e, double analytic) {
  Json j;
  j["R_mc"] = e.mean;
  j["se"] = e.standard_error;
  j["R_analytic"] = analytic;
  j["z_score"] = e.standard_error > 0.0 ? (e.mean - analytic) / e.standard_error : 0.0;
  j["n"] = e.samples;
  j["seed"] = e.seed;
  return dump(j);
}

std::string region_csv(const std::vector<RegionRow>& rows) {
  std::ostringstream out;
  out << "V,u_plus0,u_star,u_star_plus_u_minus0\n";
  for (const auto& r : rows) {
    out << format_number(r.V) << ',' << format_number(r.u_plus0) << ',' << format_number(r.u_star) << ','
        << format_number(r.u_star_plus_u_minus0) << '\n';
  }
  return out.str();
}

std::string h_star_csv(const std::vector<HStarRow>& rows) {
  std::ostringstream out;
  out << "V,h_star\n";
  for (const auto& r : rows) out << format_number(r.V) << ',' << format_number(r.h_star) << '\n';
  return out.str();
}

std::string envelope_csv(const EnvelopeAnalysis& analysis, double u_max, std::size_t n) {
  std::ostringstream out;
  out << "u,p,pbar,pbar_slope\n";
  for (const auto& s : sample_envelope(analysis, u_max, n)) {
    out << format_number(s.u) << ',' << format_number(s.p) << ',' << format_number(s.pbar) << ','
        << format_number(s.pbar_slope) << '\n';
  }
  return out.str();
}

std::string components_json(const EnvelopeAnalysis& analysis) {
  Json j = Json::array();
  for (const auto& c : analysis.components()) j.push_back({c.lo, c.hi});
  return j.dump() + "\n";
}

std::string pressure_csv(const Curve& front, const Curve& rear, double u_max, std::size_t n) {
  if (n < 2) throw InputError("need at least two samples");
  std::ostringstream out;
  out << "u,pp,pm,dpp,dpm\n";
  for (std::size_t i = 0; i < n; ++i) {
    double u = u_max * static_cast<double>(i) / static_cast<double>(n - 1);
    out << format_number(u) << ',' << format_number(front.value(u)) << ',' << format_number(rear.value(u)) << ','
        << format_number(front.slope(u)) << ',' << format_number(rear.slope(u)) << '\n';
  }
  return out.str();
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

}  // namespace minres
