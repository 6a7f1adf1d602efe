#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "minres/asymptotics.hpp"
#include "minres/errors.hpp"
#include "minres/io.hpp"
#include "minres/montecarlo.hpp"
#include "minres/problem.hpp"
#include "minres/solve2d.hpp"
#include "minres/solve_nd.hpp"
#include "minres/svg.hpp"

namespace py = pybind11;
using namespace minres;

namespace {

using Release = py::call_guard<py::gil_scoped_release>;

py::object parse_json(const std::string& text) { return py::module_::import("json").attr("loads")(text); }

Side side_of(const std::string& name) {
  if (name == "front") return Side::Front;
  if (name == "rear") return Side::Rear;
  throw InputError("side must be 'front' or 'rear'");
}

py::dict landmarks_dict(const Landmarks& m) {
  py::dict d;
  d["u_plus0"] = m.u_plus0;
  d["B_plus"] = m.B_plus;
  d["u_minus0"] = m.u_minus0;
  d["B_minus"] = m.B_minus;
  d["u_star"] = m.u_star;
  return d;
}

py::dict sample_side(const SideProfile& side, std::size_t n) {
  std::vector<double> t, y;
  for (const auto& k : side.sample(n)) {
    t.push_back(k.t);
    y.push_back(k.y);
  }
  py::dict d;
  d["t"] = t;
  d["y"] = y;
  return d;
}

py::dict mc_dict(const McEstimate& e) {
  py::dict d;
  d["mean"] = e.mean;
  d["se"] = e.standard_error;
  d["n"] = e.samples;
  d["seed"] = e.seed;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Minimal resistance of convex bodies in a medium with thermal motion";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);
  py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);

  py::class_<RadialDensity>(m, "Density")
      .def_static("gaussian", &RadialDensity::gaussian, py::arg("d"))
      .def_static("maxwell", &RadialDensity::maxwell, py::arg("d"), py::arg("mass"), py::arg("temperature"),
                  py::arg("number_density") = 1.0)
      .def_static("scaled_pair", &RadialDensity::scaled_pair, py::arg("base"), py::arg("alpha"), py::arg("beta"))
      .def_static("tabulated", &RadialDensity::tabulated, py::arg("d"), py::arg("r"), py::arg("sigma"))
      .def_static(
          "from_json", [](const std::string& text, std::optional<int> d) { return parse_density_json(text, d); },
          py::arg("text"), py::arg("d") = py::none())
      .def_static(
          "load", [](const std::string& path, std::optional<int> d) { return load_density(path, d); },
          py::arg("path"), py::arg("d") = py::none())
      .def("to_json", &density_to_json)
      .def_property_readonly("kind", [](const RadialDensity& s) { return to_string(s.kind()); })
      .def_property_readonly("dimension", &RadialDensity::dimension)
      .def("__call__", &RadialDensity::operator(), py::arg("r"))
      .def("__repr__", [](const RadialDensity& s) {
        return "<Density " + to_string(s.kind()) + " d=" + std::to_string(s.dimension()) + ">";
      });

  m.def("moment", &moment, py::arg("density"), py::arg("k"));
  m.def("flux_density", py::overload_cast<const RadialDensity&>(&flux_density), py::arg("density"));
  m.def(
      "validate_density",
      [](const RadialDensity& s) {
        auto verdict = validate_condition_A(s);
        py::dict d;
        d["admissible"] = verdict.admissible;
        d["violated"] = verdict.violated();
        d["warnings"] = verdict.warnings;
        return d;
      },
      py::arg("density"));

  py::class_<Solution>(m, "Solution")
      .def_property_readonly("R", [](const Solution& s) { return s.report.R; })
      .def_property_readonly("kind", [](const Solution& s) { return to_string(s.report.kind); })
      .def_property_readonly("h_plus", [](const Solution& s) { return s.report.h_plus; })
      .def_property_readonly("h_minus", [](const Solution& s) { return s.report.h_minus; })
      .def_property_readonly("report", [](const Solution& s) { return parse_json(report_to_json(s.report)); })
      .def("front", [](const Solution& s, double t) { return s.profile.front(t); }, py::arg("t"))
      .def("rear", [](const Solution& s, double t) { return s.profile.rear(t); }, py::arg("t"))
      .def(
          "sample",
          [](const Solution& s, std::size_t n) {
            py::dict d;
            d["front"] = sample_side(s.profile.front, n);
            d["rear"] = sample_side(s.profile.rear, n);
            return d;
          },
          py::arg("n") = 256)
      .def("to_json", &solution_to_json, py::arg("arc_samples") = 256)
      .def("svg", [](const Solution& s) { return profile_svg(s.profile); })
      .def("__repr__", [](const Solution& s) {
        return "<Solution " + to_string(s.report.kind) + " R=" + format_number(s.report.R) + ">";
      });

  py::class_<FlowProblem, std::shared_ptr<FlowProblem>>(m, "Problem")
      .def(py::init([](const RadialDensity& density, double speed) {
             return std::make_shared<FlowProblem>(FlowContext(density, speed));
           }),
           py::arg("density"), py::arg("V"), Release())
      .def_property_readonly("dimension", &FlowProblem::dimension)
      .def_property_readonly("landmarks", [](const FlowProblem& p) { return landmarks_dict(p.landmarks()); })
      .def_property_readonly("h_star", &FlowProblem::h_star)
      .def(
          "pressure",
          [](const FlowProblem& p, const std::string& side, double u) {
            return (side_of(side) == Side::Front ? p.front() : p.rear()).source().value(u);
          },
          py::arg("side"), py::arg("u"))
      .def(
          "envelope",
          [](const FlowProblem& p, const std::string& side, double u) {
            return (side_of(side) == Side::Front ? p.front() : p.rear()).value(u);
          },
          py::arg("side"), py::arg("u"))
      .def(
          "components",
          [](const FlowProblem& p, const std::string& side) {
            std::vector<std::pair<double, double>> out;
            for (auto c : (side_of(side) == Side::Front ? p.front() : p.rear()).components()) out.emplace_back(c.lo, c.hi);
            return out;
          },
          py::arg("side"))
      .def("solve", [](const FlowProblem& p, double h) { return solve(p, h); }, py::arg("h"), Release());

  m.def(
      "solve", [](const RadialDensity& density, double speed, double h) { return solve(FlowContext(density, speed), h); },
      py::arg("density"), py::arg("V"), py::arg("h"), Release());

  m.def(
      "region_curves",
      [](const RadialDensity& density, const std::vector<double>& speeds) {
        std::vector<std::tuple<double, double, double, double>> out;
        for (const auto& r : region_curves_2d(density, speeds)) out.emplace_back(r.V, r.u_plus0, r.u_star, r.u_star_plus_u_minus0);
        return out;
      },
      py::arg("density"), py::arg("speeds"), Release());
  m.def(
      "h_star_curve",
      [](const RadialDensity& density, const std::vector<double>& speeds) {
        std::vector<std::pair<double, double>> out;
        for (const auto& r : h_star_curve(density, speeds)) out.emplace_back(r.V, r.h_star);
        return out;
      },
      py::arg("density"), py::arg("speeds"), Release());

  m.def("slow_contact_slope", &slow_contact_slope);
  m.def(
      "limit_coefficients",
      [](const RadialDensity& density) {
        auto k = limit_coefficients(density);
        py::dict d;
        d["b"] = k.b;
        d["c"] = k.c;
        d["a"] = k.a;
        return d;
      },
      py::arg("density"));
  m.def(
      "limit_small_v",
      [](const RadialDensity& density, double h) { return limit_profile_small_V(limit_coefficients(density), h); },
      py::arg("density"), py::arg("h"));
  m.def("limit_large_v", &limit_profile_large_V, py::arg("d"), py::arg("h"), py::arg("flux") = 1.0);

  m.def(
      "envelope",
      [](std::function<double(double)> value, std::function<double(double)> slope, double tail) {
        auto curve = std::make_shared<FunctionCurve>(std::move(value), std::move(slope), tail);
        EnvelopeAnalysis env(curve);
        std::vector<std::pair<double, double>> comps;
        for (auto c : env.components()) comps.emplace_back(c.lo, c.hi);
        py::dict d;
        d["components"] = comps;
        d["origin_slope"] = env.origin_slope();
        return d;
      },
      py::arg("value"), py::arg("slope"), py::arg("tail"));

  m.def(
      "estimate_resistance",
      [](const Solution& s, const RadialDensity& density, double speed, std::size_t samples, std::uint64_t seed,
         bool antithetic) {
        McOptions opts;
        opts.samples = samples;
        opts.seed = seed;
        opts.antithetic = antithetic;
        McEstimate e;
        {
          py::gil_scoped_release release;
          e = estimate_resistance(s.profile, FlowContext(density, speed), opts);
        }
        return mc_dict(e);
      },
      py::arg("solution"), py::arg("density"), py::arg("V"), py::arg("samples") = 100000, py::arg("seed") = 1,
      py::arg("antithetic") = true);
}
