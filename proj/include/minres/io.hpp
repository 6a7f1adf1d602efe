#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "minres/envelope.hpp"
#include "minres/medium.hpp"
#include "minres/montecarlo.hpp"
#include "minres/problem.hpp"
#include "minres/solve2d.hpp"
#include "minres/solve_nd.hpp"

namespace minres {

/// 17 significant digits.
std::string format_number(double x);

/// {"kind": "gaussian"|"maxwell"|"mixture"|"tabulated", "d": n, ...}. A "d" given here wins over the document.
RadialDensity parse_density_json(const std::string& text, std::optional<int> d = std::nullopt);
/// Two columns r, sigma; a header line is skipped.
RadialDensity read_density_csv(std::istream& in, int d);
/// Dispatches on the extension: .csv or JSON.
RadialDensity load_density(const std::filesystem::path& path, std::optional<int> d = std::nullopt);
std::string density_to_json(const RadialDensity& density);

/// Polyline knots are written exactly; arcs are sampled at `arc_samples` parameter nodes.
std::string profile_to_json(const BodyProfile& body, std::size_t arc_samples = 256);
std::string report_to_json(const SolveReport& report);
/// {"profile": ..., "report": ...}
std::string solution_to_json(const Solution& solution, std::size_t arc_samples = 256);
/// Accepts the output of profile_to_json or solution_to_json; arcs come back as polylines.
/// Throws InputError when the profile is not admissible.
BodyProfile profile_from_json(const std::string& text);

std::string mc_to_json(const McEstimate& estimate, double analytic);

std::string region_csv(const std::vector<RegionRow>& rows);
std::string h_star_csv(const std::vector<HStarRow>& rows);
std::string envelope_csv(const EnvelopeAnalysis& analysis, double u_max, std::size_t n);
std::string components_json(const EnvelopeAnalysis& analysis);
std::string pressure_csv(const Curve& front, const Curve& rear, double u_max, std::size_t n);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace minres
