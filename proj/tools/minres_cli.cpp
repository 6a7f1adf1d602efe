#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "minres/asymptotics.hpp"
#include "minres/errors.hpp"
#include "minres/io.hpp"
#include "minres/montecarlo.hpp"
#include "minres/parallel.hpp"
#include "minres/problem.hpp"
#include "minres/solve2d.hpp"
#include "minres/solve_nd.hpp"
#include "minres/svg.hpp"

using namespace minres;

namespace {

struct RunConfig {
  int d = 2;
  double V = 1.0;
  double h = 1.0;
  std::string density;
  bool gaussian = false;
  std::string v_grid;
  std::string h_grid;
  std::string out;
  std::string svg;
  std::string limit;
  std::string profile;
  std::vector<std::string> inputs;
  std::uint64_t seed = 1;
  std::size_t samples = 100000;
  std::size_t arc_samples = 256;
  double tol = 0.0;
};

std::vector<double> parse_grid(const std::string& spec) {
  if (spec.empty()) throw InputError("empty grid");
  std::vector<double> out;
  if (spec.find(':') == std::string::npos) {
    std::stringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(std::stod(item));
    return out;
  }
  double lo = 0.0, hi = 0.0;
  long n = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(spec);
  if (!(in >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1 || hi < lo) {
    throw InputError("grid must be lo:hi:n with lo <= hi and n >= 1, got '" + spec + "'");
  }
  for (long i = 0; i < n; ++i) out.push_back(n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1));
  return out;
}

std::vector<double> dedupe(std::vector<double> grid, const char* name) {
  std::vector<double> out;
  for (double x : grid) {
    if (std::find(out.begin(), out.end(), x) != out.end()) {
      std::cerr << "warning: duplicate " << name << " = " << x << " dropped\n";
      continue;
    }
    out.push_back(x);
  }
  return out;
}

RadialDensity density_of(const RunConfig& cfg) {
  if (cfg.density.empty() || cfg.gaussian) return RadialDensity::gaussian(cfg.d);
  if (cfg.density.front() == '{') return parse_density_json(cfg.density, cfg.d);
  return load_density(cfg.density, cfg.d);
}

PressureOptions pressure_options(const RunConfig& cfg) {
  PressureOptions p;
  if (cfg.tol > 0.0) p.quad.rel = cfg.tol;
  return p;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty() || cfg.out == "-") {
    std::cout << text;
  } else {
    write_text(cfg.out, text);
  }
}

int cmd_solve(const RunConfig& cfg) {
  if (!(cfg.h > 0.0)) throw DomainError("height must be positive");
  RadialDensity density = density_of(cfg);
  Solution sol;
  if (cfg.limit == "small-v") {
    sol = limit_profile_small_V(limit_coefficients(density), cfg.h);
  } else if (cfg.limit == "large-v") {
    sol = limit_profile_large_V(cfg.d, cfg.h, flux_density(density));
  } else {
    if (!(cfg.V > 0.0)) throw DomainError("speed must be positive");
    sol = solve(FlowProblem(FlowContext(density, cfg.V), pressure_options(cfg)), cfg.h);
  }
  emit(cfg, solution_to_json(sol, cfg.arc_samples));
  if (!cfg.svg.empty()) write_text(cfg.svg, profile_svg(sol.profile));
  return 0;
}

int cmd_regions(const RunConfig& cfg) {
  std::vector<double> speeds = dedupe(parse_grid(cfg.v_grid), "V");
  if (speeds.empty()) throw InputError("empty V grid");
  std::sort(speeds.begin(), speeds.end());
  RadialDensity density = density_of(cfg);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<RegionRow> rows(speeds.size(), {nan, nan, nan, nan});
  std::vector<HStarRow> stars(speeds.size(), {nan, nan});
  std::vector<std::string> failures(speeds.size());
  parallel_for(speeds.size(), [&](std::size_t i) {
    rows[i].V = stars[i].V = speeds[i];
    try {
      if (!(speeds[i] > 0.0)) throw DomainError("speed must be positive");
      FlowProblem problem(FlowContext(density, speeds[i]), pressure_options(cfg));
      const Landmarks& m = problem.landmarks();
      rows[i] = {speeds[i], m.u_plus0, m.u_star, m.u_star + m.u_minus0};
      if (cfg.d >= 3) stars[i].h_star = problem.h_star();
    } catch (const std::exception& e) {
      failures[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < speeds.size(); ++i) {
    if (!failures[i].empty()) std::cerr << "warning: V = " << speeds[i] << " failed: " << failures[i] << '\n';
  }
  if (cfg.d == 2) {
    emit(cfg, region_csv(rows));
    if (!cfg.svg.empty()) write_text(cfg.svg, region_svg(rows));
  } else {
    emit(cfg, h_star_csv(stars));
    if (!cfg.svg.empty()) write_text(cfg.svg, h_star_svg(stars));
  }
  return 0;
}

int cmd_sweep(const RunConfig& cfg) {
  std::vector<double> speeds = dedupe(cfg.v_grid.empty() ? std::vector<double>{cfg.V} : parse_grid(cfg.v_grid), "V");
  std::vector<double> heights = dedupe(cfg.h_grid.empty() ? std::vector<double>{cfg.h} : parse_grid(cfg.h_grid), "h");
  if (speeds.empty() || heights.empty()) throw InputError("empty grid");
  RadialDensity density = density_of(cfg);
  struct Row {
    double R = std::numeric_limits<double>::quiet_NaN();
    std::string kind = "failed";
  };
  std::vector<Row> rows(speeds.size() * heights.size());
  std::vector<std::string> failures(speeds.size());
  parallel_for(speeds.size(), [&](std::size_t i) {
    try {
      if (!(speeds[i] > 0.0)) throw DomainError("speed must be positive");
      FlowProblem problem(FlowContext(density, speeds[i]), pressure_options(cfg));
      for (std::size_t j = 0; j < heights.size(); ++j) {
        Row& row = rows[i * heights.size() + j];
        try {
          Solution s = solve(problem, heights[j]);
          row = {s.report.R, to_string(s.report.kind)};
        } catch (const std::exception& e) {
          row.kind = "failed";
        }
      }
    } catch (const std::exception& e) {
      failures[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < speeds.size(); ++i) {
    if (!failures[i].empty()) std::cerr << "warning: V = " << speeds[i] << " failed: " << failures[i] << '\n';
  }
  std::ostringstream out;
  out << "V,h,R,R_reduced,kind\n";
  for (std::size_t i = 0; i < speeds.size(); ++i) {
    for (std::size_t j = 0; j < heights.size(); ++j) {
      const Row& row = rows[i * heights.size() + j];
      out << format_number(speeds[i]) << ',' << format_number(heights[j]) << ',' << format_number(row.R) << ','
          << format_number(row.R / (speeds[i] * speeds[i])) << ',' << row.kind << '\n';
    }
  }
  emit(cfg, out.str());
  return 0;
}

int cmd_validate(const RunConfig& cfg) {
  if (!(cfg.V > 0.0)) throw DomainError("speed must be positive");
  RadialDensity density = density_of(cfg);
  FlowContext ctx(density, cfg.V);
  BodyProfile body;
  double analytic = 0.0;
  if (!cfg.profile.empty()) {
    body = profile_from_json(read_text(cfg.profile));
    if (body.dimension != cfg.d) throw InputError("profile dimension does not match --d");
    PressureCurve front(ctx, Side::Front), rear(ctx, Side::Rear);
    analytic = side_resistance(body.front, front, cfg.d) + side_resistance(body.rear, rear, cfg.d);
  } else if (cfg.h > 0.0) {
    Solution s = solve(FlowProblem(ctx, pressure_options(cfg)), cfg.h);
    body = s.profile;
    analytic = s.report.R;
  } else {
    body.dimension = cfg.d;
    PressureCurve front(ctx, Side::Front), rear(ctx, Side::Rear);
    analytic = front.value(0.0) + rear.value(0.0);
  }
  McOptions opts;
  opts.samples = cfg.samples;
  opts.seed = cfg.seed;
  emit(cfg, mc_to_json(estimate_resistance(body, ctx, opts), analytic));
  return 0;
}

std::vector<std::vector<std::string>> read_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::string plot_one(const std::string& text) {
  std::string head = text.substr(0, text.find('\n'));
  if (!text.empty() && text.front() == '{') return profile_svg(profile_from_json(text));
  auto rows = read_csv(text);
  if (rows.size() < 2) throw InputError("nothing to plot");
  if (head == "V,u_plus0,u_star,u_star_plus_u_minus0") {
    std::vector<RegionRow> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      out.push_back({std::stod(rows[i][0]), std::stod(rows[i][1]), std::stod(rows[i][2]), std::stod(rows[i][3])});
    }
    return region_svg(out);
  }
  if (head == "V,h_star") {
    std::vector<HStarRow> out;
    for (std::size_t i = 1; i < rows.size(); ++i) out.push_back({std::stod(rows[i][0]), std::stod(rows[i][1])});
    return h_star_svg(out);
  }
  if (head.rfind("V,h,R,R_reduced", 0) == 0) {
    std::map<double, Series> by_speed;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      double V = std::stod(rows[i][0]);
      Series& s = by_speed[V];
      s.label = "V = " + rows[i][0];
      s.x.push_back(std::stod(rows[i][1]));
      s.y.push_back(std::stod(rows[i][3]));
    }
    std::vector<Series> series;
    for (auto& [V, s] : by_speed) series.push_back(std::move(s));
    return curves_svg(series, "h", "R / V^2");
  }
  throw InputError("unrecognized plot input");
}

int cmd_plot(const RunConfig& cfg) {
  if (cfg.inputs.empty()) throw InputError("no plot inputs");
  if (cfg.inputs.size() == 1) {
    emit(cfg, plot_one(read_text(cfg.inputs.front())));
    return 0;
  }
  if (cfg.out.empty()) throw InputError("--out directory is required for several inputs");
  std::filesystem::create_directories(cfg.out);
  for (const auto& in : cfg.inputs) {
    std::filesystem::path dst = std::filesystem::path(cfg.out) / std::filesystem::path(in).stem();
    dst += ".svg";
    write_text(dst, plot_one(read_text(in)));
  }
  return 0;
}

void common_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--d", cfg.d, "Dimension")->check(CLI::Range(2, 16));
  cmd->add_option("--density", cfg.density, "Density JSON file, CSV table or inline JSON");
  cmd->add_flag("--gaussian", cfg.gaussian, "Unit Gaussian density (default)");
  cmd->add_option("--out", cfg.out, "Output path (stdout by default)");
  cmd->add_option("--tol", cfg.tol, "Relative quadrature tolerance of the pressure tables");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bodies of minimal resistance in a rarefied medium with thermal motion"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  RunConfig cfg;

  auto* solve_cmd = app.add_subcommand("solve", "Optimal body for one (V, h)");
  common_options(solve_cmd, cfg);
  solve_cmd->add_option("--v", cfg.V, "Body speed");
  solve_cmd->add_option("--h", cfg.h, "Body length")->required();
  solve_cmd->add_option("--limit", cfg.limit, "Limit regime")->check(CLI::IsMember({"small-v", "large-v"}));
  solve_cmd->add_option("--samples", cfg.arc_samples, "Sample count of curved profile parts");
  solve_cmd->add_option("--svg", cfg.svg, "Also write the body silhouette");

  auto* regions_cmd = app.add_subcommand("regions", "Threshold curves over a speed grid");
  common_options(regions_cmd, cfg);
  regions_cmd->add_option("--v-grid", cfg.v_grid, "lo:hi:n or a comma list")->required();
  regions_cmd->add_option("--svg", cfg.svg, "Also write the region map");

  auto* sweep_cmd = app.add_subcommand("sweep", "Minimal resistance over a (V, h) grid");
  common_options(sweep_cmd, cfg);
  sweep_cmd->add_option("--v", cfg.V, "Body speed");
  sweep_cmd->add_option("--h", cfg.h, "Body length");
  sweep_cmd->add_option("--v-grid", cfg.v_grid, "lo:hi:n or a comma list");
  sweep_cmd->add_option("--h-grid", cfg.h_grid, "lo:hi:n or a comma list");

  auto* validate_cmd = app.add_subcommand("validate", "Sampling estimate of the resistance");
  common_options(validate_cmd, cfg);
  validate_cmd->add_option("--v", cfg.V, "Body speed");
  validate_cmd->add_option("--h", cfg.h, "Body length; 0 for the flat disk")->default_val(0.0);
  validate_cmd->add_option("--profile", cfg.profile, "Profile JSON to evaluate instead of the optimum");
  validate_cmd->add_option("--samples", cfg.samples, "Number of samples")->default_val(100000);
  validate_cmd->add_option("--seed", cfg.seed, "Random seed");

  auto* plot_cmd = app.add_subcommand("plot", "SVG from profile JSON, region CSV or sweep CSV");
  plot_cmd->add_option("inputs", cfg.inputs, "Input files")->required();
  plot_cmd->add_option("--out", cfg.out, "Output SVG, or a directory for several inputs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*solve_cmd) return cmd_solve(cfg);
    if (*regions_cmd) return cmd_regions(cfg);
    if (*sweep_cmd) return cmd_sweep(cfg);
    if (*validate_cmd) return cmd_validate(cfg);
    if (*plot_cmd) return cmd_plot(cfg);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return 3;
  } catch (const InvariantError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 1;
}
