#include "doctest.h"
#include "minres/problem.hpp"
#include "minres/svg.hpp"

using namespace minres;

TEST_SUITE("svg") {
  TEST_CASE("profile silhouettes are deterministic") {
    auto s = solve(FlowContext(RadialDensity::gaussian(3), 1.0), 3.11);
    std::string a = profile_svg(s.profile);
    CHECK(a == profile_svg(s.profile));
    CHECK(a.rfind("<svg", 0) == 0);
    CHECK(a.find("</svg>") != std::string::npos);
    CHECK(a.find("<polygon") != std::string::npos);
  }

  TEST_CASE("region and curve plots") {
    std::vector<RegionRow> rows{{0.5, 1.1, 2.0, 3.5}, {1.0, 1.07, 3.54, 5.5}, {2.0, 1.02, 6.5, 10.0}};
    std::string r = region_svg(rows);
    CHECK(r == region_svg(rows));
    CHECK(r.find("<polygon") != std::string::npos);
    std::string h = h_star_svg({{0.5, 1.17}, {1.0, 2.22}, {2.0, 4.45}});
    CHECK(h.find("<polyline") != std::string::npos);
    std::string c = curves_svg({{"V = 1", {1, 2, 3}, {1.0, 0.8, 0.7}}}, "h", "R");
    CHECK(c.find("V = 1") != std::string::npos);
  }
}
