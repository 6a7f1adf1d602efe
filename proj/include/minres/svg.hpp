#pragma once

#include <string>
#include <vector>

#include "minres/profile.hpp"
#include "minres/solve2d.hpp"
#include "minres/solve_nd.hpp"

namespace minres {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Meridian section of the body: upper outline -f_plus(|x|), lower outline f_minus(|x|).
std::string profile_svg(const BodyProfile& body, std::size_t samples = 256);
/// (V, h) plane split by the threshold curves.
std::string region_svg(const std::vector<RegionRow>& rows);
std::string h_star_svg(const std::vector<HStarRow>& rows);
std::string curves_svg(const std::vector<Series>& series, const std::string& x_label, const std::string& y_label);

}  // namespace minres
