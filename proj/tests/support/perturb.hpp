#pragma once

#include <random>

#include "minres/profile.hpp"

namespace oracle {

/// Random convex non-decreasing polyline from (0, -h) to (1, 0) with up to five interior knots.
minres::SideProfile random_side(std::mt19937_64& rng, double h);

/// (1 - lambda) a + lambda b as a polyline on the union of both knot sets; arcs are sampled first.
minres::SideProfile blend(const minres::SideProfile& a, const minres::SideProfile& b, double lambda,
                          std::size_t arc_samples = 2048);

/// Polyline through `samples` points of an arc profile; polylines are returned unchanged.
minres::SideProfile as_polyline(const minres::SideProfile& side, std::size_t samples = 2048);

}  // namespace oracle
