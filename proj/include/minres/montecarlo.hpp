#pragma once

#include <cstddef>
#include <cstdint>

#include "minres/medium.hpp"
#include "minres/profile.hpp"

namespace minres {

struct McOptions {
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  /// Average each velocity with its mirror image in the first coordinate.
  bool antithetic = true;
  std::size_t chunk = 4096;
};

struct McEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// Sampling estimate of the reduced resistance of a body: a surface point with density d t^{d-1}
/// on each side and a particle velocity from the flow. Deterministic for a given seed and
/// independent of the thread count.
McEstimate estimate_resistance(const BodyProfile& body, const FlowContext& ctx, const McOptions& opts = {});

}  // namespace minres
