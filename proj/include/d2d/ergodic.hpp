#pragma once

#include <span>
#include <vector>

#include "d2d/montecarlo.hpp"
#include "d2d/search.hpp"

namespace d2d {

// Averaged supporting point of the ergodic region for one weight pair.
struct BoundaryPoint {
    Weight weight;
    Estimate r1, r2, value;
};

// E over fading of the per-realization weighted-sum optimum (parameters
// re-optimized in every block). Blocks come from mc, so two schemes run with
// the same mc see the same realizations.
std::vector<BoundaryPoint> ergodic_boundary(const NetworkConfig& cfg, SchemeKind scheme, std::span<const Weight> weights,
                                            const EstimatorConfig& mc, const SearchSpec& spec,
                                            Execution exec = Execution::Parallel);

// n weights (cos t, sin t) for t evenly spaced over [0, pi/2], endpoints included.
std::vector<Weight> weight_grid(int n);

}  // namespace d2d
