#pragma once

#include <string_view>
#include <vector>

#include "d2d/search.hpp"

namespace d2d {

enum class RegionKind : std::uint8_t { Common, Individual };
std::string_view to_string(RegionKind k);

struct OutageRegionSettings {
    double beta1 = 0.01, beta2 = 0.01;
    double rate_cap = 8.0;   // bits/channel use along each ray
    double tolerance = 0.02; // bisection stops at this ray-length bracket
    int rays = 9;            // evenly spaced over [0, 90] degrees
    OutageSearchSettings search{{3, 2, 2, false, 0.5, 0.5}, {}, 10000, 10000, 0, PrivateOutageRule::Mac, true};

    void validate() const;
};

struct RegionPoint {
    RegionKind kind = RegionKind::Common;
    double ray_deg = 0;
    double t = 0;  // largest feasible ray length found
    double r1 = 0, r2 = 0;
};

// Bisects along each ray R = t (cos phi, sin phi) for the largest rate pair
// whose optimized outage meets the targets: Pc <= min(beta1, beta2) for the
// common region, P1 <= beta1 and P2 <= beta2 for the individual one. Each
// ray's individual search starts from the common result, so the common
// boundary never lies outside the individual one. Rows: per ray, common then
// individual.
std::vector<RegionPoint> outage_rate_region(const NetworkConfig& cfg, SchemeKind scheme,
                                            const OutageRegionSettings& settings, const EstimatorConfig& mc);

}  // namespace d2d
