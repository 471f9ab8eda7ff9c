#include "d2d/outage_region.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace d2d {

std::string_view to_string(RegionKind k) { return k == RegionKind::Common ? "common" : "individual"; }

void OutageRegionSettings::validate() const {
    if (!(beta1 >= 0 && beta1 <= 1 && beta2 >= 0 && beta2 <= 1))
        throw std::invalid_argument("outage region: beta targets must lie in [0, 1]");
    if (!(rate_cap > 0)) throw std::invalid_argument("outage region: rate_cap must be positive");
    if (!(tolerance > 0)) throw std::invalid_argument("outage region: tolerance must be positive");
    if (rays < 1) throw std::invalid_argument("outage region: need at least one ray");
    const double beta = std::min(beta1, beta2);
    if (beta > 0 && beta < 1 && beta * static_cast<double>(search.pilot_samples) < 100)
        throw std::invalid_argument("outage region: pilot_samples too small to resolve the beta targets");
    search.spec.validate();
}

namespace {

double bisect(double lo, double hi, double tol, const auto& feasible) {
    if (feasible(hi)) return hi;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace

std::vector<RegionPoint> outage_rate_region(const NetworkConfig& cfg, SchemeKind scheme,
                                            const OutageRegionSettings& st, const EstimatorConfig& mc) {
    st.validate();
    const double beta = std::min(st.beta1, st.beta2);
    std::vector<RegionPoint> out;
    for (int k = 0; k < st.rays; ++k) {
        const double deg = st.rays == 1 ? 45.0 : 90.0 * k / (st.rays - 1);
        const double phi = deg * std::numbers::pi / 180.0;
        // Snap the axes so a zero rate is exactly zero.
        const double c = k == st.rays - 1 && st.rays > 1 ? 0.0 : std::cos(phi);
        const double s = k == 0 && st.rays > 1 ? 0.0 : std::sin(phi);

        const auto common_ok = [&](double t) {
            if (beta >= 1) return true;
            if (beta <= 0) return false;
            const OutageOptimum o = optimize_outage(cfg, scheme, t * c, t * s, {}, st.search, mc);
            return o.pilot_pc <= beta;
        };
        const auto individual_ok = [&](double t) {
            if (st.beta1 >= 1 && st.beta2 >= 1) return true;
            if (st.beta1 <= 0 || st.beta2 <= 0) return false;
            const OutageObjective obj{true, st.beta1, st.beta2};
            const OutageOptimum o = optimize_outage(cfg, scheme, t * c, t * s, obj, st.search, mc);
            return o.pilot_p1 <= st.beta1 && o.pilot_p2 <= st.beta2;
        };
        const double tc = bisect(0.0, st.rate_cap, st.tolerance, common_ok);
        const double ti = bisect(tc, st.rate_cap, st.tolerance, individual_ok);
        out.push_back({RegionKind::Common, deg, tc, tc * c, tc * s});
        out.push_back({RegionKind::Individual, deg, ti, ti * c, ti * s});
    }
    return out;
}

}  // namespace d2d
