#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "d2d/channel.hpp"
#include "d2d/montecarlo.hpp"
#include "d2d/outage.hpp"
#include "d2d/rate_region.hpp"
#include "d2d/schemes.hpp"

namespace d2d {

// Nested grid search over the unit cube. The coarse grid has intervals + 1
// points per dimension; each refinement round evaluates refine_intervals + 1
// points per dimension around the incumbent, halving the half-width each time.
struct SearchSpec {
    int intervals = 4;
    int refine_intervals = 2;
    int depth = 2;
    bool free_phases = true;  // region search also optimizes alpha1, alpha2
    double fd2_beta = 0.5;
    double rp_split = 0.5;  // outage only; regions optimize the split

    void validate() const;
};

struct GridResult {
    std::vector<double> x;
    double value = 0;
};

// Evaluates every point of the grid over [lo, hi] (n + 1 points per dim) in
// lexicographic order, last dimension fastest. Points are clamped to [0, 1].
void for_each_grid_point(std::span<const double> lo, std::span<const double> hi, int n,
                         const std::function<void(const std::vector<double>&)>& visit);

// Maximizes `objective` over [0,1]^dim. Only strict improvements replace the
// incumbent, so ties resolve to the lexicographically first point and later
// rounds never make things worse.
GridResult grid_maximize(int dim, const SearchSpec& spec, const std::function<double(const std::vector<double>&)>& objective);

// Same search for `count` objectives sharing one coarse grid. build(x) makes a
// candidate once per coarse point; score(candidate, k) ranks it for objective k.
template <class Build, class Score>
std::vector<GridResult> grid_maximize_many(int dim, const SearchSpec& spec, std::size_t count, Build&& build,
                                           Score&& score) {
    spec.validate();
    std::vector<GridResult> best(count);
    std::vector<bool> seen(count, false);
    const std::vector<double> lo(dim, 0.0), hi(dim, 1.0);
    const auto offer = [&](const std::vector<double>& x, std::size_t k, double v) {
        if (!seen[k] || v > best[k].value) {
            best[k] = {x, v};
            seen[k] = true;
        }
    };
    for_each_grid_point(lo, hi, spec.intervals, [&](const std::vector<double>& x) {
        const auto cand = build(x);
        for (std::size_t k = 0; k < count; ++k) offer(x, k, score(cand, k));
    });
    if (dim == 0) return best;
    for (std::size_t k = 0; k < count; ++k) {
        double h = 1.0 / spec.intervals;
        for (int round = 0; round < spec.depth; ++round) {
            h *= 0.5;
            std::vector<double> rlo(dim), rhi(dim);
            for (int i = 0; i < dim; ++i) {
                rlo[i] = best[k].x[i] - h;
                rhi[i] = best[k].x[i] + h;
            }
            const std::vector<double> center = best[k].x;
            for_each_grid_point(rlo, rhi, spec.refine_intervals, [&](const std::vector<double>& x) {
                if (x == center) return;
                offer(x, k, score(build(x), k));
            });
        }
    }
    return best;
}

// Parameters chosen for one realization and one weight pair.
struct RatePolicy {
    SchemeKind scheme = SchemeKind::TdCooperative;
    TdPolicy td;
    Fd2Params fd2;
    double rp_split = 0.5;
};

struct WeightedOptimum {
    RatePolicy policy;
    WeightedPoint point;
};

struct Weight {
    double w1 = 1, w2 = 1;
};

// Region of a scheme under a policy; FD2 and TD regions are case-aware.
RateRegion scheme_region(const LinkState& ls, const NetworkConfig& cfg, const RatePolicy& policy);

// Per-realization weighted-sum-rate optimum for each weight pair.
std::vector<WeightedOptimum> optimize_weighted_rate(const LinkState& ls, const NetworkConfig& cfg, SchemeKind scheme,
                                                    std::span<const Weight> weights, const SearchSpec& spec);
WeightedOptimum optimize_weighted_rate(const LinkState& ls, const NetworkConfig& cfg, SchemeKind scheme, double w1,
                                       double w2, const SearchSpec& spec);

// What the outage optimizer minimizes.
struct OutageObjective {
    bool individual = false;  // false: common outage; true: P1/beta1 + P2/beta2
    double beta1 = 0.01, beta2 = 0.01;
};

// Phase durations used by the TD-family schemes in outage experiments.
struct OutagePhases {
    PhaseSchedule case2{0.25, 0.25};
    PhaseSchedule case3{0.4, 0.0};
    PhaseSchedule case4{0.0, 0.4};
};

struct OutageSearchSettings {
    SearchSpec spec{3, 2, 2, false, 0.5, 0.5};
    OutagePhases phases;
    std::uint64_t pilot_samples = 10000;
    std::uint64_t max_pilot_samples = 200000;
    double min_pilot_events = 100;
    PrivateOutageRule rule = PrivateOutageRule::Mac;
    bool rp_boost = true;
};

struct OutageOptimum {
    OutagePlan plan;
    bool infeasible = false;
    // Pilot-sample estimates for the chosen plan.
    double pilot_pc = 0, pilot_p1 = 0, pilot_p2 = 0;
    std::uint64_t pilot_n = 0;
};

// Minimizes the objective over rate splits and power splits at fixed phase
// durations. All candidates are scored on one pilot sample drawn from
// mc.substream(tag), i.e. with common random numbers. Each transmission case
// is optimized on its own blocks since the objective is additive over cases.
OutageOptimum optimize_outage(const NetworkConfig& cfg, SchemeKind scheme, double r1, double r2,
                              const OutageObjective& objective, const OutageSearchSettings& settings,
                              const EstimatorConfig& mc, std::uint64_t tag = 0);

// Pilot evaluation used by the optimizer (exposed for tests).
struct PilotOutage {
    double pc = 0, p1 = 0, p2 = 0;
    std::uint64_t n = 0;
};
PilotOutage pilot_outage(const OutagePlan& plan, std::span<const LinkState> blocks);

}  // namespace d2d
