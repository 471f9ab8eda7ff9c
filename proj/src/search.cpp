#include "d2d/search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace d2d {

void SearchSpec::validate() const {
    if (intervals < 2) throw std::invalid_argument("search: intervals must be >= 2");
    if (refine_intervals < 2) throw std::invalid_argument("search: refine_intervals must be >= 2");
    if (depth < 0) throw std::invalid_argument("search: depth must be >= 0");
    if (!(fd2_beta > 0.0 && fd2_beta < 1.0)) throw std::invalid_argument("search: fd2_beta must lie in (0, 1)");
    if (!(rp_split > 0.0 && rp_split < 1.0)) throw std::invalid_argument("search: rp_split must lie in (0, 1)");
}

void for_each_grid_point(std::span<const double> lo, std::span<const double> hi, int n,
                         const std::function<void(const std::vector<double>&)>& visit) {
    const std::size_t dim = lo.size();
    std::vector<int> idx(dim, 0);
    std::vector<double> x(dim);
    while (true) {
        for (std::size_t i = 0; i < dim; ++i) {
            const double t = static_cast<double>(idx[i]) / n;
            // Hit the endpoints exactly so grid points are reproducible.
            const double v = idx[i] == 0 ? lo[i] : idx[i] == n ? hi[i] : lo[i] + t * (hi[i] - lo[i]);
            x[i] = std::clamp(v, 0.0, 1.0);
        }
        visit(x);
        std::size_t i = dim;
        while (i > 0) {
            --i;
            if (++idx[i] <= n) break;
            idx[i] = 0;
            if (i == 0) return;
        }
        if (dim == 0) return;
    }
}

GridResult grid_maximize(int dim, const SearchSpec& spec,
                         const std::function<double(const std::vector<double>&)>& objective) {
    auto out = grid_maximize_many(
        dim, spec, 1, [&](const std::vector<double>& x) { return objective(x); },
        [](double v, std::size_t) { return v; });
    return out.front();
}

namespace {

TdPolicy mac_policy(double p1, double p2) {
    TdPolicy t;
    t.powers.rho10 = p1;
    t.powers.rho20 = p2;
    return t;
}

// alpha1 = u, alpha2 = v (1 - u) covers the phase simplex from the unit square.
PhaseSchedule phases_from(double u, double v) { return {u, v * (1.0 - u)}; }

int td_dims(TransmissionCase c, bool free_phases) {
    switch (c) {
    case TransmissionCase::DirectBoth: return 0;
    case TransmissionCase::CoopBoth: return free_phases ? 6 : 4;
    default: return free_phases ? 4 : 3;
    }
}

TdPolicy td_region_policy(TransmissionCase c, const std::vector<double>& x, const NetworkConfig& cfg,
                          bool free_phases) {
    const OutagePhases fixed;
    const double p1 = cfg.p1(), p2 = cfg.p2();
    std::size_t i = 0;
    switch (c) {
    case TransmissionCase::DirectBoth: return mac_policy(p1, p2);
    case TransmissionCase::CoopBoth: {
        PhaseSchedule ps = fixed.case2;
        if (free_phases) {
            ps = phases_from(x[0], x[1]);
            i = 2;
        }
        return td_policy_from_split(ps, p1, p2, {x[i], x[i + 1], x[i + 2], x[i + 3]});
    }
    case TransmissionCase::Ue1Coop: {
        PhaseSchedule ps = fixed.case3;
        if (free_phases) ps = {x[i++], 0.0};
        return td_policy_from_split(ps, p1, p2, {x[i], x[i + 1], 0.0, x[i + 2]});
    }
    case TransmissionCase::Ue2Coop: {
        PhaseSchedule ps = fixed.case4;
        if (free_phases) ps = {0.0, x[i++]};
        return td_policy_from_split(ps, p1, p2, {0.0, x[i + 1], x[i], x[i + 2]});
    }
    }
    return mac_policy(p1, p2);
}

int fd2_dims(TransmissionCase c) {
    switch (c) {
    case TransmissionCase::DirectBoth: return 0;
    case TransmissionCase::CoopBoth: return 4;
    default: return 2;
    }
}

Fd2Params fd2_policy(TransmissionCase c, const std::vector<double>& x, double beta, double p1, double p2) {
    Fd2PowerSplit s{1.0, 0.0, 1.0, 0.0};
    switch (c) {
    case TransmissionCase::DirectBoth: break;
    case TransmissionCase::CoopBoth: s = {x[0], x[1], x[2], x[3]}; break;
    case TransmissionCase::Ue1Coop: s = {1.0, x[0], x[1], 0.0}; break;   // UE2 relays UE1
    case TransmissionCase::Ue2Coop: s = {x[0], 0.0, 1.0, x[1]}; break;   // UE1 relays UE2
    }
    return fd2_params_from_split(beta, p1, p2, s);
}

double rp_split_from(double x) { return 0.01 + 0.98 * x; }

struct Candidate {
    RatePolicy policy;
    RegionBounds bounds;
};

double bits(double snr) { return std::log2(1.0 + snr); }

RegionBounds scheme_bounds(const LinkState& ls, const NetworkConfig& cfg, const RatePolicy& p, TransmissionCase c) {
    switch (p.scheme) {
    case SchemeKind::TdCooperative:
    case SchemeKind::Fd3Band: return achievable_bounds(j_terms_unchecked(ls, p.td.phases, p.td.powers));
    case SchemeKind::OuterBound: return outer_bounds(ls, p.td.phases, p.td.powers);
    case SchemeKind::Fd2Band: {
        const Fd2Rates a = fd2_rates(ls, p.fd2);
        const bool ue2_relays = c == TransmissionCase::CoopBoth || c == TransmissionCase::Ue1Coop;
        const bool ue1_relays = c == TransmissionCase::CoopBoth || c == TransmissionCase::Ue2Coop;
        return {ue2_relays ? std::min(a.a1, a.a3) : a.a3, ue1_relays ? std::min(a.a2, a.a4) : a.a4,
                RateRegion::kUnbounded};
    }
    case SchemeKind::ConcurrentSic: {
        const double s1 = ls.g10 * ls.g10 * cfg.p1(), s2 = ls.g20 * ls.g20 * cfg.p2();
        return {bits(s1), bits(s2), bits(s1 + s2)};
    }
    case SchemeKind::ResourcePartitioning: {
        const double s = p.rp_split, o = 1.0 - s;
        return {s * bits(ls.g10 * ls.g10 * cfg.p1() / s), o * bits(ls.g20 * ls.g20 * cfg.p2() / o),
                RateRegion::kUnbounded};
    }
    }
    return {};
}

}  // namespace

RateRegion scheme_region(const LinkState& ls, const NetworkConfig& cfg, const RatePolicy& policy) {
    switch (policy.scheme) {
    case SchemeKind::TdCooperative:
        return achievable_region(j_terms_unchecked(ls, policy.td.phases, policy.td.powers));
    case SchemeKind::Fd3Band: return fd3_region(ls, policy.td.phases, policy.td.powers);
    case SchemeKind::OuterBound: return outer_bound_region(ls, policy.td.phases, policy.td.powers);
    case SchemeKind::Fd2Band: return fd2_case_region(ls, policy.fd2, classify_case(ls));
    case SchemeKind::ConcurrentSic: return mac_sic_region(ls, cfg);
    case SchemeKind::ResourcePartitioning: return rp_region(ls, cfg, policy.rp_split, true);
    }
    throw std::invalid_argument("scheme_region: unknown scheme");
}

std::vector<WeightedOptimum> optimize_weighted_rate(const LinkState& ls, const NetworkConfig& cfg, SchemeKind scheme,
                                                    std::span<const Weight> weights, const SearchSpec& spec) {
    spec.validate();
    for (const Weight& w : weights)
        if (!(w.w1 >= 0 && w.w2 >= 0) || (w.w1 == 0 && w.w2 == 0))
            throw std::invalid_argument("optimize_weighted_rate: weights must be non-negative and not both zero");
    const TransmissionCase c = classify_case(ls);

    int dim = 0;
    std::function<RatePolicy(const std::vector<double>&)> make;
    switch (scheme) {
    case SchemeKind::TdCooperative:
    case SchemeKind::Fd3Band:
        dim = td_dims(c, spec.free_phases);
        make = [&](const std::vector<double>& x) {
            return RatePolicy{scheme, td_region_policy(c, x, cfg, spec.free_phases), {}, 0.5};
        };
        break;
    case SchemeKind::OuterBound:
        // Not tied to a transmission case: search the full cooperative space.
        dim = td_dims(TransmissionCase::CoopBoth, spec.free_phases);
        make = [&](const std::vector<double>& x) {
            return RatePolicy{scheme, td_region_policy(TransmissionCase::CoopBoth, x, cfg, spec.free_phases), {},
                              0.5};
        };
        break;
    case SchemeKind::Fd2Band:
        dim = fd2_dims(c);
        make = [&](const std::vector<double>& x) {
            return RatePolicy{scheme, {}, fd2_policy(c, x, spec.fd2_beta, cfg.p1(), cfg.p2()), 0.5};
        };
        break;
    case SchemeKind::ConcurrentSic:
        make = [&](const std::vector<double>&) { return RatePolicy{scheme, {}, {}, 0.5}; };
        break;
    case SchemeKind::ResourcePartitioning:
        dim = 1;
        make = [&](const std::vector<double>& x) { return RatePolicy{scheme, {}, {}, rp_split_from(x[0])}; };
        break;
    }

    const auto build = [&](const std::vector<double>& x) {
        RatePolicy p = make(x);
        const RegionBounds b = scheme_bounds(ls, cfg, p, c);
        return Candidate{p, b};
    };
    const auto score = [&](const Candidate& cand, std::size_t k) {
        return weighted_value(cand.bounds, weights[k].w1, weights[k].w2);
    };
    const auto found = grid_maximize_many(dim, spec, weights.size(), build, score);

    std::vector<WeightedOptimum> out;
    out.reserve(weights.size());
    for (std::size_t k = 0; k < weights.size(); ++k) {
        const RatePolicy p = make(found[k].x);
        out.push_back({p, max_weighted_sum(scheme_region(ls, cfg, p), weights[k].w1, weights[k].w2)});
    }

    if (scheme == SchemeKind::OuterBound) {
        // The outer bound also holds for the achievable scheme's own optimum,
        // which keeps it above the TD boundary whatever the grid resolves.
        const auto td = optimize_weighted_rate(ls, cfg, SchemeKind::TdCooperative, weights, spec);
        for (std::size_t k = 0; k < weights.size(); ++k) {
            RatePolicy p = td[k].policy;
            p.scheme = SchemeKind::OuterBound;
            const WeightedPoint wp = max_weighted_sum(scheme_region(ls, cfg, p), weights[k].w1, weights[k].w2);
            if (wp.value > out[k].point.value) out[k] = {p, wp};
        }
    }
    return out;
}

WeightedOptimum optimize_weighted_rate(const LinkState& ls, const NetworkConfig& cfg, SchemeKind scheme, double w1,
                                       double w2, const SearchSpec& spec) {
    const Weight w{w1, w2};
    return optimize_weighted_rate(ls, cfg, scheme, std::span<const Weight>(&w, 1), spec).front();
}

// ---------------------------------------------------------------------------
// Outage

PilotOutage pilot_outage(const OutagePlan& plan, std::span<const LinkState> blocks) {
    std::uint64_t pc = 0, p1 = 0, p2 = 0;
    for (const LinkState& ls : blocks) {
        const BlockOutage b = evaluate_block(plan, ls);
        pc += b.pc;
        p1 += b.p1;
        p2 += b.p2;
    }
    const double n = blocks.empty() ? 1.0 : static_cast<double>(blocks.size());
    return {pc / n, p1 / n, p2 / n, blocks.size()};
}

namespace {

struct CaseCounts {
    std::uint64_t pc = 0, p1 = 0, p2 = 0;
};

double objective_of(const CaseCounts& k, const OutageObjective& obj) {
    if (!obj.individual) return static_cast<double>(k.pc);
    return k.p1 / obj.beta1 + k.p2 / obj.beta2;
}

template <class Eval>
CaseCounts count_case(const std::vector<LinkState>& blocks, Eval&& eval) {
    CaseCounts k;
    for (const LinkState& ls : blocks) {
        const BlockOutage b = eval(ls);
        k.pc += b.pc;
        k.p1 += b.p1;
        k.p2 += b.p2;
    }
    return k;
}

struct TdCaseSearch {
    int dim;
    std::function<TdCasePlan(const std::vector<double>&)> make;
};

TdCaseSearch td_outage_space(TransmissionCase c, double r1, double r2, double p1, double p2,
                             const OutagePhases& phases) {
    switch (c) {
    case TransmissionCase::DirectBoth:
        return {0, [=](const std::vector<double>&) {
                    return TdCasePlan{mac_policy(p1, p2), RateTargets::split(r1, r2, 0, 0)};
                }};
    case TransmissionCase::CoopBoth:
        return {6, [=](const std::vector<double>& x) {
                    return TdCasePlan{td_policy_from_split(phases.case2, p1, p2, {x[2], x[3], x[4], x[5]}),
                                      RateTargets::split(r1, r2, x[0], x[1])};
                }};
    case TransmissionCase::Ue1Coop:
        return {4, [=](const std::vector<double>& x) {
                    return TdCasePlan{td_policy_from_split(phases.case3, p1, p2, {x[1], x[2], 0.0, x[3]}),
                                      RateTargets::split(r1, r2, x[0], 0)};
                }};
    case TransmissionCase::Ue2Coop:
        return {4, [=](const std::vector<double>& x) {
                    return TdCasePlan{td_policy_from_split(phases.case4, p1, p2, {0.0, x[2], x[1], x[3]}),
                                      RateTargets::split(r1, r2, 0, x[0])};
                }};
    }
    throw std::invalid_argument("unknown case");
}

std::array<std::vector<LinkState>, 4> bucket_by_case(const std::vector<LinkState>& blocks) {
    std::array<std::vector<LinkState>, 4> out;
    for (const LinkState& ls : blocks) out[index_of(classify_case(ls))].push_back(ls);
    return out;
}

// Searches each case on its own blocks and assembles the plan.
OutagePlan search_plan(SchemeKind scheme, const NetworkConfig& cfg, double r1, double r2,
                       const OutageObjective& obj, const OutageSearchSettings& st,
                       const std::array<std::vector<LinkState>, 4>& by_case) {
    const double p1 = cfg.p1(), p2 = cfg.p2();
    // Minimizing counts: negate for the maximizing engine.
    switch (scheme) {
    case SchemeKind::TdCooperative: {
        TdOutagePlan plan;
        plan.rule = st.rule;
        for (TransmissionCase c : kAllCases) {
            const auto space = td_outage_space(c, r1, r2, p1, p2, st.phases);
            const auto& blocks = by_case[index_of(c)];
            const GridResult best = grid_maximize(space.dim, st.spec, [&](const std::vector<double>& x) {
                const TdCasePlan cp = space.make(x);
                return -objective_of(count_case(blocks,
                                                [&](const LinkState& ls) {
                                                    return td_block_outage_unchecked(ls, c, cp.policy, cp.targets,
                                                                                     plan.rule, false);
                                                }),
                                     obj);
            });
            plan.cases[index_of(c)] = space.make(best.x);
        }
        return plan;
    }
    case SchemeKind::Fd2Band: {
        Fd2OutagePlan plan;
        plan.r1 = r1;
        plan.r2 = r2;
        for (TransmissionCase c : kAllCases) {
            const auto& blocks = by_case[index_of(c)];
            const GridResult best = grid_maximize(fd2_dims(c), st.spec, [&](const std::vector<double>& x) {
                const Fd2Params fp = fd2_policy(c, x, st.spec.fd2_beta, p1, p2);
                return -objective_of(
                    count_case(blocks, [&](const LinkState& ls) { return fd2_block_outage(ls, fp, r1, r2); }), obj);
            });
            plan.cases[index_of(c)] = fd2_policy(c, best.x, st.spec.fd2_beta, p1, p2);
        }
        return plan;
    }
    case SchemeKind::ConcurrentSic: return MacOutagePlan{p1, p2, r1, r2, st.rule};
    case SchemeKind::ResourcePartitioning: return RpOutagePlan{p1, p2, r1, r2, st.spec.rp_split, st.rp_boost};
    case SchemeKind::Fd3Band:
    case SchemeKind::OuterBound: break;
    }
    throw std::invalid_argument("optimize_outage: the outer bound has no outage plan");
}

}  // namespace

OutageOptimum optimize_outage(const NetworkConfig& cfg, SchemeKind scheme, double r1, double r2,
                              const OutageObjective& objective, const OutageSearchSettings& settings,
                              const EstimatorConfig& mc, std::uint64_t tag) {
    settings.spec.validate();
    if (!(r1 >= 0 && r2 >= 0)) throw std::invalid_argument("optimize_outage: target rates must be non-negative");
    if (objective.individual && !(objective.beta1 > 0 && objective.beta2 > 0))
        throw std::invalid_argument("optimize_outage: outage targets must be positive");
    if (settings.pilot_samples == 0) throw std::invalid_argument("optimize_outage: pilot_samples must be >= 1");

    // FD3 shares TD's parameters and only drops cooperative constraints, so it
    // reuses TD's split: a separate argmin would only add pilot noise.
    if (scheme == SchemeKind::Fd3Band) {
        OutageOptimum out = optimize_outage(cfg, SchemeKind::TdCooperative, r1, r2, objective, settings, mc, tag);
        std::get<TdOutagePlan>(out.plan).fd3 = true;
        const PilotOutage po =
            pilot_outage(out.plan, draw_blocks(mc.substream(tag).with_samples(out.pilot_n), cfg));
        out.pilot_pc = po.pc;
        out.pilot_p1 = po.p1;
        out.pilot_p2 = po.p2;
        out.infeasible = out.pilot_pc > 0.999;
        return out;
    }
    const bool has_params = scheme == SchemeKind::TdCooperative || scheme == SchemeKind::Fd2Band;
    const EstimatorConfig pilot_base = mc.substream(tag);
    std::uint64_t n = settings.pilot_samples;
    OutageOptimum out;
    while (true) {
        const std::vector<LinkState> blocks = draw_blocks(pilot_base.with_samples(n), cfg);
        out.plan = has_params ? search_plan(scheme, cfg, r1, r2, objective, settings, bucket_by_case(blocks))
                              : search_plan(scheme, cfg, r1, r2, objective, settings, {});
        const PilotOutage po = pilot_outage(out.plan, blocks);
        out.pilot_pc = po.pc;
        out.pilot_p1 = po.p1;
        out.pilot_p2 = po.p2;
        out.pilot_n = po.n;
        const double events = (objective.individual ? std::min(po.p1, po.p2) : po.pc) * static_cast<double>(n);
        if (!has_params || events >= settings.min_pilot_events || n >= settings.max_pilot_samples) break;
        // Rank candidates on enough outage events to tell them apart.
        const double want = settings.min_pilot_events / std::max(events, 1.0) * static_cast<double>(n);
        n = std::min<std::uint64_t>(settings.max_pilot_samples, static_cast<std::uint64_t>(std::ceil(want)));
    }
    out.infeasible = out.pilot_pc > 0.999;
    return out;
}

}  // namespace d2d
