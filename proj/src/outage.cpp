#include "d2d/outage.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <stdexcept>
#include <type_traits>

namespace d2d {

namespace {

double bits(double snr) { return std::log2(1.0 + snr); }

bool close(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a) + std::abs(b)); }

void check_case_consistency(TransmissionCase c, const TdPolicy& policy, const RateTargets& rt) {
    const auto& ps = policy.phases;
    const auto& pa = policy.powers;
    bool ok = true;
    switch (c) {
    case TransmissionCase::DirectBoth:
        ok = ps.alpha1 == 0 && ps.alpha2 == 0 && pa.rho11 == 0 && pa.rho22 == 0 && pa.rho13 == 0 &&
             pa.rho23 == 0 && rt.r12 == 0 && rt.r21 == 0;
        break;
    case TransmissionCase::CoopBoth:
        break;
    case TransmissionCase::Ue1Coop:
        ok = ps.alpha2 == 0 && pa.rho22 == 0 && rt.r21 == 0;
        break;
    case TransmissionCase::Ue2Coop:
        ok = ps.alpha1 == 0 && pa.rho11 == 0 && rt.r12 == 0;
        break;
    }
    if (!ok)
        throw std::invalid_argument("outage: policy or rate split inconsistent with " +
                                    std::string(to_string(c)));
}

}  // namespace

BlockOutage td_block_outage_unchecked(const LinkState& ls, TransmissionCase c, const TdPolicy& policy,
                                      const RateTargets& rt, PrivateOutageRule rule, bool fd3) {
    const JTerms j = j_terms_unchecked(ls, policy.phases, policy.powers);
    BlockOutage b;
    b.pm2 = j.j1 < rt.r12;
    b.pm1 = j.j2 < rt.r21;
    const bool ue_fail = b.pm1 || b.pm2;

    BsOutage bs;
    if (fd3 && c == TransmissionCase::CoopBoth) {
        bs.coop = fd3_coop_common_outage_indicator(j, rt);
        bs.priv = private_outage_indicators(j, rt, rule);
        bs.common = bs.coop || bs.priv.common;
        bs.ind1 = bs.coop || bs.priv.ind1;
        bs.ind2 = bs.coop || bs.priv.ind2;
    } else {
        bs = bs_outage_indicators(j, rt, c, rule);
    }

    // Base-station events only count when both UEs decoded, private events
    // only when the cooperative parts were decoded as well.
    const bool at_bs = !ue_fail;
    const bool privates = at_bs && !bs.coop;
    b.pcc = at_bs && bs.coop;
    b.pcp = privates && bs.priv.common;
    b.p1p = privates && bs.priv.ind1;
    b.p2p = privates && bs.priv.ind2;
    b.pbc = at_bs && bs.common;
    b.pb1 = at_bs && bs.ind1;
    b.pb2 = at_bs && bs.ind2;
    b.pc = ue_fail || bs.common;
    b.p1 = ue_fail || bs.ind1;
    b.p2 = ue_fail || bs.ind2;
    return b;
}

namespace {

BlockOutage td_block_checked(const LinkState& ls, const TdPolicy& policy, const RateTargets& rt,
                             PrivateOutageRule rule, bool fd3) {
    policy.phases.validate();
    policy.powers.validate();
    rt.validate();
    const TransmissionCase c = classify_case(ls);
    check_case_consistency(c, policy, rt);
    return td_block_outage_unchecked(ls, c, policy, rt, rule, fd3);
}

}  // namespace

RateTargets RateTargets::split(double r1, double r2, double coop1, double coop2) {
    RateTargets rt;
    rt.r1 = r1;
    rt.r2 = r2;
    rt.r12 = coop1 * r1;
    rt.r10 = r1 - rt.r12;
    rt.r21 = coop2 * r2;
    rt.r20 = r2 - rt.r21;
    rt.validate();
    return rt;
}

void RateTargets::validate() const {
    for (double r : {r1, r2, r10, r12, r20, r21})
        if (!(r >= 0.0) || !std::isfinite(r)) throw std::invalid_argument("rate targets must be non-negative");
    if (!close(r10 + r12, r1) || !close(r20 + r21, r2))
        throw std::invalid_argument("rate targets: split parts must add up to the totals");
}

RateTargets case_targets(TransmissionCase c, const RateTargets& rt) {
    RateTargets out = rt;
    const bool keep12 = c == TransmissionCase::CoopBoth || c == TransmissionCase::Ue1Coop;
    const bool keep21 = c == TransmissionCase::CoopBoth || c == TransmissionCase::Ue2Coop;
    if (!keep12) {
        out.r12 = 0;
        out.r10 = out.r1;
    }
    if (!keep21) {
        out.r21 = 0;
        out.r20 = out.r2;
    }
    return out;
}

std::pair<bool, bool> ue_outage_indicators(const LinkState& ls, const PhaseSchedule& ps,
                                           const PowerAllocation& pa, const RateTargets& rt) {
    const bool m2 = ps.alpha1 * bits(ls.g12 * ls.g12 * pa.rho11) < rt.r12;
    const bool m1 = ps.alpha2 * bits(ls.g21 * ls.g21 * pa.rho22) < rt.r21;
    return {m1, m2};
}

bool coop_common_outage_indicator(const JTerms& j, const RateTargets& rt) {
    const double privates = rt.r10 + rt.r20;
    const bool decodable = rt.r12 <= j.j6 - privates && rt.r21 <= j.j7 - privates &&
                           rt.r12 + rt.r21 <= j.j8 - privates;
    return !decodable;
}

bool fd3_coop_common_outage_indicator(const JTerms& j, const RateTargets& rt) {
    return !(rt.r12 + rt.r21 <= j.j8 - (rt.r10 + rt.r20));
}

PrivateOutage private_outage_indicators(const JTerms& j, const RateTargets& rt, PrivateOutageRule rule) {
    const double r10 = rt.r10;
    const double r20 = rt.r20;
    const double sum = r10 + r20;
    bool only1, only2, both;
    if (rule == PrivateOutageRule::Mac) {
        // UE2 decodable treating UE1 as noise: r20 <= J5 - J3 (and the mirror).
        only1 = r10 > j.j3 && r20 <= j.j5 - j.j3;
        only2 = r20 > j.j4 && r10 <= j.j5 - j.j4;
        both = r10 > j.j5 - j.j4 && r20 > j.j5 - j.j3 && sum > j.j5;
    } else {
        only1 = r10 > j.j3 && r20 <= j.j5 - j.j1;
        only2 = r20 > j.j4 && r10 <= j.j5 - j.j2;
        both = r10 <= j.j5 - j.j2 && r20 > j.j5 - j.j1 && sum > j.j5;
    }
    return {only1 || only2 || both, only1 || both, only2 || both};
}

BsOutage bs_outage_indicators(const JTerms& j, const RateTargets& rt, TransmissionCase c,
                              PrivateOutageRule rule) {
    BsOutage bs;
    switch (c) {
    case TransmissionCase::DirectBoth: bs.coop = false; break;
    case TransmissionCase::CoopBoth: bs.coop = coop_common_outage_indicator(j, rt); break;
    case TransmissionCase::Ue1Coop: bs.coop = rt.r12 > j.j6 - (rt.r10 + rt.r20); break;
    case TransmissionCase::Ue2Coop: bs.coop = rt.r21 > j.j7 - (rt.r10 + rt.r20); break;
    }
    bs.priv = private_outage_indicators(j, rt, rule);
    bs.common = bs.coop || bs.priv.common;
    bs.ind1 = bs.coop || bs.priv.ind1;
    bs.ind2 = bs.coop || bs.priv.ind2;
    return bs;
}

BlockOutage block_outage(const LinkState& ls, const TdPolicy& policy, const RateTargets& rt,
                         PrivateOutageRule rule) {
    return td_block_checked(ls, policy, rt, rule, false);
}

BlockOutage fd3_block_outage(const LinkState& ls, const TdPolicy& policy, const RateTargets& rt,
                             PrivateOutageRule rule) {
    return td_block_checked(ls, policy, rt, rule, true);
}

EventFlags event_flags(const LinkState& ls, const TdPolicy& policy, const RateTargets& rt) {
    const TransmissionCase c = classify_case(ls);
    const JTerms j = j_terms(ls, policy.phases, policy.powers);
    const bool m2 = j.j1 < rt.r12;
    const bool m1 = j.j2 < rt.r21;
    EventFlags f;
    f.xi1 = c == TransmissionCase::CoopBoth && !m1 && !m2;
    f.xi3 = c == TransmissionCase::Ue1Coop && !m2;
    f.xi4 = c == TransmissionCase::Ue2Coop && !m1;
    f.xi2 = c != TransmissionCase::DirectBoth && !bs_outage_indicators(j, rt, c).coop;
    return f;
}

BlockOutage fd2_block_outage(const LinkState& ls, const Fd2Params& fp, double r1, double r2) {
    const TransmissionCase c = classify_case(ls);
    const Fd2Rates a = fd2_rates(ls, fp);
    const bool ue2_relays = c == TransmissionCase::CoopBoth || c == TransmissionCase::Ue1Coop;
    const bool ue1_relays = c == TransmissionCase::CoopBoth || c == TransmissionCase::Ue2Coop;
    BlockOutage b;
    b.pm2 = ue2_relays && r1 > a.a1;
    b.pm1 = ue1_relays && r2 > a.a2;
    const bool bs1 = r1 > a.a3;
    const bool bs2 = r2 > a.a4;
    const bool at_bs = !b.pm1 && !b.pm2;
    b.pbc = at_bs && (bs1 || bs2);
    b.pb1 = at_bs && bs1;
    b.pb2 = at_bs && bs2;
    // A relay failure only loses the relayed UE's data.
    b.p1 = b.pm2 || bs1;
    b.p2 = b.pm1 || bs2;
    b.pc = b.pm1 || b.pm2 || bs1 || bs2;
    return b;
}

BlockOutage mac_block_outage(const LinkState& ls, double p1, double p2, double r1, double r2,
                             PrivateOutageRule rule) {
    JTerms j;
    const double s1 = ls.g10 * ls.g10 * p1;
    const double s2 = ls.g20 * ls.g20 * p2;
    j.j3 = bits(s1);
    j.j4 = bits(s2);
    j.j5 = bits(s1 + s2);
    RateTargets rt;
    rt.r1 = rt.r10 = r1;
    rt.r2 = rt.r20 = r2;
    const PrivateOutage po = private_outage_indicators(j, rt, rule);
    BlockOutage b;
    b.pcp = b.pbc = b.pc = po.common;
    b.p1p = b.pb1 = b.p1 = po.ind1;
    b.p2p = b.pb2 = b.p2 = po.ind2;
    return b;
}

BlockOutage rp_block_outage(const LinkState& ls, double p1, double p2, double r1, double r2, double split,
                            bool boost) {
    NetworkConfig dummy(1, 1, 1, 1, p1, p2);
    const RateRegion region = rp_region(ls, dummy, split, boost);
    BlockOutage b;
    b.pb1 = b.p1p = b.p1 = r1 > region.r1_bound();
    b.pb2 = b.p2p = b.p2 = r2 > region.r2_bound();
    b.pbc = b.pcp = b.pc = b.p1 || b.p2;
    return b;
}

void TdOutagePlan::normalize() {
    for (TransmissionCase c : kAllCases) {
        auto& entry = cases[index_of(c)];
        entry.policy = case_policy(c, entry.policy);
        entry.targets = case_targets(c, entry.targets);
    }
}

namespace {

void validate_plan(const OutagePlan& plan) {
    if (const auto* td = std::get_if<TdOutagePlan>(&plan)) {
        for (TransmissionCase c : kAllCases) {
            const auto& e = td->cases[index_of(c)];
            e.policy.phases.validate();
            e.policy.powers.validate();
            e.targets.validate();
            check_case_consistency(c, e.policy, e.targets);
        }
    } else if (const auto* fd2 = std::get_if<Fd2OutagePlan>(&plan)) {
        for (const auto& fp : fd2->cases) fp.validate();
    } else if (const auto* rp = std::get_if<RpOutagePlan>(&plan)) {
        if (!(rp->split > 0.0 && rp->split < 1.0)) throw std::invalid_argument("rp plan: split must lie in (0, 1)");
    }
}

}  // namespace

BlockOutage evaluate_block(const OutagePlan& plan, const LinkState& ls) {
    return std::visit(
        [&ls](const auto& p) -> BlockOutage {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, TdOutagePlan>) {
                const TransmissionCase c = classify_case(ls);
                const auto& e = p.cases[index_of(c)];
                return td_block_outage_unchecked(ls, c, e.policy, e.targets, p.rule, p.fd3);
            } else if constexpr (std::is_same_v<P, Fd2OutagePlan>) {
                return fd2_block_outage(ls, p.cases[index_of(classify_case(ls))], p.r1, p.r2);
            } else if constexpr (std::is_same_v<P, MacOutagePlan>) {
                return mac_block_outage(ls, p.p1, p.p2, p.r1, p.r2, p.rule);
            } else {
                return rp_block_outage(ls, p.p1, p.p2, p.r1, p.r2, p.split, p.boost);
            }
        },
        plan);
}

std::uint64_t to_mask(const BlockOutage& b) {
    const bool fields[kBreakdownBits] = {b.pm1, b.pm2, b.pcc, b.pcp, b.p1p, b.p2p,
                                         b.pbc, b.pb1, b.pb2, b.pc,  b.p1,  b.p2};
    std::uint64_t m = 0;
    for (int i = 0; i < kBreakdownBits; ++i)
        if (fields[i]) m |= std::uint64_t{1} << i;
    return m;
}

OutageBreakdown average_outage(const NetworkConfig& cfg, const OutagePlan& plan, const EstimatorConfig& mc,
                               Execution exec) {
    validate_plan(plan);
    const MaskCounts counts = count_masks(
        mc, cfg,
        [&plan](const LinkState& ls) {
            const std::uint64_t case_bit = std::uint64_t{1} << (kBreakdownBits + index_of(classify_case(ls)));
            return to_mask(evaluate_block(plan, ls)) | case_bit;
        },
        exec);

    OutageBreakdown out;
    Estimate* fields[kBreakdownBits] = {&out.pm1, &out.pm2, &out.pcc, &out.pcp, &out.p1p, &out.p2p,
                                        &out.pbc, &out.pb1, &out.pb2, &out.pc,  &out.p1,  &out.p2};
    for (int i = 0; i < kBreakdownBits; ++i) *fields[i] = counts.probability(std::uint64_t{1} << i);
    for (TransmissionCase c : kAllCases) {
        const std::uint64_t case_bit = std::uint64_t{1} << (kBreakdownBits + index_of(c));
        const std::uint64_t in_case = counts.hits(case_bit);
        out.case_frequency[index_of(c)] = bernoulli_estimate(in_case, counts.n);
        out.case_common[index_of(c)] = bernoulli_estimate(counts.hits(case_bit | kPcBit), in_case);
    }
    return out;
}

}  // namespace d2d
