#include <cmath>
#include <stdexcept>

#include "d2d/outage.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace d2d;

namespace {

// Case-consistent TD plan with a common split across cases.
TdOutagePlan td_plan(double p1, double p2, double r1, double r2, double coop = 0.5) {
    TdOutagePlan plan;
    const auto pol = td_policy_from_split({0.25, 0.25}, p1, p2, {0.5, 0.5, 0.5, 0.5});
    for (auto& e : plan.cases) e = {pol, RateTargets::split(r1, r2, coop, coop)};
    plan.normalize();
    return plan;
}

JTerms random_j(Rng& rng) {
    const auto ls = testutil::random_links(rng);
    const auto pol = testutil::random_policy(rng);
    return j_terms(ls, pol.phases, pol.powers);
}

}  // namespace

TEST_CASE("rate targets") {
    const auto rt = RateTargets::split(2, 1, 0.25, 1);
    CHECK(rt.r12 == 0.5);
    CHECK(rt.r10 == 1.5);
    CHECK(rt.r21 == 1);
    CHECK(rt.r20 == 0);
    const auto c1 = case_targets(TransmissionCase::DirectBoth, rt);
    CHECK(c1.r12 == 0);
    CHECK(c1.r10 == 2);
    CHECK(c1.r21 == 0);
    const auto c3 = case_targets(TransmissionCase::Ue1Coop, rt);
    CHECK(c3.r12 == 0.5);
    CHECK(c3.r21 == 0);
    CHECK(c3.r20 == 1);
    CHECK_THROWS_AS(RateTargets::split(-1, 1, 0, 0), std::invalid_argument);
}

TEST_CASE("UE outage") {
    const PhaseSchedule ps{0.5, 0.5};
    const PowerAllocation pa{3, 3, 0, 0, 0, 0};
    RateTargets rt;
    CHECK(ue_outage_indicators({1, 1, 1, 1}, ps, pa, rt) == std::pair{false, false});
    rt.r12 = 0.1;
    CHECK(ue_outage_indicators({1, 1, 0, 1}, ps, pa, rt).second);
    rt.r12 = 1.0;  // supported rate 0.5 * log2(4) = 1 exactly
    CHECK_FALSE(ue_outage_indicators({1, 1, 1, 1}, ps, pa, rt).second);
    rt.r21 = 1.0 + 1e-9;
    CHECK(ue_outage_indicators({1, 1, 1, 1}, ps, pa, rt).first);
}

TEST_CASE("cooperative common outage") {
    JTerms j;
    j.j6 = 3, j.j7 = 3, j.j8 = 4;
    RateTargets rt;
    rt.r10 = rt.r20 = 1;
    rt.r12 = rt.r21 = 0.5;
    CHECK_FALSE(coop_common_outage_indicator(j, rt));
    rt.r10 = rt.r20 = 2;
    CHECK(coop_common_outage_indicator(j, rt));
    rt.r10 = rt.r20 = 1;
    rt.r12 = 1.2;  // J6 binding: 1.2 > 3 - 2
    CHECK(coop_common_outage_indicator(j, rt));
    CHECK_FALSE(fd3_coop_common_outage_indicator(j, rt));
}

TEST_CASE("private outage") {
    JTerms j;
    j.j3 = 1, j.j4 = 1, j.j5 = 1.5;
    RateTargets rt;
    rt.r10 = 1.2;
    const auto po = private_outage_indicators(j, rt);
    CHECK(po.common);
    CHECK(po.ind1);
    CHECK_FALSE(po.ind2);

    SUBCASE("matches joint decoding at the base station") {
        Rng rng(31);
        std::uniform_real_distribution<double> u(0, 2.5);
        for (int i = 0; i < 20000; ++i) {
            const JTerms jj = random_j(rng);
            RateTargets t;
            t.r10 = u(rng) * std::max(jj.j3, 0.1);
            t.r20 = u(rng) * std::max(jj.j4, 0.1);
            const auto p = private_outage_indicators(jj, t);
            const bool in_region = t.r10 <= jj.j3 && t.r20 <= jj.j4 && t.r10 + t.r20 <= jj.j5;
            // A UE is still decoded if the other is treated as noise.
            const bool ok1 = in_region || t.r10 <= jj.j5 - jj.j4;
            const bool ok2 = in_region || t.r20 <= jj.j5 - jj.j3;
            CHECK(p.common == !in_region);
            CHECK(p.ind1 == !ok1);
            CHECK(p.ind2 == !ok2);
        }
    }
    SUBCASE("literal rule differs") {
        JTerms k = j;
        k.j1 = 0.2, k.j2 = 0.2;
        RateTargets t;
        t.r10 = 0.3;
        t.r20 = 1.4;  // UE1 fine when UE2 is treated as noise
        CHECK_FALSE(private_outage_indicators(k, t, PrivateOutageRule::Mac).ind1);
        CHECK(private_outage_indicators(k, t, PrivateOutageRule::Literal).ind1);
    }
}

TEST_CASE("base-station composition") {
    Rng rng(5);
    std::uniform_real_distribution<double> u(0, 1.5);
    for (int i = 0; i < 5000; ++i) {
        const JTerms j = random_j(rng);
        RateTargets rt;
        rt.r10 = u(rng), rt.r20 = u(rng), rt.r12 = u(rng), rt.r21 = u(rng);
        const auto bs = bs_outage_indicators(j, rt, TransmissionCase::CoopBoth);
        if (bs.coop) {
            CHECK(bs.common);
            CHECK(bs.ind1);
            CHECK(bs.ind2);
        }
        CHECK(bs.common >= bs.ind1);
        CHECK(bs.common >= bs.ind2);
    }
}

TEST_CASE("block outage") {
    Rng rng(8);
    const NetworkConfig cfg(20, 30, 12, 2.4, 1, 1);
    const double p = std::pow(10.0, 2.0) / cfg.mu10();
    const auto plan = td_plan(p, p, 2, 2);
    int ue_fail = 0;
    for (int i = 0; i < 20000; ++i) {
        const auto ls = sample_block(cfg, rng);
        const auto& e = plan.cases[index_of(classify_case(ls))];
        const auto b = block_outage(ls, e.policy, e.targets);
        CHECK(b.pc >= b.p1);
        CHECK(b.pc >= b.p2);
        if (b.pm1 || b.pm2) {
            ++ue_fail;
            CHECK(b.pc);
            CHECK(b.p1);
            CHECK(b.p2);
            CHECK_FALSE(b.pbc);
        }
        if (b.pcc) {
            CHECK(b.p1);
            CHECK(b.p2);
            CHECK_FALSE(b.pcp);
        }
        const auto f = fd3_block_outage(ls, e.policy, e.targets);
        // Fewer constraints for FD3.
        if (f.pcc || f.pm1 || f.pm2) CHECK((b.pcc || b.pm1 || b.pm2));
        CHECK(f.pc <= b.pc);
        CHECK(evaluate_block(OutagePlan{plan}, ls).pc == b.pc);
    }
    CHECK(ue_fail > 0);

    SUBCASE("zero targets") {
        const auto zero = td_plan(p, p, 0, 0);
        for (int i = 0; i < 1000; ++i) {
            const auto ls = sample_block(cfg, rng);
            const auto& e = zero.cases[index_of(classify_case(ls))];
            CHECK(to_mask(block_outage(ls, e.policy, e.targets)) == 0);
            CHECK(to_mask(fd3_block_outage(ls, e.policy, e.targets)) == 0);
        }
    }
    SUBCASE("case-inconsistent input is rejected") {
        const LinkState direct{1, 1, 0.5, 0.5};
        const auto pol = td_policy_from_split({0.25, 0.25}, 1, 1, {0.5, 0.5, 0.5, 0.5});
        CHECK_THROWS_AS(block_outage(direct, pol, RateTargets::split(1, 1, 0.5, 0.5)), std::invalid_argument);
    }
}

TEST_CASE("event flags") {
    const auto plan = td_plan(10, 10, 0.1, 0.1);
    const LinkState strong{1, 1, 2, 2};
    const auto& e = plan.cases[index_of(TransmissionCase::CoopBoth)];
    const auto f = event_flags(strong, e.policy, e.targets);
    CHECK(f.xi1);
    CHECK(f.xi2);
    CHECK_FALSE(f.xi3);
    CHECK_FALSE(f.xi4);
}

TEST_CASE("two-band FD outage") {
    Fd2Params fp = fd2_params_from_split(0.5, 1, 1, {0.5, 0.5, 0.5, 0.5});
    CHECK(to_mask(fd2_block_outage({1, 1, 2, 2}, fp, 0, 0)) == 0);

    // UE2 cannot decode UE1: only UE1's data is lost.
    const LinkState weak_relay{0.1, 5, 0.2, 6};
    const auto b = fd2_block_outage(weak_relay, fp, 0.5, 0.01);
    REQUIRE(classify_case(weak_relay) == TransmissionCase::CoopBoth);
    CHECK(b.pm2);
    CHECK(b.p1);
    CHECK(b.pc);

    // Huge base-station thresholds: only exchange failures remain.
    Fd2Params big = fp;
    big.rho1_1 = big.rho1_2 = big.rho2_1 = big.rho2_2 = 1e30;
    Rng rng(2);
    for (int i = 0; i < 2000; ++i) {
        const auto ls = testutil::random_links(rng);
        const auto o = fd2_block_outage(ls, big, 0.5, 0.5);
        CHECK(o.pc == (o.pm1 || o.pm2));
    }
}

TEST_CASE("MAC and RP outage") {
    const auto mac = mac_block_outage({1, 1}, 1, 1, 0.5, 0.5);
    CHECK_FALSE(mac.pc);
    const auto over = mac_block_outage({1, 1}, 1, 1, 1.2, 0);
    CHECK(over.pc);
    CHECK(over.p1);
    CHECK_FALSE(over.p2);
    const auto rp = rp_block_outage({1, 1}, 3, 3, 0.5 * std::log2(7.0), 2);
    CHECK_FALSE(rp.p1);
    CHECK(rp.p2);
    CHECK(rp.pc);
}

TEST_CASE("average outage") {
    const NetworkConfig cfg(20, 30, 12, 2.4, 1, 1);
    const EstimatorConfig mc{3, 20000, 16};
    const auto at = [&](double snr_db, double r) {
        const double p = std::pow(10.0, snr_db / 10) / cfg.mu10();
        return average_outage(cfg, td_plan(p, p, r, r), mc);
    };
    const auto zero = at(20, 0);
    CHECK(zero.pc.mean == 0);
    const auto o = at(20, 2);
    CHECK(o.pc.mean >= o.p1.mean);
    CHECK(o.pc.mean >= o.p2.mean);
    double total = 0;
    for (auto e : o.case_frequency) total += e.mean;
    CHECK(total == doctest::Approx(1.0));

    // Non-increasing in SNR with common random numbers.
    double prev = 2;
    for (double snr : {0.0, 6.0, 12.0, 18.0, 24.0}) {
        const auto r = at(snr, 2);
        CHECK(r.pc.mean <= prev);
        prev = r.pc.mean;
    }
    // Serial and parallel agree bit for bit.
    const double p = std::pow(10.0, 1.5) / cfg.mu10();
    const auto a = average_outage(cfg, td_plan(p, p, 2, 2), mc, Execution::Serial);
    const auto b = average_outage(cfg, td_plan(p, p, 2, 2), mc, Execution::Parallel);
    CHECK(a.pc.mean == b.pc.mean);
    CHECK(a.p1.mean == b.p1.mean);
}
