#include <cmath>
#include <stdexcept>

#include "d2d/search.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace d2d;

TEST_CASE("grid enumeration") {
    std::vector<std::vector<double>> seen;
    const std::vector<double> lo{0, 0}, hi{1, 1};
    for_each_grid_point(lo, hi, 2, [&](const std::vector<double>& x) { seen.push_back(x); });
    REQUIRE(seen.size() == 9);
    CHECK(seen[0] == std::vector<double>{0, 0});
    CHECK(seen[1] == std::vector<double>{0, 0.5});
    CHECK(seen[3] == std::vector<double>{0.5, 0});
    CHECK(seen[8] == std::vector<double>{1, 1});
    seen.clear();
    const std::vector<double> lo2{-0.5}, hi2{0.5};
    for_each_grid_point(lo2, hi2, 2, [&](const std::vector<double>& x) { seen.push_back(x); });
    CHECK(seen.front()[0] == 0);  // clamped
    CHECK_THROWS_AS(grid_maximize(1, {1, 2, 1}, [](const std::vector<double>&) { return 0.0; }),
                    std::invalid_argument);
}

TEST_CASE("grid maximize") {
    const auto f = [](const std::vector<double>& x) {
        return -(x[0] - 0.3) * (x[0] - 0.3) - (x[1] - 0.71) * (x[1] - 0.71);
    };
    double prev = -1e9;
    for (int depth = 0; depth <= 6; ++depth) {
        SearchSpec s;
        s.depth = depth;
        const auto r = grid_maximize(2, s, f);
        CHECK(r.value >= prev);
        prev = r.value;
    }
    CHECK(prev > -1e-4);
    // Ties keep the first point.
    const auto flat = grid_maximize(2, {}, [](const std::vector<double>&) { return 1.0; });
    CHECK(flat.x == std::vector<double>{0, 0});
}

TEST_CASE("weighted rate search") {
    const NetworkConfig cfg = NetworkConfig::from_mean_gains(4, 1, 16, 2.4, 2, 2);

    SUBCASE("zero budgets") {
        const auto z = cfg.with_budgets(0, 0);
        Rng rng(1);
        for (auto scheme : {SchemeKind::TdCooperative, SchemeKind::Fd2Band, SchemeKind::ConcurrentSic,
                            SchemeKind::ResourcePartitioning, SchemeKind::OuterBound}) {
            const auto ls = sample_block(cfg, rng);
            CHECK(optimize_weighted_rate(ls, z, scheme, 1, 1, {}).point.value == 0);
            CHECK(optimize_weighted_rate(ls, z, scheme, 1, 0.2, {}).point.value == 0);
        }
    }
    SUBCASE("case 1 gives the MAC policy") {
        const LinkState ls{1.5, 1.2, 0.5, 0.4};
        const auto td = optimize_weighted_rate(ls, cfg, SchemeKind::TdCooperative, 1, 1, {});
        CHECK(td.policy.td.powers.rho13 == 0);
        CHECK(td.policy.td.powers.rho23 == 0);
        CHECK(td.policy.td.phases.alpha1 == 0);
        CHECK(td.point.value == doctest::Approx(max_weighted_sum(mac_sic_region(ls, cfg), 1, 1).value));
    }
    SUBCASE("symmetric channel") {
        const LinkState ls{0.8, 0.8, 2.0, 2.0};
        const auto td = optimize_weighted_rate(ls, cfg, SchemeKind::TdCooperative, 1, 1, {});
        // Symmetric allocations on a fine grid.
        double best = 0;
        for (int a = 0; a <= 40; ++a)
            for (int s = 0; s <= 20; ++s)
                for (int c = 0; c <= 20; ++c) {
                    const double alpha = 0.5 * a / 40.0;
                    const auto pol = td_policy_from_split({alpha, alpha}, cfg.p1(), cfg.p2(),
                                                          {s / 20.0, c / 20.0, s / 20.0, c / 20.0});
                    const auto j = j_terms(ls, pol.phases, pol.powers);
                    best = std::max(best, weighted_value(achievable_bounds(j), 1, 1));
                }
        CHECK(std::abs(td.point.value - best) <= 0.01 * best);
    }
    SUBCASE("finer coarse grid never hurts") {
        Rng rng(6);
        for (int i = 0; i < 10; ++i) {
            const auto ls = sample_block(cfg, rng);
            for (auto scheme : {SchemeKind::TdCooperative, SchemeKind::Fd2Band}) {
                SearchSpec a{2, 2, 0}, b{4, 2, 0};
                const double va = optimize_weighted_rate(ls, cfg, scheme, 1, 0.5, a).point.value;
                const double vb = optimize_weighted_rate(ls, cfg, scheme, 1, 0.5, b).point.value;
                CHECK(vb >= va - 1e-12);
            }
        }
    }
    SUBCASE("refinement never hurts and the point is feasible") {
        Rng rng(7);
        for (int i = 0; i < 10; ++i) {
            const auto ls = sample_block(cfg, rng);
            SearchSpec d0{4, 2, 0}, d2{4, 2, 2};
            const auto a = optimize_weighted_rate(ls, cfg, SchemeKind::TdCooperative, 0.7, 1, d0);
            const auto b = optimize_weighted_rate(ls, cfg, SchemeKind::TdCooperative, 0.7, 1, d2);
            CHECK(b.point.value >= a.point.value - 1e-12);
            CHECK(meets_budgets(b.policy.td.phases, b.policy.td.powers, cfg.p1(), cfg.p2(), 1e-6));
            CHECK(scheme_region(ls, cfg, b.policy).contains(b.point.r1, b.point.r2, 1e-9));
        }
    }
    SUBCASE("outer bound dominates TD") {
        Rng rng(8);
        for (int i = 0; i < 10; ++i) {
            const auto ls = sample_block(cfg, rng);
            const auto td = optimize_weighted_rate(ls, cfg, SchemeKind::TdCooperative, 1, 0.4, {});
            const auto ob = optimize_weighted_rate(ls, cfg, SchemeKind::OuterBound, 1, 0.4, {});
            CHECK(ob.point.value >= td.point.value - 1e-12);
        }
    }
    SUBCASE("bad weights") {
        CHECK_THROWS_AS(optimize_weighted_rate({1, 1, 1, 1}, cfg, SchemeKind::TdCooperative, 0, 0, {}),
                        std::invalid_argument);
    }
}

TEST_CASE("outage search") {
    const NetworkConfig geo(20, 30, 12, 2.4, 1, 1);
    const double p = std::pow(10.0, 2.0) / geo.mu10();
    const NetworkConfig cfg = geo.with_budgets(p, p);
    OutageSearchSettings s;
    s.pilot_samples = 2000;
    s.max_pilot_samples = 2000;
    const EstimatorConfig mc{3, 2000, 8};

    for (auto scheme : {SchemeKind::TdCooperative, SchemeKind::Fd3Band, SchemeKind::Fd2Band,
                        SchemeKind::ConcurrentSic, SchemeKind::ResourcePartitioning}) {
        CAPTURE(to_string(scheme));
        const auto zero = optimize_outage(cfg, scheme, 0, 0, {}, s, mc);
        CHECK_FALSE(zero.infeasible);
        CHECK(zero.pilot_pc == 0);
        const auto huge = optimize_outage(cfg, scheme, 60, 60, {}, s, mc);
        CHECK(huge.infeasible);
    }

    const auto a = optimize_outage(cfg, SchemeKind::TdCooperative, 2, 2, {}, s, mc, 4);
    const auto b = optimize_outage(cfg, SchemeKind::TdCooperative, 2, 2, {}, s, mc, 4);
    CHECK(a.pilot_pc == b.pilot_pc);
    const auto& pa = std::get<TdOutagePlan>(a.plan);
    const auto& pb = std::get<TdOutagePlan>(b.plan);
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(pa.cases[k].targets.r12 == pb.cases[k].targets.r12);
        CHECK(pa.cases[k].policy.powers.rho13 == pb.cases[k].policy.powers.rho13);
    }
    // The chosen plan's pilot numbers are reproducible from the pilot blocks.
    const auto blocks = draw_blocks(mc.substream(4).with_samples(a.pilot_n), cfg);
    const auto again = pilot_outage(a.plan, blocks);
    CHECK(again.pc == a.pilot_pc);
    // Fixed phase durations are respected.
    CHECK(pa.cases[index_of(TransmissionCase::CoopBoth)].policy.phases.alpha1 == 0.25);
    CHECK(pa.cases[index_of(TransmissionCase::Ue1Coop)].policy.phases.alpha1 == 0.4);
}
