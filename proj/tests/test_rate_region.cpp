#include <cmath>
#include <stdexcept>

#include "d2d/rate_region.hpp"
#include "d2d/schemes.hpp"
#include "doctest.h"
#include "oracle_values.hpp"
#include "test_util.hpp"

using namespace d2d;

namespace {

RateRegion region_of(double j1, double j2, double j3, double j4, double j5, double j8) {
    JTerms j;
    j.j1 = j1, j.j2 = j2, j.j3 = j3, j.j4 = j4, j.j5 = j5, j.j8 = j8;
    return achievable_region(j);
}

}  // namespace

TEST_CASE("phase and power validation") {
    CHECK_THROWS_AS(PhaseSchedule({0.7, 0.5}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(PhaseSchedule({-0.1, 0.5}).validate(), std::invalid_argument);
    PowerAllocation pa;
    pa.rho10 = -1;
    CHECK_THROWS_AS(pa.validate(), std::invalid_argument);
    const PhaseSchedule ps{0.25, 0.25};
    const PowerAllocation ok{2, 2, 1, 1, 0.5, 0.5};
    const auto [u1, u2] = power_usage(ps, ok);
    CHECK(u1 == doctest::Approx(0.25 * 2 + 0.5 * 1.5));
    CHECK(u2 == doctest::Approx(u1));
    CHECK(meets_budgets(ps, ok, 1.25, 1.25));
    CHECK_FALSE(meets_budgets(ps, ok, 1.2, 1.25));
}

TEST_CASE("j terms") {
    SUBCASE("J1 example") {
        const LinkState ls{0, 0, 1, 0};
        const auto j = j_terms(ls, {0.5, 0}, {3, 0, 0, 0, 0, 0});
        CHECK(j.j1 == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("beamforming zeta") {
        const LinkState ls{1, 1, 0, 0};
        const auto j = j_terms(ls, {0, 0}, {0, 0, 0, 0, 1, 1});
        CHECK(j.zeta == doctest::Approx(oracle::kZetaBeamform).epsilon(1e-14));
    }
    SUBCASE("dead channel") {
        const auto j = j_terms(LinkState{}, {0.2, 0.3}, {1, 1, 1, 1, 1, 1});
        for (double v : {j.j1, j.j2, j.j3, j.j4, j.j5, j.j6, j.j7, j.j8}) CHECK(v == 0.0);
    }
    SUBCASE("generic instance") {
        const LinkState ls{0.8, 0.45, 1.7, 1.2};
        const PhaseSchedule ps{0.3, 0.2};
        const PowerAllocation pa{2.5, 1.5, 0.7, 1.1, 0.9, 0.4};
        const auto j = j_terms(ls, ps, pa);
        const double eps = 1e-13;
        CHECK(j.j1 == doctest::Approx(oracle::kInst_j1).epsilon(eps));
        CHECK(j.j2 == doctest::Approx(oracle::kInst_j2).epsilon(eps));
        CHECK(j.j3 == doctest::Approx(oracle::kInst_j3).epsilon(eps));
        CHECK(j.j4 == doctest::Approx(oracle::kInst_j4).epsilon(eps));
        CHECK(j.j5 == doctest::Approx(oracle::kInst_j5).epsilon(eps));
        CHECK(j.zeta == doctest::Approx(oracle::kInst_zeta).epsilon(eps));
        CHECK(j.j6 == doctest::Approx(oracle::kInst_j6).epsilon(eps));
        CHECK(j.j7 == doctest::Approx(oracle::kInst_j7).epsilon(eps));
        CHECK(j.j8 == doctest::Approx(oracle::kInst_j8).epsilon(eps));
        const auto ob = outer_bound_region(ls, ps, pa);
        CHECK(ob.r1_bound() == doctest::Approx(oracle::kInst_outer_r1).epsilon(eps));
        CHECK(ob.r2_bound() == doctest::Approx(oracle::kInst_outer_r2).epsilon(eps));
        CHECK(ob.sum_bound() == doctest::Approx(oracle::kInst_outer_sum).epsilon(eps));
    }
    SUBCASE("invalid input") {
        CHECK_THROWS_AS(j_terms(LinkState{}, {0.8, 0.8}, {}), std::invalid_argument);
    }
}

TEST_CASE("region membership") {
    const auto r = region_of(1, 1, 1, 1, 1.5, 2.5);
    CHECK(r.contains(1.2, 1.2));
    CHECK_FALSE(r.contains(2.1, 0));
    CHECK(r.r1_bound() == 2);
    CHECK(r.sum_bound() == 2.5);
    CHECK(r.contains(2, 0.5));  // boundary is inside
    CHECK_FALSE(r.contains(-0.1, 0));
}

TEST_CASE("weighted sum") {
    RateRegion r;
    r.add(1, 0, 2, "a");
    r.add(0, 1, 2, "b");
    r.add(1, 1, 2.5, "c");
    const auto p = max_weighted_sum(r, 1, 0);
    CHECK(p.value == doctest::Approx(2));
    CHECK(p.r1 == doctest::Approx(2));
    CHECK(max_weighted_sum(r, 1, 1).value == doctest::Approx(2.5));
    CHECK(max_weighted_sum(r, 0, 1).r2 == doctest::Approx(2));

    Rng rng(11);
    std::uniform_real_distribution<double> u(0, 3);
    for (int i = 0; i < 2000; ++i) {
        RateRegion q;
        q.add(1, 0, u(rng), "r1");
        q.add(0, 1, u(rng), "r2");
        q.add(1, 1, u(rng), "sum");
        const double w1 = u(rng), w2 = u(rng);
        CHECK(weighted_value(bounds_of(q), w1, w2) == doctest::Approx(max_weighted_sum(q, w1, w2).value).epsilon(1e-12));
    }
}

TEST_CASE("outer bound") {
    SUBCASE("no exchange phase for UE1") {
        const LinkState ls{0.8, 0.5, 1.5, 1.1};
        const PhaseSchedule ps{0, 0.3};
        const PowerAllocation pa{1, 1, 1, 1, 1, 1};
        CHECK(outer_bound_region(ls, ps, pa).r1_bound() == doctest::Approx(j_terms(ls, ps, pa).j3));
    }
    SUBCASE("no direct link for UE1") {
        const LinkState ls{0, 0.5, 1.5, 1.1};
        const PhaseSchedule ps{0.3, 0.3};
        const PowerAllocation pa{1, 1, 1, 1, 1, 1};
        const auto j = j_terms(ls, ps, pa);
        CHECK(outer_bound_region(ls, ps, pa).r1_bound() == doctest::Approx(j.j1 + j.j3));
    }
    SUBCASE("contains the achievable region") {
        Rng rng(3);
        for (int i = 0; i < 2000; ++i) {
            const auto ls = testutil::random_links(rng);
            const auto pol = testutil::random_policy(rng);
            const auto a = achievable_region(j_terms(ls, pol.phases, pol.powers));
            const auto o = outer_bound_region(ls, pol.phases, pol.powers);
            CHECK(o.r1_bound() >= a.r1_bound() - 1e-12);
            CHECK(o.r2_bound() >= a.r2_bound() - 1e-12);
            CHECK(o.sum_bound() >= a.sum_bound() - 1e-12);
            const auto ob = outer_bounds(ls, pol.phases, pol.powers);
            CHECK(ob.sum == doctest::Approx(o.sum_bound()));
        }
    }
}

TEST_CASE("redundancy gap") {
    SUBCASE("example") {
        JTerms j;
        j.j1 = 1, j.j2 = 1, j.j5 = 1.5, j.j6 = 2, j.j7 = 2, j.j8 = 2.5;
        CHECK(redundancy_gap(j) == doctest::Approx(0.5));
    }
    SUBCASE("fails without case consistency") {
        // UE1 spends time exchanging although its direct link is stronger (g12 < g10),
        // while UE2 has a strong inter-UE link: J1 + J7 becomes the binding sum.
        const LinkState ls{2.0, 0.5, 0.1, 2.0};
        const PhaseSchedule ps{0.3, 0.3};
        const PowerAllocation pa{1, 1, 1, 1, 0, 0};
        CHECK(redundancy_gap(j_terms(ls, ps, pa)) < -0.5);
    }
    SUBCASE("holds for case-consistent policies") {
        Rng rng(17);
        for (int i = 0; i < 5000; ++i) {
            const auto ls = testutil::random_links(rng);
            const auto pol = case_policy(classify_case(ls), testutil::random_policy(rng));
            CHECK(redundancy_gap(j_terms(ls, pol.phases, pol.powers)) >= -1e-12);
        }
    }
}
