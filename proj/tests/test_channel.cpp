#include <cmath>
#include <stdexcept>

#include "d2d/channel.hpp"
#include "d2d/montecarlo.hpp"
#include "doctest.h"
#include "oracle_values.hpp"

using namespace d2d;

TEST_CASE("mean gain") {
    CHECK(mean_gain(1, 2.4) == 1.0);
    CHECK(mean_gain(20, 2.4) == doctest::Approx(oracle::kMeanGain20).epsilon(1e-12));
    CHECK(mean_gain(12, 2.4) == doctest::Approx(oracle::kMeanGain12).epsilon(1e-12));
    CHECK_THROWS_AS(mean_gain(0, 2.4), std::domain_error);
    CHECK_THROWS_AS(mean_gain(-1, 2.4), std::domain_error);
}

TEST_CASE("network config") {
    const NetworkConfig cfg(20, 30, 12, 2.4, 1, 2);
    CHECK(cfg.mu21() == cfg.mu12());
    CHECK(cfg.mu20() == doctest::Approx(oracle::kMeanGain30).epsilon(1e-12));
    const auto f = NetworkConfig::from_mean_gains(4, 1, 16, 2.4, 2, 2);
    CHECK(f.mu10() == doctest::Approx(4).epsilon(1e-12));
    CHECK(f.mu12() == doctest::Approx(16).epsilon(1e-12));
    CHECK(cfg.with_budgets(3, 4).p2() == 4);
}

TEST_CASE("classify_case") {
    CHECK(classify_case({1, 1, 2, 0.5}) == TransmissionCase::Ue1Coop);
    CHECK(classify_case({1, 1, 1, 1}) == TransmissionCase::DirectBoth);  // ties go direct
    CHECK(classify_case({1, 1, 3, 3}) == TransmissionCase::CoopBoth);
    CHECK(classify_case({1, 1, 0.5, 3}) == TransmissionCase::Ue2Coop);
}

TEST_CASE("case probabilities") {
    SUBCASE("symmetric") {
        const auto p = case_probability(NetworkConfig(10, 10, 10, 2.4, 1, 1));
        for (double v : p.p) CHECK(v == doctest::Approx(0.25).epsilon(1e-12));
    }
    SUBCASE("reference geometry") {
        const auto p = case_probability(NetworkConfig(20, 30, 12, 2.4, 1, 1));
        CHECK(p[TransmissionCase::DirectBoth] == doctest::Approx(oracle::kRefCase1).epsilon(1e-12));
        CHECK(p[TransmissionCase::CoopBoth] == doctest::Approx(oracle::kRefCase2).epsilon(1e-12));
        CHECK(p[TransmissionCase::Ue1Coop] == doctest::Approx(oracle::kRefCase3).epsilon(1e-12));
        CHECK(p[TransmissionCase::Ue2Coop] == doctest::Approx(oracle::kRefCase4).epsilon(1e-12));
        CHECK(p.p[0] + p.p[1] + p.p[2] + p.p[3] == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("inter-UE distance to zero") {
        const auto p = case_probability(NetworkConfig(20, 30, 1e-3, 2.4, 1, 1));
        CHECK(p[TransmissionCase::CoopBoth] > 1 - 1e-9);
    }
    SUBCASE("monte carlo agrees") {
        const NetworkConfig cfg(20, 30, 12, 2.4, 1, 1);
        const auto p = case_probability(cfg);
        for (auto c : kAllCases) {
            const auto est = estimate_bernoulli({7, 200000, 16}, cfg,
                                                [c](const LinkState& ls) { return classify_case(ls) == c; });
            CHECK(std::abs(est.mean - p[c]) <= 4 * est.std_error + 1e-12);
        }
    }
}

TEST_CASE("sample_block") {
    const NetworkConfig cfg(20, 30, 12, 2.4, 1, 1);
    Rng a(5), b(5);
    const auto x = sample_block(cfg, a), y = sample_block(cfg, b);
    CHECK(x.g10 == y.g10);
    CHECK(x.theta21 == y.theta21);
    // E[g^2] = mu for Rayleigh amplitudes.
    const auto m = estimate_mean({3, 200000, 8}, cfg, [](const LinkState& ls) { return ls.g10 * ls.g10; });
    CHECK(std::abs(m.mean - cfg.mu10()) <= 4 * m.std_error);
    CHECK(split_seed(1, 0) != split_seed(1, 1));
    CHECK(split_seed(1, 0) != split_seed(2, 0));
}
