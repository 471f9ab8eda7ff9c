#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string_view>

namespace d2d {

// Random source used everywhere a fading block is drawn. Substreams are
// derived with split_seed() so that chunked Monte-Carlo is reproducible.
using Rng = std::mt19937_64;

// Counter-based seed derivation (splitmix64 finalizer over master ^ f(index)).
std::uint64_t split_seed(std::uint64_t master, std::uint64_t index);

// Uniform double in [0, 1) built from the top 53 bits of one draw.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double mean_gain(double distance, double gamma);

/**
 * Geometry and power budgets of the two-UE uplink.
 *
 * Mean squared link gains are derived from the distances on every access,
 * so they can never disagree with the geometry. The inter-UE link is
 * reciprocal in distance (d21 == d12).
 */
class NetworkConfig {
public:
    NetworkConfig(double d10, double d20, double d12, double gamma, double p1, double p2);

    // Builds the geometry that reproduces the given mean gains at exponent gamma.
    static NetworkConfig from_mean_gains(double mu10, double mu20, double mu12, double gamma,
                                         double p1, double p2);

    double d10() const { return d10_; }
    double d20() const { return d20_; }
    double d12() const { return d12_; }
    double d21() const { return d12_; }
    double gamma() const { return gamma_; }
    double p1() const { return p1_; }
    double p2() const { return p2_; }

    double mu10() const { return mean_gain(d10_, gamma_); }
    double mu20() const { return mean_gain(d20_, gamma_); }
    double mu12() const { return mean_gain(d12_, gamma_); }
    double mu21() const { return mean_gain(d12_, gamma_); }

    NetworkConfig with_budgets(double p1, double p2) const;

private:
    double d10_, d20_, d12_, gamma_, p1_, p2_;
};

// One block-fading realization: amplitudes g_ij = |h_ij| and phases.
struct LinkState {
    double g10 = 0, g20 = 0, g12 = 0, g21 = 0;
    double theta10 = 0, theta20 = 0, theta12 = 0, theta21 = 0;
};

// Draws a Rayleigh block: g^2 exponential with mean mu_ij, phases uniform.
// Draw order is fixed (g10, g20, g12, g21, then the four phases).
LinkState sample_block(const NetworkConfig& cfg, Rng& rng);

enum class TransmissionCase : std::uint8_t {
    DirectBoth = 0,  // g12 <= g10 and g21 <= g20
    CoopBoth = 1,    // g12 >  g10 and g21 >  g20
    Ue1Coop = 2,     // g12 >  g10 and g21 <= g20
    Ue2Coop = 3,     // g12 <= g10 and g21 >  g20
};

inline constexpr std::array<TransmissionCase, 4> kAllCases = {
    TransmissionCase::DirectBoth, TransmissionCase::CoopBoth, TransmissionCase::Ue1Coop,
    TransmissionCase::Ue2Coop};

inline std::size_t index_of(TransmissionCase c) { return static_cast<std::size_t>(c); }
std::string_view to_string(TransmissionCase c);

inline TransmissionCase classify_case(const LinkState& ls) {
    const bool ue1_coop = ls.g12 > ls.g10;
    const bool ue2_coop = ls.g21 > ls.g20;
    if (ue1_coop && ue2_coop) return TransmissionCase::CoopBoth;
    if (ue1_coop) return TransmissionCase::Ue1Coop;
    if (ue2_coop) return TransmissionCase::Ue2Coop;
    return TransmissionCase::DirectBoth;
}

// Occurrence probability of each case, indexed by index_of(TransmissionCase).
struct CaseProbabilities {
    std::array<double, 4> p{};
    double operator[](TransmissionCase c) const { return p[index_of(c)]; }
};

// Closed form from independent exponential gains:
// P[g12 <= g10] = mu10 / (mu10 + mu12), P[g21 <= g20] = mu20 / (mu20 + mu21).
CaseProbabilities case_probability(const NetworkConfig& cfg);

}  // namespace d2d
