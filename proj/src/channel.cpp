#include "d2d/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace d2d {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::domain_error(std::string(name) + " must be positive and finite");
}

void require_budget(double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v))
        throw std::domain_error(std::string(name) + " must be non-negative and finite");
}

// Rayleigh amplitude with E[g^2] = mu: g^2 = -mu * ln(1 - U).
double rayleigh(double mu, Rng& rng) { return std::sqrt(-mu * std::log1p(-uniform01(rng))); }

}  // namespace

std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

double mean_gain(double distance, double gamma) {
    require_positive(distance, "distance");
    require_positive(gamma, "gamma");
    return std::pow(distance, -gamma);
}

NetworkConfig::NetworkConfig(double d10, double d20, double d12, double gamma, double p1, double p2)
    : d10_(d10), d20_(d20), d12_(d12), gamma_(gamma), p1_(p1), p2_(p2) {
    require_positive(d10, "d10");
    require_positive(d20, "d20");
    require_positive(d12, "d12");
    require_positive(gamma, "gamma");
    require_budget(p1, "p1");
    require_budget(p2, "p2");
}

NetworkConfig NetworkConfig::from_mean_gains(double mu10, double mu20, double mu12, double gamma,
                                             double p1, double p2) {
    require_positive(mu10, "mu10");
    require_positive(mu20, "mu20");
    require_positive(mu12, "mu12");
    require_positive(gamma, "gamma");
    const auto dist = [gamma](double mu) { return std::pow(mu, -1.0 / gamma); };
    return {dist(mu10), dist(mu20), dist(mu12), gamma, p1, p2};
}

NetworkConfig NetworkConfig::with_budgets(double p1, double p2) const {
    return {d10_, d20_, d12_, gamma_, p1, p2};
}

LinkState sample_block(const NetworkConfig& cfg, Rng& rng) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    LinkState ls;
    ls.g10 = rayleigh(cfg.mu10(), rng);
    ls.g20 = rayleigh(cfg.mu20(), rng);
    ls.g12 = rayleigh(cfg.mu12(), rng);
    ls.g21 = rayleigh(cfg.mu21(), rng);
    ls.theta10 = two_pi * uniform01(rng);
    ls.theta20 = two_pi * uniform01(rng);
    ls.theta12 = two_pi * uniform01(rng);
    ls.theta21 = two_pi * uniform01(rng);
    return ls;
}

std::string_view to_string(TransmissionCase c) {
    switch (c) {
    case TransmissionCase::DirectBoth: return "case1";
    case TransmissionCase::CoopBoth: return "case2";
    case TransmissionCase::Ue1Coop: return "case3";
    case TransmissionCase::Ue2Coop: return "case4";
    }
    return "unknown";
}

CaseProbabilities case_probability(const NetworkConfig& cfg) {
    const double ue1_direct = cfg.mu10() / (cfg.mu10() + cfg.mu12());
    const double ue2_direct = cfg.mu20() / (cfg.mu20() + cfg.mu21());
    CaseProbabilities out;
    out.p[index_of(TransmissionCase::DirectBoth)] = ue1_direct * ue2_direct;
    out.p[index_of(TransmissionCase::CoopBoth)] = (1.0 - ue1_direct) * (1.0 - ue2_direct);
    out.p[index_of(TransmissionCase::Ue1Coop)] = (1.0 - ue1_direct) * ue2_direct;
    out.p[index_of(TransmissionCase::Ue2Coop)] = ue1_direct * (1.0 - ue2_direct);
    return out;
}

}  // namespace d2d
