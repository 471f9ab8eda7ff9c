#include "d2d/montecarlo.hpp"

#include <stdexcept>

namespace d2d {

void EstimatorConfig::validate() const {
    if (samples < 1) throw std::invalid_argument("estimator: samples must be >= 1");
    if (chunks < 1) throw std::invalid_argument("estimator: chunks must be >= 1");
}

std::uint64_t EstimatorConfig::chunk_begin(std::uint32_t chunk) const {
    const auto wide = static_cast<unsigned __int128>(samples) * chunk / chunks;
    return static_cast<std::uint64_t>(wide);
}

Estimate bernoulli_estimate(std::uint64_t hits, std::uint64_t n) {
    if (n == 0) return {};
    const double mean = static_cast<double>(hits) / static_cast<double>(n);
    return {mean, std::sqrt(mean * (1.0 - mean) / static_cast<double>(n)), n};
}

int max_threads() {
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void set_threads(int n) {
#if defined(_OPENMP)
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

void MaskCounts::merge(const MaskCounts& other) {
    n += other.n;
    for (const auto& [mask, c] : other.counts) counts[mask] += c;
}

std::uint64_t MaskCounts::hits(std::uint64_t bits) const {
    std::uint64_t h = 0;
    for (const auto& [mask, c] : counts)
        if ((mask & bits) == bits) h += c;
    return h;
}

Estimate MaskCounts::probability(std::uint64_t bits) const { return bernoulli_estimate(hits(bits), n); }

Estimate MaskCounts::difference(std::uint64_t a, std::uint64_t b) const {
    if (n == 0) return {};
    std::uint64_t only_a = 0, only_b = 0;
    for (const auto& [mask, c] : counts) {
        const bool ha = (mask & a) == a;
        const bool hb = (mask & b) == b;
        if (ha && !hb) only_a += c;
        if (hb && !ha) only_b += c;
    }
    const double nn = static_cast<double>(n);
    const double pa = static_cast<double>(only_a) / nn;
    const double pb = static_cast<double>(only_b) / nn;
    const double mean = pa - pb;
    // Var of D in {-1, 0, 1}: E[D^2] - E[D]^2.
    const double var = std::max(0.0, pa + pb - mean * mean);
    return {mean, std::sqrt(var / nn), n};
}

std::vector<LinkState> draw_blocks(const EstimatorConfig& cfg, const NetworkConfig& net, Execution exec) {
    cfg.validate();
    std::vector<LinkState> out(cfg.samples);
    detail::map_chunks<int>(cfg, exec, [&](std::uint32_t k) {
        Rng rng = cfg.chunk_rng(k);
        for (std::uint64_t i = cfg.chunk_begin(k), end = cfg.chunk_begin(k + 1); i < end; ++i)
            out[i] = sample_block(net, rng);
        return 0;
    });
    return out;
}

std::uint64_t escalated_samples(double mean, std::uint64_t samples, std::uint64_t max_samples,
                                double min_events) {
    std::uint64_t n = samples;
    while (mean * static_cast<double>(n) < min_events && n < max_samples) n = std::min(n * 10, max_samples);
    return n;
}

}  // namespace d2d
