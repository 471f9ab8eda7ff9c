#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#if defined(_OPENMP)
#include <omp.h>
#endif

#include "d2d/channel.hpp"

namespace d2d {

// Seeded, chunked sampling plan. The chunk count (not the thread count)
// defines the random streams, so results are identical for any parallelism.
struct EstimatorConfig {
    std::uint64_t master_seed = 1;
    std::uint64_t samples = 100000;
    std::uint32_t chunks = 64;

    void validate() const;
    std::uint64_t chunk_begin(std::uint32_t chunk) const;
    std::uint64_t chunk_size(std::uint32_t chunk) const { return chunk_begin(chunk + 1) - chunk_begin(chunk); }
    Rng chunk_rng(std::uint32_t chunk) const { return Rng(split_seed(master_seed, chunk)); }
    EstimatorConfig with_samples(std::uint64_t n) const { return {master_seed, n, chunks}; }
    // Independent stream family for the same experiment (e.g. optimizer pilots).
    EstimatorConfig substream(std::uint64_t tag) const { return {split_seed(master_seed, ~tag), samples, chunks}; }
};

struct Estimate {
    double mean = 0;
    double std_error = 0;
    std::uint64_t n = 0;

    double ci_low(double z = 1.96) const { return mean - z * std_error; }
    double ci_high(double z = 1.96) const { return mean + z * std_error; }
};

// mean = k/n, std_error = sqrt(mean (1 - mean) / n).
Estimate bernoulli_estimate(std::uint64_t hits, std::uint64_t n);

enum class Execution { Serial, Parallel };

// Number of worker threads used by Execution::Parallel (1 without OpenMP).
int max_threads();
void set_threads(int n);

namespace detail {

// Runs fn(chunk) -> Result for every chunk and returns results in chunk order.
template <class Result, class Fn>
std::vector<Result> map_chunks(const EstimatorConfig& cfg, Execution exec, Fn&& fn) {
    std::vector<Result> out(cfg.chunks);
    const auto chunks = static_cast<std::int64_t>(cfg.chunks);
    if (exec == Execution::Serial) {
        for (std::int64_t k = 0; k < chunks; ++k) out[k] = fn(static_cast<std::uint32_t>(k));
        return out;
    }
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t k = 0; k < chunks; ++k) out[k] = fn(static_cast<std::uint32_t>(k));
    return out;
}

}  // namespace detail

/**
 * Histogram of per-block indicator bitmasks.
 *
 * Every block contributes one 64-bit mask; any marginal, joint, or paired
 * statistic over the indicators can be computed from the histogram after
 * the fact. All-zero masks are only counted through n.
 */
struct MaskCounts {
    std::uint64_t n = 0;
    std::map<std::uint64_t, std::uint64_t> counts;

    void merge(const MaskCounts& other);
    std::uint64_t hits(std::uint64_t bits) const;  // blocks with all `bits` set
    Estimate probability(std::uint64_t bits) const;
    // Paired estimate of P[a] - P[b] from the same blocks; the standard error
    // accounts for the correlation between the two indicators.
    Estimate difference(std::uint64_t a, std::uint64_t b) const;
};

template <class MaskFn>
MaskCounts count_masks(const EstimatorConfig& cfg, const NetworkConfig& net, MaskFn&& mask_of,
                       Execution exec = Execution::Parallel) {
    cfg.validate();
    const auto per_chunk = detail::map_chunks<MaskCounts>(cfg, exec, [&](std::uint32_t k) {
        MaskCounts local;
        Rng rng = cfg.chunk_rng(k);
        const std::uint64_t size = cfg.chunk_size(k);
        for (std::uint64_t i = 0; i < size; ++i) {
            const std::uint64_t m = mask_of(sample_block(net, rng));
            if (m != 0) ++local.counts[m];
        }
        local.n = size;
        return local;
    });
    MaskCounts total;
    for (const auto& c : per_chunk) total.merge(c);
    return total;
}

template <class Indicator>
Estimate estimate_bernoulli(const EstimatorConfig& cfg, const NetworkConfig& net, Indicator&& indicator,
                            Execution exec = Execution::Parallel) {
    const MaskCounts mc = count_masks(
        cfg, net, [&](const LinkState& ls) -> std::uint64_t { return indicator(ls) ? 1u : 0u; }, exec);
    return mc.probability(1);
}

// Sample mean of a real-valued per-block quantity with its standard error.
template <class Value>
Estimate estimate_mean(const EstimatorConfig& cfg, const NetworkConfig& net, Value&& value,
                       Execution exec = Execution::Parallel) {
    cfg.validate();
    const auto sums = detail::map_chunks<std::pair<double, double>>(cfg, exec, [&](std::uint32_t k) {
        Rng rng = cfg.chunk_rng(k);
        double s = 0, s2 = 0;
        for (std::uint64_t i = 0, size = cfg.chunk_size(k); i < size; ++i) {
            const double v = value(sample_block(net, rng));
            s += v;
            s2 += v * v;
        }
        return std::pair{s, s2};
    });
    double s = 0, s2 = 0;
    for (const auto& [a, b] : sums) {
        s += a;
        s2 += b;
    }
    const double n = static_cast<double>(cfg.samples);
    const double mean = s / n;
    const double var = cfg.samples > 1 ? std::max(0.0, (s2 - n * mean * mean) / (n - 1.0)) : 0.0;
    return {mean, std::sqrt(var / n), cfg.samples};
}

// Draws every block of the plan in order (chunk by chunk) into a vector.
std::vector<LinkState> draw_blocks(const EstimatorConfig& cfg, const NetworkConfig& net,
                                   Execution exec = Execution::Parallel);

// One result per grid point, in grid order.
template <class Point, class PerPoint>
auto sweep(const std::vector<Point>& grid, PerPoint&& per_point) {
    using Row = decltype(per_point(grid.front()));
    if (grid.empty()) throw std::invalid_argument("sweep: empty grid");
    std::vector<Row> rows;
    rows.reserve(grid.size());
    for (const auto& p : grid) rows.push_back(per_point(p));
    return rows;
}

// Sample count after escalation: multiplies by 10 while the expected number
// of events mean*n stays below min_events, up to max_samples.
std::uint64_t escalated_samples(double mean, std::uint64_t samples, std::uint64_t max_samples,
                                double min_events = 100.0);

}  // namespace d2d
