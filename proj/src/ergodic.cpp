#include "d2d/ergodic.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace d2d {

namespace {

// Running sums of (x, x^2) for r1, r2 and the weighted value.
using Sums = std::array<double, 6>;

Estimate from_sums(double s, double s2, std::uint64_t samples) {
    const double n = static_cast<double>(samples);
    const double mean = s / n;
    const double var = samples > 1 ? std::max(0.0, (s2 - n * mean * mean) / (n - 1.0)) : 0.0;
    return {mean, std::sqrt(var / n), samples};
}

}  // namespace

std::vector<BoundaryPoint> ergodic_boundary(const NetworkConfig& cfg, SchemeKind scheme, std::span<const Weight> weights,
                                            const EstimatorConfig& mc, const SearchSpec& spec, Execution exec) {
    mc.validate();
    spec.validate();
    if (weights.empty()) throw std::invalid_argument("ergodic_boundary: empty weight grid");
    const auto per_chunk = detail::map_chunks<std::vector<Sums>>(mc, exec, [&](std::uint32_t k) {
        std::vector<Sums> acc(weights.size(), Sums{});
        Rng rng = mc.chunk_rng(k);
        for (std::uint64_t i = 0, size = mc.chunk_size(k); i < size; ++i) {
            const LinkState ls = sample_block(cfg, rng);
            const auto opt = optimize_weighted_rate(ls, cfg, scheme, weights, spec);
            for (std::size_t w = 0; w < weights.size(); ++w) {
                const WeightedPoint& p = opt[w].point;
                Sums& a = acc[w];
                a[0] += p.r1;
                a[1] += p.r1 * p.r1;
                a[2] += p.r2;
                a[3] += p.r2 * p.r2;
                a[4] += p.value;
                a[5] += p.value * p.value;
            }
        }
        return acc;
    });
    std::vector<Sums> total(weights.size(), Sums{});
    for (const auto& chunk : per_chunk)
        for (std::size_t w = 0; w < weights.size(); ++w)
            for (std::size_t i = 0; i < 6; ++i) total[w][i] += chunk[w][i];

    std::vector<BoundaryPoint> out;
    out.reserve(weights.size());
    for (std::size_t w = 0; w < weights.size(); ++w) {
        const Sums& t = total[w];
        out.push_back({weights[w], from_sums(t[0], t[1], mc.samples), from_sums(t[2], t[3], mc.samples),
                       from_sums(t[4], t[5], mc.samples)});
    }
    return out;
}

std::vector<Weight> weight_grid(int n) {
    if (n < 1) throw std::invalid_argument("weight_grid: need at least one weight");
    std::vector<Weight> out;
    for (int i = 0; i < n; ++i) {
        const double t = n == 1 ? std::numbers::pi / 4 : std::numbers::pi / 2 * i / (n - 1);
        // Snap the axis directions so (1, 0) and (0, 1) are exact.
        const double c = i == n - 1 && n > 1 ? 0.0 : std::cos(t);
        const double s = i == 0 && n > 1 ? 0.0 : std::sin(t);
        out.push_back({c, s});
    }
    return out;
}

}  // namespace d2d
