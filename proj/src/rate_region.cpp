#include "d2d/rate_region.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace d2d {

namespace {

constexpr double kPhaseTol = 1e-12;

bool non_negative_finite(double v) { return v >= 0.0 && std::isfinite(v); }

double bits(double snr) { return std::log2(1.0 + snr); }

}  // namespace

void PhaseSchedule::validate() const {
    if (!non_negative_finite(alpha1) || !non_negative_finite(alpha2) || alpha3() < -kPhaseTol)
        throw std::invalid_argument("phase schedule: need alpha1, alpha2 >= 0 and alpha1 + alpha2 <= 1");
}

void PowerAllocation::validate() const {
    for (double rho : {rho11, rho22, rho10, rho20, rho13, rho23})
        if (!non_negative_finite(rho))
            throw std::invalid_argument("power allocation: powers must be non-negative and finite");
}

std::pair<double, double> power_usage(const PhaseSchedule& ps, const PowerAllocation& pa) {
    const double a3 = ps.alpha3();
    return {ps.alpha1 * pa.rho11 + a3 * (pa.rho10 + pa.rho13),
            ps.alpha2 * pa.rho22 + a3 * (pa.rho20 + pa.rho23)};
}

bool meets_budgets(const PhaseSchedule& ps, const PowerAllocation& pa, double p1, double p2,
                   double rel_tol) {
    const auto [u1, u2] = power_usage(ps, pa);
    const auto close = [rel_tol](double used, double budget) {
        return std::abs(used - budget) <= rel_tol * std::max(1.0, std::abs(budget));
    };
    return close(u1, p1) && close(u2, p2);
}

JTerms j_terms(const LinkState& ls, const PhaseSchedule& ps, const PowerAllocation& pa) {
    ps.validate();
    pa.validate();
    return j_terms_unchecked(ls, ps, pa);
}

JTerms j_terms_unchecked(const LinkState& ls, const PhaseSchedule& ps, const PowerAllocation& pa) {
    const double a1 = ps.alpha1;
    const double a2 = ps.alpha2;
    const double a3 = std::max(0.0, ps.alpha3());
    const double s10 = ls.g10 * ls.g10;
    const double s20 = ls.g20 * ls.g20;
    const double coherent = ls.g10 * std::sqrt(pa.rho13) + ls.g20 * std::sqrt(pa.rho23);

    JTerms j;
    j.j1 = a1 * bits(ls.g12 * ls.g12 * pa.rho11);
    j.j2 = a2 * bits(ls.g21 * ls.g21 * pa.rho22);
    j.j3 = a3 * bits(s10 * pa.rho10);
    j.j4 = a3 * bits(s20 * pa.rho20);
    j.j5 = a3 * bits(s10 * pa.rho10 + s20 * pa.rho20);
    j.zeta = bits(s10 * pa.rho10 + s20 * pa.rho20 + coherent * coherent);
    j.direct1 = a1 * bits(s10 * pa.rho11);
    j.direct2 = a2 * bits(s20 * pa.rho22);
    j.j6 = j.direct1 + a3 * j.zeta;
    j.j7 = j.direct2 + a3 * j.zeta;
    j.j8 = j.direct1 + j.direct2 + a3 * j.zeta;
    return j;
}

void RateRegion::add(double a, double b, double c, std::string_view source) {
    const bool family = (a == 1.0 && b == 0.0) || (a == 0.0 && b == 1.0) || (a == 1.0 && b == 1.0);
    if (!family) throw std::invalid_argument("rate region: unsupported constraint direction");
    if (std::isnan(c) || c < -1e-12) throw std::invalid_argument("rate region: negative bound");
    constraints_.push_back({a, b, std::max(c, 0.0), source});
}

namespace {

double tightest(const std::vector<Constraint>& cs, double a, double b) {
    double best = RateRegion::kUnbounded;
    for (const auto& c : cs)
        if (c.a == a && c.b == b) best = std::min(best, c.c);
    return best;
}

}  // namespace

double RateRegion::r1_bound() const { return tightest(constraints_, 1, 0); }
double RateRegion::r2_bound() const { return tightest(constraints_, 0, 1); }
double RateRegion::sum_bound() const { return tightest(constraints_, 1, 1); }

bool RateRegion::contains(double r1, double r2, double tol) const {
    if (r1 < -tol || r2 < -tol) return false;
    return std::all_of(constraints_.begin(), constraints_.end(),
                       [&](const Constraint& c) { return c.a * r1 + c.b * r2 <= c.c + tol; });
}

RateRegion achievable_region(const JTerms& j) {
    RateRegion r;
    r.add(1, 0, j.j1 + j.j3, "J1+J3");
    r.add(0, 1, j.j2 + j.j4, "J2+J4");
    r.add(1, 1, j.j1 + j.j2 + j.j5, "J1+J2+J5");
    r.add(1, 1, j.j8, "J8");
    return r;
}

RateRegion outer_bound_region(const LinkState& ls, const PhaseSchedule& ps,
                              const PowerAllocation& pa) {
    const JTerms j = j_terms(ls, ps, pa);
    const double s10 = ls.g10 * ls.g10;
    const double s20 = ls.g20 * ls.g20;
    const double simo1 = ps.alpha1 * bits((ls.g12 * ls.g12 + s10) * pa.rho11);
    const double simo2 = ps.alpha2 * bits((ls.g21 * ls.g21 + s20) * pa.rho22);
    RateRegion r;
    r.add(1, 0, simo1 + j.j3, "outer:R1");
    r.add(0, 1, simo2 + j.j4, "outer:R2");
    r.add(1, 1, simo1 + simo2 + j.j5, "outer:sum");
    r.add(1, 1, j.j8, "J8");
    return r;
}

double redundancy_gap(const JTerms& j) {
    return std::min(j.j1 + j.j7, j.j2 + j.j6) - std::min(j.j1 + j.j2 + j.j5, j.j8);
}

RegionBounds bounds_of(const RateRegion& region) {
    return {region.r1_bound(), region.r2_bound(), region.sum_bound()};
}

RegionBounds achievable_bounds(const JTerms& j) {
    return {j.j1 + j.j3, j.j2 + j.j4, std::min(j.j1 + j.j2 + j.j5, j.j8)};
}

RegionBounds outer_bounds(const LinkState& ls, const PhaseSchedule& ps, const PowerAllocation& pa) {
    const JTerms j = j_terms_unchecked(ls, ps, pa);
    const double simo1 = ps.alpha1 * bits((ls.g12 * ls.g12 + ls.g10 * ls.g10) * pa.rho11);
    const double simo2 = ps.alpha2 * bits((ls.g21 * ls.g21 + ls.g20 * ls.g20) * pa.rho22);
    return {simo1 + j.j3, simo2 + j.j4, std::min(simo1 + simo2 + j.j5, j.j8)};
}

double weighted_value(const RegionBounds& b, double w1, double w2) {
    const double a = std::max(b.r1, 0.0), c = std::max(b.r2, 0.0), s = std::max(b.sum, 0.0);
    if (w1 >= w2) {
        const double x = std::min(a, s);
        return w1 * x + (w2 > 0.0 ? w2 * std::min(c, s - x) : 0.0);
    }
    const double y = std::min(c, s);
    return w2 * y + (w1 > 0.0 ? w1 * std::min(a, s - y) : 0.0);
}

WeightedPoint max_weighted_sum(const RateRegion& region, double w1, double w2) {
    if (!(w1 >= 0.0) || !(w2 >= 0.0) || (w1 == 0.0 && w2 == 0.0))
        throw std::invalid_argument("max_weighted_sum: weights must be non-negative, not both zero");

    const double c1 = region.r1_bound();
    const double c2 = region.r2_bound();
    const double cs = region.sum_bound();
    if ((w1 > 0.0 && std::isinf(c1) && std::isinf(cs)) ||
        (w2 > 0.0 && std::isinf(c2) && std::isinf(cs)))
        throw std::invalid_argument("max_weighted_sum: region unbounded in the weighted direction");

    // Vertical lines R1 = x, horizontal lines R2 = y, and the sum line.
    std::array<double, 2> xs{0.0, c1};
    std::array<double, 2> ys{0.0, c2};
    std::vector<std::pair<double, double>> candidates;
    for (double x : xs) {
        if (std::isinf(x)) continue;
        for (double y : ys)
            if (!std::isinf(y)) candidates.emplace_back(x, y);
        if (!std::isinf(cs)) candidates.emplace_back(x, cs - x);
    }
    if (!std::isinf(cs))
        for (double y : ys)
            if (!std::isinf(y)) candidates.emplace_back(cs - y, y);

    const double scale = 1.0 + std::max({std::isinf(c1) ? 0.0 : c1, std::isinf(c2) ? 0.0 : c2,
                                         std::isinf(cs) ? 0.0 : cs});
    const double tol = 1e-12 * scale;
    WeightedPoint best{0.0, 0.0, 0.0};
    for (auto [x, y] : candidates) {
        if (x < -tol || y < -tol || x > c1 + tol || y > c2 + tol || x + y > cs + tol) continue;
        x = std::max(x, 0.0);
        y = std::max(y, 0.0);
        const double v = w1 * x + w2 * y;
        const bool better = v > best.value + tol ||
                            (v >= best.value - tol && (x > best.r1 || (x == best.r1 && y < best.r2)));
        if (better) best = {x, y, v};
    }
    return best;
}

}  // namespace d2d
