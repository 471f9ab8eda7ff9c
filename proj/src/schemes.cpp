#include "d2d/schemes.hpp"

#include <algorithm>
#include <array>
#include <initializer_list>
#include <cmath>
#include <stdexcept>

namespace d2d {

namespace {

double bits(double snr) { return std::log2(1.0 + snr); }

bool non_negative_finite(double v) { return v >= 0.0 && std::isfinite(v); }

double safe_div(double num, double den) { return den > 0.0 ? num / den : 0.0; }

}  // namespace

std::string_view to_string(SchemeKind k) {
    switch (k) {
    case SchemeKind::TdCooperative: return "td";
    case SchemeKind::Fd3Band: return "fd3";
    case SchemeKind::Fd2Band: return "fd2";
    case SchemeKind::ConcurrentSic: return "sic";
    case SchemeKind::ResourcePartitioning: return "rp";
    case SchemeKind::OuterBound: return "outer";
    }
    return "unknown";
}

std::optional<SchemeKind> parse_scheme(std::string_view name) {
    for (auto k : {SchemeKind::TdCooperative, SchemeKind::Fd3Band, SchemeKind::Fd2Band,
                   SchemeKind::ConcurrentSic, SchemeKind::ResourcePartitioning, SchemeKind::OuterBound})
        if (to_string(k) == name) return k;
    return std::nullopt;
}

RateRegion rp_region(const LinkState& ls, const NetworkConfig& cfg, double split, bool boost) {
    if (!(split > 0.0 && split < 1.0)) throw std::invalid_argument("rp_region: split must lie in (0, 1)");
    const double other = 1.0 - split;
    const double snr1 = ls.g10 * ls.g10 * cfg.p1() / (boost ? split : 1.0);
    const double snr2 = ls.g20 * ls.g20 * cfg.p2() / (boost ? other : 1.0);
    RateRegion r;
    r.add(1, 0, split * bits(snr1), "rp:R1");
    r.add(0, 1, other * bits(snr2), "rp:R2");
    return r;
}

RateRegion mac_sic_region(const LinkState& ls, const NetworkConfig& cfg) {
    const double snr1 = ls.g10 * ls.g10 * cfg.p1();
    const double snr2 = ls.g20 * ls.g20 * cfg.p2();
    RateRegion r;
    r.add(1, 0, bits(snr1), "mac:R1");
    r.add(0, 1, bits(snr2), "mac:R2");
    r.add(1, 1, bits(snr1 + snr2), "mac:sum");
    return r;
}

void Fd2Params::validate() const {
    if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("fd2: beta must lie in [0, 1]");
    for (double rho : {rho12, rho21, rho1_1, rho1_2, rho2_1, rho2_2})
        if (!non_negative_finite(rho))
            throw std::invalid_argument("fd2: powers must be non-negative and finite");
}

std::pair<double, double> Fd2Params::power_usage() const {
    const double beta_bar = 1.0 - beta;
    return {beta * (rho12 + rho1_1) + beta_bar * rho2_1, beta_bar * (rho21 + rho2_2) + beta * rho1_2};
}

bool fd2_within_budgets(const Fd2Params& fp, double p1, double p2, double rel_tol) {
    const auto [u1, u2] = fp.power_usage();
    return u1 <= p1 + rel_tol * std::max(1.0, p1) && u2 <= p2 + rel_tol * std::max(1.0, p2);
}

Fd2Rates fd2_rates(const LinkState& ls, const Fd2Params& fp) {
    const double beta_bar = 1.0 - fp.beta;
    const double s10 = ls.g10 * ls.g10;
    const double s20 = ls.g20 * ls.g20;
    const double relay1 = ls.g10 * std::sqrt(fp.rho1_1) + ls.g20 * std::sqrt(fp.rho1_2);
    const double relay2 = ls.g10 * std::sqrt(fp.rho2_1) + ls.g20 * std::sqrt(fp.rho2_2);
    Fd2Rates a;
    a.a1 = 0.5 * fp.beta * bits(ls.g12 * ls.g12 * fp.rho12);
    a.a2 = 0.5 * beta_bar * bits(ls.g21 * ls.g21 * fp.rho21);
    a.a3 = 0.5 * fp.beta * bits(s10 * fp.rho12 + relay1 * relay1);
    a.a4 = 0.5 * beta_bar * bits(s20 * fp.rho21 + relay2 * relay2);
    return a;
}

RateRegion fd2_region(const LinkState& ls, const Fd2Params& fp) {
    fp.validate();
    const Fd2Rates a = fd2_rates(ls, fp);
    RateRegion r;
    r.add(1, 0, std::min(a.a1, a.a3), "fd2:R1");
    r.add(0, 1, std::min(a.a2, a.a4), "fd2:R2");
    return r;
}

RateRegion fd2_region(const LinkState& ls, const NetworkConfig& cfg, const Fd2Params& fp) {
    fp.validate();
    if (!fd2_within_budgets(fp, cfg.p1(), cfg.p2()))
        throw std::invalid_argument("fd2: power allocation exceeds the UE budgets");
    return fd2_region(ls, fp);
}

RateRegion fd2_case_region(const LinkState& ls, const Fd2Params& fp, TransmissionCase c) {
    const Fd2Rates a = fd2_rates(ls, fp);
    const bool ue2_relays = c == TransmissionCase::CoopBoth || c == TransmissionCase::Ue1Coop;
    const bool ue1_relays = c == TransmissionCase::CoopBoth || c == TransmissionCase::Ue2Coop;
    RateRegion r;
    r.add(1, 0, ue2_relays ? std::min(a.a1, a.a3) : a.a3, "fd2:R1");
    r.add(0, 1, ue1_relays ? std::min(a.a2, a.a4) : a.a4, "fd2:R2");
    return r;
}

RateRegion fd3_region(const LinkState& ls, const PhaseSchedule& ps, const PowerAllocation& pa) {
    return achievable_region(j_terms(ls, ps, pa));
}

namespace {

// Scales the listed powers so that `usage` reaches `budget`; when nothing is
// left to scale the whole budget goes to `fallback` over `fallback_time`.
void rescale(double budget, double usage, std::initializer_list<double*> powers, double* fallback,
             double fallback_time) {
    if (usage > 0.0) {
        const double k = budget / usage;
        for (double* p : powers) *p *= k;
    } else if (budget > 0.0 && fallback_time > 0.0) {
        *fallback = budget / fallback_time;
    }
}

}  // namespace

TdPolicy case_policy(TransmissionCase c, const TdPolicy& base) {
    base.phases.validate();
    base.powers.validate();
    const auto [p1, p2] = power_usage(base.phases, base.powers);
    TdPolicy out = base;
    PowerAllocation& pa = out.powers;
    switch (c) {
    case TransmissionCase::CoopBoth:
        return out;
    case TransmissionCase::DirectBoth:
        out.phases = {0.0, 0.0};
        pa = PowerAllocation{};
        pa.rho10 = p1;
        pa.rho20 = p2;
        return out;
    case TransmissionCase::Ue1Coop: {
        out.phases.alpha2 = 0.0;
        pa.rho22 = 0.0;
        const double a3 = out.phases.alpha3();
        const auto [u1, u2] = power_usage(out.phases, pa);
        rescale(p1, u1, {&pa.rho11, &pa.rho10, &pa.rho13}, a3 > 0 ? &pa.rho10 : &pa.rho11,
                a3 > 0 ? a3 : out.phases.alpha1);
        rescale(p2, u2, {&pa.rho20, &pa.rho23}, &pa.rho20, a3);
        return out;
    }
    case TransmissionCase::Ue2Coop: {
        out.phases.alpha1 = 0.0;
        pa.rho11 = 0.0;
        const double a3 = out.phases.alpha3();
        const auto [u1, u2] = power_usage(out.phases, pa);
        rescale(p1, u1, {&pa.rho10, &pa.rho13}, &pa.rho10, a3);
        rescale(p2, u2, {&pa.rho22, &pa.rho20, &pa.rho23}, a3 > 0 ? &pa.rho20 : &pa.rho22,
                a3 > 0 ? a3 : out.phases.alpha2);
        return out;
    }
    }
    return out;
}

TdPolicy td_policy_from_split(const PhaseSchedule& ps, double p1, double p2, const TdPowerSplit& split) {
    ps.validate();
    const double a3 = std::max(0.0, ps.alpha3());
    // Returns (exchange power, private power, cooperative power) for one UE.
    const auto allocate = [a3](double budget, double exchange_time, double share, double coop) {
        double exchange = exchange_time > 0.0 ? std::clamp(share, 0.0, 1.0) * budget : 0.0;
        if (a3 <= 0.0) exchange = exchange_time > 0.0 ? budget : 0.0;
        const double rest = budget - exchange;
        const double c = std::clamp(coop, 0.0, 1.0);
        return std::array<double, 3>{safe_div(exchange, exchange_time), safe_div((1.0 - c) * rest, a3),
                                     safe_div(c * rest, a3)};
    };
    const auto ue1 = allocate(p1, ps.alpha1, split.share1, split.coop1);
    const auto ue2 = allocate(p2, ps.alpha2, split.share2, split.coop2);
    TdPolicy out;
    out.phases = ps;
    out.powers = {ue1[0], ue2[0], ue1[1], ue2[1], ue1[2], ue2[2]};
    return out;
}

Fd2Params fd2_params_from_split(double beta, double p1, double p2, const Fd2PowerSplit& split) {
    const double beta_bar = 1.0 - beta;
    const double own1 = std::clamp(split.own1, 0.0, 1.0);
    const double own2 = std::clamp(split.own2, 0.0, 1.0);
    const double ex1 = std::clamp(split.exchange1, 0.0, 1.0);
    const double ex2 = std::clamp(split.exchange2, 0.0, 1.0);
    Fd2Params fp;
    fp.beta = beta;
    fp.rho12 = safe_div(ex1 * own1 * p1, beta);
    fp.rho1_1 = safe_div((1.0 - ex1) * own1 * p1, beta);
    fp.rho2_1 = safe_div((1.0 - own1) * p1, beta_bar);
    fp.rho21 = safe_div(ex2 * own2 * p2, beta_bar);
    fp.rho2_2 = safe_div((1.0 - ex2) * own2 * p2, beta_bar);
    fp.rho1_2 = safe_div((1.0 - own2) * p2, beta);
    return fp;
}

Fd2Params fd2_case_params(TransmissionCase c, const Fd2Params& base) {
    base.validate();
    const auto [p1, p2] = base.power_usage();
    Fd2Params out = base;
    const bool ue2_relays = c == TransmissionCase::CoopBoth || c == TransmissionCase::Ue1Coop;
    const bool ue1_relays = c == TransmissionCase::CoopBoth || c == TransmissionCase::Ue2Coop;
    if (!ue2_relays) out.rho1_2 = 0.0;
    if (!ue1_relays) out.rho2_1 = 0.0;
    const auto [u1, u2] = out.power_usage();
    rescale(p1, u1, {&out.rho12, &out.rho1_1, &out.rho2_1}, &out.rho1_1, out.beta);
    rescale(p2, u2, {&out.rho21, &out.rho2_2, &out.rho1_2}, &out.rho2_2, 1.0 - out.beta);
    return out;
}

}  // namespace d2d
