#pragma once

#include <optional>
#include <string_view>

#include "d2d/channel.hpp"
#include "d2d/rate_region.hpp"

namespace d2d {

enum class SchemeKind : std::uint8_t {
    TdCooperative,
    Fd3Band,
    Fd2Band,
    ConcurrentSic,
    ResourcePartitioning,
    OuterBound,
};

std::string_view to_string(SchemeKind k);
std::optional<SchemeKind> parse_scheme(std::string_view name);

// Orthogonal slots: UE1 owns `split` of the block, UE2 the rest. With boost
// each UE concentrates its average power into its own slot.
RateRegion rp_region(const LinkState& ls, const NetworkConfig& cfg, double split, bool boost = true);

// Concurrent transmission decoded with SIC: the two-user Gaussian MAC.
RateRegion mac_sic_region(const LinkState& ls, const NetworkConfig& cfg);

// Two-band frequency-division cooperation. Band 1 (width beta) carries UE1's
// exchange (rho12) and its relayed copy (rho1_1 from UE1, rho1_2 from UE2);
// band 2 mirrors it for UE2.
struct Fd2Params {
    double beta = 0.5;
    double rho12 = 0, rho21 = 0;
    double rho1_1 = 0, rho1_2 = 0;
    double rho2_1 = 0, rho2_2 = 0;

    void validate() const;
    // beta*(rho12 + rho1_1) + (1-beta)*rho2_1 and the UE2 counterpart.
    std::pair<double, double> power_usage() const;
};

bool fd2_within_budgets(const Fd2Params& fp, double p1, double p2, double rel_tol = 1e-9);

// A1/A2: decoding at the partner UE; A3/A4: decoding at the base station.
struct Fd2Rates {
    double a1 = 0, a2 = 0, a3 = 0, a4 = 0;
};

Fd2Rates fd2_rates(const LinkState& ls, const Fd2Params& fp);
RateRegion fd2_region(const LinkState& ls, const Fd2Params& fp);
// Also checks the per-UE power budgets of cfg.
RateRegion fd2_region(const LinkState& ls, const NetworkConfig& cfg, const Fd2Params& fp);

// Drops the partner-decoding bound of a UE whose data is not relayed in case c.
RateRegion fd2_case_region(const LinkState& ls, const Fd2Params& fp, TransmissionCase c);

// Three-band FD with backward decoding reaches the same region as TD.
RateRegion fd3_region(const LinkState& ls, const PhaseSchedule& ps, const PowerAllocation& pa);

// Specializes a full three-phase policy to a transmission case and rescales
// the surviving powers so each UE spends the same budget as `base`.
TdPolicy case_policy(TransmissionCase c, const TdPolicy& base);

// Power split of a TD policy expressed as fractions of each UE's budget:
// share1 goes to the exchange phase, coop1 is the cooperative share of the
// remaining phase-3 energy (and the UE2 mirror).
struct TdPowerSplit {
    double share1 = 0, coop1 = 0;
    double share2 = 0, coop2 = 0;
};

TdPolicy td_policy_from_split(const PhaseSchedule& ps, double p1, double p2, const TdPowerSplit& split);

// own1: fraction of P1 spent in band 1 (the rest relays UE2's data in band 2);
// exchange1: share of that band-1 energy spent on the exchange sub-band.
struct Fd2PowerSplit {
    double own1 = 1, exchange1 = 0.5;
    double own2 = 1, exchange2 = 0.5;
};

Fd2Params fd2_params_from_split(double beta, double p1, double p2, const Fd2PowerSplit& split);

// Zeroes the relay powers a transmission case does not use.
Fd2Params fd2_case_params(TransmissionCase c, const Fd2Params& base);

}  // namespace d2d
