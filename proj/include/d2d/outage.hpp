#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <variant>

#include "d2d/channel.hpp"
#include "d2d/montecarlo.hpp"
#include "d2d/rate_region.hpp"
#include "d2d/schemes.hpp"

namespace d2d {

// Target rates with each UE's message split into a private part (r10, r20)
// and a cooperative part (r12, r21) relayed by the partner UE.
struct RateTargets {
    double r1 = 0, r2 = 0;
    double r10 = 0, r12 = 0;
    double r20 = 0, r21 = 0;

    // coop1 / coop2 are the cooperative fractions of r1 / r2.
    static RateTargets split(double r1, double r2, double coop1, double coop2);
    void validate() const;
};

// Zeroes the cooperative parts a transmission case cannot carry.
RateTargets case_targets(TransmissionCase c, const RateTargets& rt);

/**
 * Outage indicators (T = bool) or probabilities (T = Estimate).
 *
 *   pm1, pm2       UE1 fails to decode UE2's cooperative part, and vice versa
 *   pcc            cooperative parts not decodable at the base station
 *   pcp, p1p, p2p  private parts: common and per-UE
 *   pbc, pb1, pb2  base-station level (cooperative failure dooms both privates)
 *   pc, p1, p2     overall common and individual outage
 */
template <class T>
struct BasicOutageBreakdown {
    T pm1{}, pm2{}, pcc{}, pcp{}, p1p{}, p2p{}, pbc{}, pb1{}, pb2{}, pc{}, p1{}, p2{};
};

using BlockOutage = BasicOutageBreakdown<bool>;

struct OutageBreakdown : BasicOutageBreakdown<Estimate> {
    // Case occurrence frequencies and per-case conditional common outage.
    std::array<Estimate, 4> case_frequency{};
    std::array<Estimate, 4> case_common{};
};

// Conditioning events of the nested outage decomposition for one block.
struct EventFlags {
    bool xi1 = false;  // case 2 and no outage at either UE
    bool xi2 = false;  // the cooperative-part constraints hold at the base station
    bool xi3 = false;  // case 3 and no outage at UE2
    bool xi4 = false;  // case 4 and no outage at UE1
};

// Reading of the private-part MAC events. Mac uses base-station terms
// (J5 - J3, J5 - J4); Literal evaluates J5 - J1, J5 - J2 and the third
// event's inequality exactly as originally printed.
enum class PrivateOutageRule : std::uint8_t { Mac, Literal };

struct PrivateOutage {
    bool common = false, ind1 = false, ind2 = false;
};

struct BsOutage {
    bool coop = false;  // cooperative-part outage
    PrivateOutage priv;
    bool common = false, ind1 = false, ind2 = false;
};

// (m1, m2): m2 is UE2 failing on UE1's cooperative part, alpha1*log2(1 + g12^2 rho11) < r12.
std::pair<bool, bool> ue_outage_indicators(const LinkState& ls, const PhaseSchedule& ps,
                                           const PowerAllocation& pa, const RateTargets& rt);

bool coop_common_outage_indicator(const JTerms& j, const RateTargets& rt);
// Three-band FD: only the cooperative sum constraint applies.
bool fd3_coop_common_outage_indicator(const JTerms& j, const RateTargets& rt);

PrivateOutage private_outage_indicators(const JTerms& j, const RateTargets& rt,
                                        PrivateOutageRule rule = PrivateOutageRule::Mac);

BsOutage bs_outage_indicators(const JTerms& j, const RateTargets& rt, TransmissionCase c,
                              PrivateOutageRule rule = PrivateOutageRule::Mac);

// Validates that policy and targets match classify_case(ls); throws otherwise.
BlockOutage block_outage(const LinkState& ls, const TdPolicy& policy, const RateTargets& rt,
                         PrivateOutageRule rule = PrivateOutageRule::Mac);
BlockOutage fd3_block_outage(const LinkState& ls, const TdPolicy& policy, const RateTargets& rt,
                             PrivateOutageRule rule = PrivateOutageRule::Mac);
// No validation; `c` must be classify_case(ls) and the inputs case-consistent.
BlockOutage td_block_outage_unchecked(const LinkState& ls, TransmissionCase c, const TdPolicy& policy,
                                      const RateTargets& rt, PrivateOutageRule rule, bool fd3);
EventFlags event_flags(const LinkState& ls, const TdPolicy& policy, const RateTargets& rt);

BlockOutage fd2_block_outage(const LinkState& ls, const Fd2Params& fp, double r1, double r2);
BlockOutage mac_block_outage(const LinkState& ls, double p1, double p2, double r1, double r2,
                             PrivateOutageRule rule = PrivateOutageRule::Mac);
BlockOutage rp_block_outage(const LinkState& ls, double p1, double p2, double r1, double r2,
                            double split = 0.5, bool boost = true);

// Per-case policies for a scheme with no transmitter CSI beyond the case.
struct TdCasePlan {
    TdPolicy policy;
    RateTargets targets;
};

struct TdOutagePlan {
    std::array<TdCasePlan, 4> cases;
    bool fd3 = false;
    PrivateOutageRule rule = PrivateOutageRule::Mac;

    // Applies case_policy/case_targets so every entry is case-consistent.
    void normalize();
};

struct Fd2OutagePlan {
    std::array<Fd2Params, 4> cases;
    double r1 = 0, r2 = 0;
};

struct MacOutagePlan {
    double p1 = 0, p2 = 0, r1 = 0, r2 = 0;
    PrivateOutageRule rule = PrivateOutageRule::Mac;
};

struct RpOutagePlan {
    double p1 = 0, p2 = 0, r1 = 0, r2 = 0;
    double split = 0.5;
    bool boost = true;
};

using OutagePlan = std::variant<TdOutagePlan, Fd2OutagePlan, MacOutagePlan, RpOutagePlan>;

// Evaluates one block under the plan (case classification included).
BlockOutage evaluate_block(const OutagePlan& plan, const LinkState& ls);

// Bit layout used when outage indicators are accumulated as masks.
std::uint64_t to_mask(const BlockOutage& b);
inline constexpr int kBreakdownBits = 12;
inline constexpr std::uint64_t kPcBit = 1u << 9, kP1Bit = 1u << 10, kP2Bit = 1u << 11;

// Monte-Carlo average of the plan's block outages (joint, unconditional means).
OutageBreakdown average_outage(const NetworkConfig& cfg, const OutagePlan& plan, const EstimatorConfig& mc,
                               Execution exec = Execution::Parallel);

}  // namespace d2d
