#pragma once

#include <limits>
#include <string_view>
#include <utility>
#include <vector>

#include "d2d/channel.hpp"

namespace d2d {

// Fractional durations of the three phases; the third is whatever remains.
struct PhaseSchedule {
    double alpha1 = 0;
    double alpha2 = 0;

    double alpha3() const { return 1.0 - alpha1 - alpha2; }
    void validate() const;
};

// Per-signal transmit powers of the two UEs over one block.
struct PowerAllocation {
    double rho11 = 0, rho22 = 0;  // inter-UE exchange (phases 1, 2)
    double rho10 = 0, rho20 = 0;  // private parts (phase 3)
    double rho13 = 0, rho23 = 0;  // shared cooperative codeword (phase 3)

    void validate() const;
};

// Average power spent by each UE: alpha1*rho11 + alpha3*(rho10 + rho13), and the mirror.
std::pair<double, double> power_usage(const PhaseSchedule& ps, const PowerAllocation& pa);

// True when both UEs spend exactly their budgets (relative tolerance).
bool meets_budgets(const PhaseSchedule& ps, const PowerAllocation& pa, double p1, double p2,
                   double rel_tol = 1e-9);

struct TdPolicy {
    PhaseSchedule phases;
    PowerAllocation powers;
};

/**
 * Per-realization decoding bounds in bits per channel use.
 *
 * j1, j2 bound the cooperative parts decoded at the partner UE. j3..j8 are
 * the joint-ML constraints at the base station; zeta is the phase-3 log term
 * including the coherent (beamformed) cooperative codeword. direct1/direct2
 * are the phase-1/phase-2 contributions the base station overhears.
 */
struct JTerms {
    double j1 = 0, j2 = 0, j3 = 0, j4 = 0, j5 = 0, j6 = 0, j7 = 0, j8 = 0;
    double zeta = 0;
    double direct1 = 0, direct2 = 0;
};

// Throws std::invalid_argument on a malformed schedule or negative power.
JTerms j_terms(const LinkState& ls, const PhaseSchedule& ps, const PowerAllocation& pa);
// Unchecked variant for hot loops whose inputs were validated once.
JTerms j_terms_unchecked(const LinkState& ls, const PhaseSchedule& ps, const PowerAllocation& pa);

// Half-plane a*R1 + b*R2 <= c, (a, b) in {(1,0), (0,1), (1,1)}.
struct Constraint {
    double a = 0, b = 0, c = 0;
    std::string_view source;
};

class RateRegion {
public:
    static constexpr double kUnbounded = std::numeric_limits<double>::infinity();

    void add(double a, double b, double c, std::string_view source);

    const std::vector<Constraint>& constraints() const { return constraints_; }

    // Tightest bound per constraint family (+inf when the family is absent).
    double r1_bound() const;
    double r2_bound() const;
    double sum_bound() const;

    bool contains(double r1, double r2, double tol = 1e-12) const;

private:
    std::vector<Constraint> constraints_;
};

RateRegion achievable_region(const JTerms& j);

// Achievable constraints with g12^2 -> g12^2 + g10^2 and g21^2 -> g21^2 + g20^2
// in the exchange-phase terms; the R1 + R2 <= J8 bound is unchanged.
RateRegion outer_bound_region(const LinkState& ls, const PhaseSchedule& ps,
                              const PowerAllocation& pa);

// min(J1 + J7, J2 + J6) - min(J1 + J2 + J5, J8). Non-negative whenever the
// policy matches the realization's transmission case.
double redundancy_gap(const JTerms& j);

struct WeightedPoint {
    double r1 = 0;
    double r2 = 0;
    double value = 0;
};

// Tightest bound per constraint family; enough to score weighted sums in
// hot loops without building a RateRegion.
struct RegionBounds {
    double r1 = RateRegion::kUnbounded;
    double r2 = RateRegion::kUnbounded;
    double sum = RateRegion::kUnbounded;
};

RegionBounds bounds_of(const RateRegion& region);
RegionBounds achievable_bounds(const JTerms& j);
// Unchecked counterpart of outer_bound_region.
RegionBounds outer_bounds(const LinkState& ls, const PhaseSchedule& ps, const PowerAllocation& pa);

// Same optimum value as max_weighted_sum on a region with these bounds.
double weighted_value(const RegionBounds& b, double w1, double w2);

// Maximizes w1*R1 + w2*R2 over the region intersected with R1, R2 >= 0 by
// enumerating the polygon's vertices. Ties go to the larger R1, then the
// smaller R2.
WeightedPoint max_weighted_sum(const RateRegion& region, double w1, double w2);

}  // namespace d2d
