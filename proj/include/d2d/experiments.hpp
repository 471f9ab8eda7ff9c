#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "d2d/ergodic.hpp"
#include "d2d/outage_region.hpp"
#include "d2d/search.hpp"

namespace d2d {

// Bad configuration; `path` names the offending field, e.g. "estimator.samples".
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& what)
        : std::runtime_error(path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

enum class SnrConvention : std::uint8_t { Mu, Literal };

// Everything an experiment needs. Defaults are the reference scenario
// (d10 = 20, d20 = 30, d12 = 12, gamma = 2.4, R1 = R2 = 2, 10^5 samples).
struct ExperimentConfig {
    std::vector<SchemeKind> schemes{SchemeKind::TdCooperative, SchemeKind::ConcurrentSic};

    double d10 = 20, d20 = 30, d12 = 12, gamma = 2.4;
    // When set, geometry is derived from mean gains (mu12 also used for mu21).
    std::optional<std::array<double, 3>> mean_gains;  // mu10, mu20, mu12

    std::vector<double> snr_db{0, 6, 12, 18, 24, 30, 36, 42};
    SnrConvention snr_convention = SnrConvention::Mu;
    std::optional<std::pair<double, double>> budgets;  // overrides snr for rate-region / outage-region
    double region_snr_db = 30;

    double r1 = 2, r2 = 2;
    double beta1 = 0.01, beta2 = 0.01;

    int weights = 11;
    int rays = 9;
    double rate_cap = 8;
    double region_tolerance = 0.02;

    std::uint64_t seed = 1;
    std::uint64_t samples = 100000;
    std::uint32_t chunks = 64;
    std::uint64_t max_samples = 1000000;

    SearchSpec search;
    OutageSearchSettings outage_search;

    std::string output;  // CSV path; empty means stdout

    void validate() const;  // throws ConfigError

    NetworkConfig geometry() const;  // budgets 1, 1
    EstimatorConfig estimator() const { return {seed, samples, chunks}; }
};

// Parses and validates a JSON document; unknown keys are errors.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
// Canonical JSON of the effective configuration (echoed in CSV headers).
std::string config_json(const ExperimentConfig& cfg);

// Per-UE power budget for an SNR1 value, and the matching SNR2.
double power_for_snr(const NetworkConfig& geo, double snr1_db, SnrConvention conv);
double snr2_db(const NetworkConfig& geo, double snr1_db, SnrConvention conv);

// ---------------------------------------------------------------------------
// Drivers

struct RateRegionRow {
    SchemeKind scheme;
    BoundaryPoint point;
};
std::vector<RateRegionRow> run_rate_region(const ExperimentConfig& cfg);

struct OutageSweepRow {
    SchemeKind scheme;
    double snr1_db = 0, snr2_db = 0;
    Estimate pc, p1, p2;
    bool infeasible = false;
};

struct OutageSweepPoint {
    double snr1_db = 0;
    std::vector<OutageSweepRow> rows;  // one per scheme, in config order
    // Joint histogram: scheme k owns bits 3k (pc), 3k+1 (p1), 3k+2 (p2).
    MaskCounts joint;
};

std::vector<OutageSweepPoint> run_outage_sweep(const ExperimentConfig& cfg);

// Paired estimate of P[a] - P[b] from a sweep point's joint histogram.
// field: 0 = pc, 1 = p1, 2 = p2.
Estimate joint_difference(const OutageSweepPoint& p, std::size_t scheme_a, int field_a, std::size_t scheme_b,
                          int field_b);

struct OutageRegionRow {
    SchemeKind scheme;
    RegionPoint point;
};
std::vector<OutageRegionRow> run_outage_region(const ExperimentConfig& cfg);

struct CaseProbRow {
    TransmissionCase c;
    double closed_form = 0;
    Estimate mc;
};
std::vector<CaseProbRow> run_case_prob(const ExperimentConfig& cfg);

// CSV writers: a '#'-prefixed JSON header line, then a fixed column order.
void write_csv(std::ostream& os, const ExperimentConfig& cfg, const std::vector<RateRegionRow>& rows);
void write_csv(std::ostream& os, const ExperimentConfig& cfg, const std::vector<OutageSweepPoint>& points);
void write_csv(std::ostream& os, const ExperimentConfig& cfg, const std::vector<OutageRegionRow>& rows);
void write_csv(std::ostream& os, const ExperimentConfig& cfg, const std::vector<CaseProbRow>& rows);

}  // namespace d2d
