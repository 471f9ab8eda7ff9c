#include "d2d/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace d2d {

using nlohmann::json;

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

void check_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
            throw ConfigError(join(path, key), "unknown field");
    }
}

double number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ConfigError(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ConfigError(path, "must be finite");
    return v;
}

std::uint64_t count(const json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<std::int64_t>() < 0) throw ConfigError(path, "expected a non-negative integer");
    return j.get<std::uint64_t>();
}

int small_int(const json& j, const std::string& path) {
    const std::uint64_t v = count(j, path);
    if (v > 1000000) throw ConfigError(path, "too large");
    return static_cast<int>(v);
}

bool boolean(const json& j, const std::string& path) {
    if (!j.is_boolean()) throw ConfigError(path, "expected true or false");
    return j.get<bool>();
}

std::string text(const json& j, const std::string& path) {
    if (!j.is_string()) throw ConfigError(path, "expected a string");
    return j.get<std::string>();
}

// Applies f to j[key] when present.
template <class F>
void field(const json& j, const std::string& path, const char* key, F&& f) {
    if (j.contains(key)) f(j.at(key), join(path, key));
}

PhaseSchedule phase_pair(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) throw ConfigError(path, "expected [alpha1, alpha2]");
    return {number(j[0], path + "[0]"), number(j[1], path + "[1]")};
}

std::string_view rule_name(PrivateOutageRule r) { return r == PrivateOutageRule::Mac ? "mac" : "literal"; }
std::string_view convention_name(SnrConvention c) { return c == SnrConvention::Mu ? "mu" : "literal"; }

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void header(std::ostream& os, const ExperimentConfig& cfg) { os << "# " << config_json(cfg) << "\n"; }

void validate_phases(const OutagePhases& ph) {
    const auto check = [](const PhaseSchedule& ps, const std::string& path) {
        try {
            ps.validate();
        } catch (const std::exception& e) {
            throw ConfigError(path, e.what());
        }
    };
    check(ph.case2, "outage_search.phases.case2");
    check(ph.case3, "outage_search.phases.case3");
    check(ph.case4, "outage_search.phases.case4");
    if (ph.case3.alpha2 != 0) throw ConfigError("outage_search.phases.case3", "alpha2 must be 0 (UE1 does not relay)");
    if (ph.case4.alpha1 != 0) throw ConfigError("outage_search.phases.case4", "alpha1 must be 0 (UE2 does not relay)");
}

void require_outage_schemes(const ExperimentConfig& cfg) {
    for (SchemeKind s : cfg.schemes)
        if (s == SchemeKind::OuterBound) throw ConfigError("schemes", "the outer bound has no outage experiment");
}

}  // namespace

void ExperimentConfig::validate() const {
    if (schemes.empty()) throw ConfigError("schemes", "must list at least one scheme");
    for (std::size_t i = 0; i < schemes.size(); ++i)
        for (std::size_t k = 0; k < i; ++k)
            if (schemes[i] == schemes[k]) throw ConfigError("schemes", "duplicate scheme");
    if (mean_gains) {
        for (double mu : *mean_gains)
            if (!(mu > 0)) throw ConfigError("mean_gains", "mean gains must be positive");
    } else {
        if (!(d10 > 0)) throw ConfigError("geometry.d10", "must be positive");
        if (!(d20 > 0)) throw ConfigError("geometry.d20", "must be positive");
        if (!(d12 > 0)) throw ConfigError("geometry.d12", "must be positive");
    }
    if (!(gamma > 0)) throw ConfigError("geometry.gamma", "must be positive");
    if (snr_db.empty()) throw ConfigError("snr_db", "must list at least one value");
    if (budgets && !(budgets->first >= 0 && budgets->second >= 0))
        throw ConfigError("budgets", "power budgets must be non-negative");
    if (!(r1 >= 0)) throw ConfigError("rates.r1", "must be non-negative");
    if (!(r2 >= 0)) throw ConfigError("rates.r2", "must be non-negative");
    if (!(beta1 >= 0 && beta1 <= 1)) throw ConfigError("outage_targets.beta1", "must lie in [0, 1]");
    if (!(beta2 >= 0 && beta2 <= 1)) throw ConfigError("outage_targets.beta2", "must lie in [0, 1]");
    if (weights < 1) throw ConfigError("weights", "must be at least 1");
    if (rays < 1) throw ConfigError("region.rays", "must be at least 1");
    if (!(rate_cap > 0)) throw ConfigError("region.rate_cap", "must be positive");
    if (!(region_tolerance > 0)) throw ConfigError("region.tolerance", "must be positive");
    if (samples < 1) throw ConfigError("estimator.samples", "must be at least 1");
    if (chunks < 1) throw ConfigError("estimator.chunks", "must be at least 1");
    if (max_samples < samples) throw ConfigError("estimator.max_samples", "must be at least estimator.samples");
    try {
        search.validate();
    } catch (const std::exception& e) {
        throw ConfigError("search", e.what());
    }
    try {
        outage_search.spec.validate();
    } catch (const std::exception& e) {
        throw ConfigError("outage_search", e.what());
    }
    if (outage_search.pilot_samples < 1) throw ConfigError("outage_search.pilot_samples", "must be at least 1");
    if (outage_search.max_pilot_samples < outage_search.pilot_samples)
        throw ConfigError("outage_search.max_pilot_samples", "must be at least pilot_samples");
    validate_phases(outage_search.phases);
}

NetworkConfig ExperimentConfig::geometry() const {
    if (mean_gains) {
        const auto& m = *mean_gains;
        return NetworkConfig::from_mean_gains(m[0], m[1], m[2], gamma, 1.0, 1.0);
    }
    return NetworkConfig(d10, d20, d12, gamma, 1.0, 1.0);
}

ExperimentConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
    }
    check_keys(j, "",
               {"schemes", "geometry", "mean_gains", "snr_db", "snr_convention", "budgets", "region_snr_db", "rates",
                "outage_targets", "weights", "region", "estimator", "search", "outage_search", "output"});
    ExperimentConfig c;

    field(j, "", "schemes", [&](const json& v, const std::string& p) {
        if (!v.is_array()) throw ConfigError(p, "expected an array of scheme names");
        c.schemes.clear();
        for (std::size_t i = 0; i < v.size(); ++i) {
            const std::string ip = p + "[" + std::to_string(i) + "]";
            const auto s = parse_scheme(text(v[i], ip));
            if (!s) throw ConfigError(ip, "unknown scheme (td, fd3, fd2, sic, rp, outer)");
            c.schemes.push_back(*s);
        }
    });
    field(j, "", "geometry", [&](const json& v, const std::string& p) {
        check_keys(v, p, {"d10", "d20", "d12", "gamma"});
        field(v, p, "d10", [&](const json& x, const std::string& q) { c.d10 = number(x, q); });
        field(v, p, "d20", [&](const json& x, const std::string& q) { c.d20 = number(x, q); });
        field(v, p, "d12", [&](const json& x, const std::string& q) { c.d12 = number(x, q); });
        field(v, p, "gamma", [&](const json& x, const std::string& q) { c.gamma = number(x, q); });
    });
    field(j, "", "mean_gains", [&](const json& v, const std::string& p) {
        check_keys(v, p, {"mu10", "mu20", "mu12"});
        for (const char* k : {"mu10", "mu20", "mu12"})
            if (!v.contains(k)) throw ConfigError(join(p, k), "required");
        c.mean_gains = std::array<double, 3>{number(v["mu10"], p + ".mu10"), number(v["mu20"], p + ".mu20"),
                                             number(v["mu12"], p + ".mu12")};
    });
    field(j, "", "snr_db", [&](const json& v, const std::string& p) {
        if (!v.is_array()) throw ConfigError(p, "expected an array of numbers");
        c.snr_db.clear();
        for (std::size_t i = 0; i < v.size(); ++i) c.snr_db.push_back(number(v[i], p + "[" + std::to_string(i) + "]"));
    });
    field(j, "", "snr_convention", [&](const json& v, const std::string& p) {
        const std::string s = text(v, p);
        if (s == "mu")
            c.snr_convention = SnrConvention::Mu;
        else if (s == "literal")
            c.snr_convention = SnrConvention::Literal;
        else
            throw ConfigError(p, "expected \"mu\" or \"literal\"");
    });
    field(j, "", "budgets", [&](const json& v, const std::string& p) {
        check_keys(v, p, {"p1", "p2"});
        for (const char* k : {"p1", "p2"})
            if (!v.contains(k)) throw ConfigError(join(p, k), "required");
        c.budgets = std::pair{number(v["p1"], p + ".p1"), number(v["p2"], p + ".p2")};
    });
    field(j, "", "region_snr_db", [&](const json& v, const std::string& p) { c.region_snr_db = number(v, p); });
    field(j, "", "rates", [&](const json& v, const std::string& p) {
        check_keys(v, p, {"r1", "r2"});
        field(v, p, "r1", [&](const json& x, const std::string& q) { c.r1 = number(x, q); });
        field(v, p, "r2", [&](const json& x, const std::string& q) { c.r2 = number(x, q); });
    });
    field(j, "", "outage_targets", [&](const json& v, const std::string& p) {
        check_keys(v, p, {"beta1", "beta2"});
        field(v, p, "beta1", [&](const json& x, const std::string& q) { c.beta1 = number(x, q); });
        field(v, p, "beta2", [&](const json& x, const std::string& q) { c.beta2 = number(x, q); });
    });
    field(j, "", "weights", [&](const json& v, const std::string& p) { c.weights = small_int(v, p); });
    field(j, "", "region", [&](const json& v, const std::string& p) {
        check_keys(v, p, {"rays", "rate_cap", "tolerance"});
        field(v, p, "rays", [&](const json& x, const std::string& q) { c.rays = small_int(x, q); });
        field(v, p, "rate_cap", [&](const json& x, const std::string& q) { c.rate_cap = number(x, q); });
        field(v, p, "tolerance", [&](const json& x, const std::string& q) { c.region_tolerance = number(x, q); });
    });
    field(j, "", "estimator", [&](const json& v, const std::string& p) {
        check_keys(v, p, {"seed", "samples", "chunks", "max_samples"});
        field(v, p, "seed", [&](const json& x, const std::string& q) { c.seed = count(x, q); });
        field(v, p, "samples", [&](const json& x, const std::string& q) { c.samples = count(x, q); });
        field(v, p, "chunks", [&](const json& x, const std::string& q) {
            const std::uint64_t n = count(x, q);
            if (n > 1u << 20) throw ConfigError(q, "too large");
            c.chunks = static_cast<std::uint32_t>(n);
        });
        field(v, p, "max_samples", [&](const json& x, const std::string& q) { c.max_samples = count(x, q); });
    });
    bool max_given = j.contains("estimator") && j["estimator"].contains("max_samples");
    if (!max_given) c.max_samples = std::max(c.max_samples, c.samples);
    field(j, "", "search", [&](const json& v, const std::string& p) {
        check_keys(v, p, {"intervals", "refine_intervals", "depth", "free_phases", "fd2_beta"});
        field(v, p, "intervals", [&](const json& x, const std::string& q) { c.search.intervals = small_int(x, q); });
        field(v, p, "refine_intervals",
              [&](const json& x, const std::string& q) { c.search.refine_intervals = small_int(x, q); });
        field(v, p, "depth", [&](const json& x, const std::string& q) { c.search.depth = small_int(x, q); });
        field(v, p, "free_phases", [&](const json& x, const std::string& q) { c.search.free_phases = boolean(x, q); });
        field(v, p, "fd2_beta", [&](const json& x, const std::string& q) { c.search.fd2_beta = number(x, q); });
    });
    field(j, "", "outage_search", [&](const json& v, const std::string& p) {
        check_keys(v, p,
                   {"intervals", "refine_intervals", "depth", "fd2_beta", "rp_split", "rp_boost", "pilot_samples",
                    "max_pilot_samples", "min_pilot_events", "private_rule", "phases"});
        auto& o = c.outage_search;
        field(v, p, "intervals", [&](const json& x, const std::string& q) { o.spec.intervals = small_int(x, q); });
        field(v, p, "refine_intervals",
              [&](const json& x, const std::string& q) { o.spec.refine_intervals = small_int(x, q); });
        field(v, p, "depth", [&](const json& x, const std::string& q) { o.spec.depth = small_int(x, q); });
        field(v, p, "fd2_beta", [&](const json& x, const std::string& q) { o.spec.fd2_beta = number(x, q); });
        field(v, p, "rp_split", [&](const json& x, const std::string& q) { o.spec.rp_split = number(x, q); });
        field(v, p, "rp_boost", [&](const json& x, const std::string& q) { o.rp_boost = boolean(x, q); });
        field(v, p, "pilot_samples", [&](const json& x, const std::string& q) { o.pilot_samples = count(x, q); });
        field(v, p, "max_pilot_samples",
              [&](const json& x, const std::string& q) { o.max_pilot_samples = count(x, q); });
        field(v, p, "min_pilot_events", [&](const json& x, const std::string& q) { o.min_pilot_events = number(x, q); });
        field(v, p, "private_rule", [&](const json& x, const std::string& q) {
            const std::string s = text(x, q);
            if (s == "mac")
                o.rule = PrivateOutageRule::Mac;
            else if (s == "literal")
                o.rule = PrivateOutageRule::Literal;
            else
                throw ConfigError(q, "expected \"mac\" or \"literal\"");
        });
        field(v, p, "phases", [&](const json& x, const std::string& q) {
            check_keys(x, q, {"case2", "case3", "case4"});
            field(x, q, "case2", [&](const json& y, const std::string& r) { o.phases.case2 = phase_pair(y, r); });
            field(x, q, "case3", [&](const json& y, const std::string& r) { o.phases.case3 = phase_pair(y, r); });
            field(x, q, "case4", [&](const json& y, const std::string& r) { o.phases.case4 = phase_pair(y, r); });
        });
    });
    field(j, "", "output", [&](const json& v, const std::string& p) { c.output = text(v, p); });
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("--config", "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string config_json(const ExperimentConfig& c) {
    json j;
    json schemes = json::array();
    for (SchemeKind s : c.schemes) schemes.push_back(std::string(to_string(s)));
    j["schemes"] = schemes;
    j["geometry"] = {{"d10", c.d10}, {"d20", c.d20}, {"d12", c.d12}, {"gamma", c.gamma}};
    if (c.mean_gains) {
        const auto& m = *c.mean_gains;
        j["mean_gains"] = {{"mu10", m[0]}, {"mu20", m[1]}, {"mu12", m[2]}};
    }
    j["snr_db"] = c.snr_db;
    j["snr_convention"] = std::string(convention_name(c.snr_convention));
    if (c.budgets) j["budgets"] = {{"p1", c.budgets->first}, {"p2", c.budgets->second}};
    j["region_snr_db"] = c.region_snr_db;
    j["rates"] = {{"r1", c.r1}, {"r2", c.r2}};
    j["outage_targets"] = {{"beta1", c.beta1}, {"beta2", c.beta2}};
    j["weights"] = c.weights;
    j["region"] = {{"rays", c.rays}, {"rate_cap", c.rate_cap}, {"tolerance", c.region_tolerance}};
    j["estimator"] = {{"seed", c.seed}, {"samples", c.samples}, {"chunks", c.chunks}, {"max_samples", c.max_samples}};
    j["search"] = {{"intervals", c.search.intervals},
                   {"refine_intervals", c.search.refine_intervals},
                   {"depth", c.search.depth},
                   {"free_phases", c.search.free_phases},
                   {"fd2_beta", c.search.fd2_beta}};
    const auto& o = c.outage_search;
    j["outage_search"] = {
        {"intervals", o.spec.intervals},
        {"refine_intervals", o.spec.refine_intervals},
        {"depth", o.spec.depth},
        {"fd2_beta", o.spec.fd2_beta},
        {"rp_split", o.spec.rp_split},
        {"rp_boost", o.rp_boost},
        {"pilot_samples", o.pilot_samples},
        {"max_pilot_samples", o.max_pilot_samples},
        {"min_pilot_events", o.min_pilot_events},
        {"private_rule", std::string(rule_name(o.rule))},
        {"phases",
         {{"case2", {o.phases.case2.alpha1, o.phases.case2.alpha2}},
          {"case3", {o.phases.case3.alpha1, o.phases.case3.alpha2}},
          {"case4", {o.phases.case4.alpha1, o.phases.case4.alpha2}}}}};
    return j.dump();
}

double power_for_snr(const NetworkConfig& geo, double snr1_db, SnrConvention conv) {
    const double lin = std::pow(10.0, snr1_db / 10.0);
    const double mu10 = geo.mu10();
    return conv == SnrConvention::Mu ? lin / mu10 : lin / (mu10 * mu10);
}

double snr2_db(const NetworkConfig& geo, double snr1_db, SnrConvention conv) {
    const double ratio = geo.mu20() / geo.mu10();
    return snr1_db + (conv == SnrConvention::Mu ? 10.0 : 20.0) * std::log10(ratio);
}

// ---------------------------------------------------------------------------

namespace {

NetworkConfig budgeted(const ExperimentConfig& cfg, double snr_db) {
    const NetworkConfig geo = cfg.geometry();
    if (cfg.budgets) return geo.with_budgets(cfg.budgets->first, cfg.budgets->second);
    const double rho = power_for_snr(geo, snr_db, cfg.snr_convention);
    return geo.with_budgets(rho, rho);
}

}  // namespace

std::vector<RateRegionRow> run_rate_region(const ExperimentConfig& cfg) {
    cfg.validate();
    const NetworkConfig net = budgeted(cfg, cfg.snr_db.front());
    const std::vector<Weight> weights = weight_grid(cfg.weights);
    std::vector<RateRegionRow> rows;
    for (SchemeKind s : cfg.schemes)
        for (const BoundaryPoint& p : ergodic_boundary(net, s, weights, cfg.estimator(), cfg.search))
            rows.push_back({s, p});
    return rows;
}

std::vector<OutageSweepPoint> run_outage_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    require_outage_schemes(cfg);
    const NetworkConfig geo = cfg.geometry();
    const std::size_t m = cfg.schemes.size();
    if (3 * m > 64) throw ConfigError("schemes", "too many schemes for one joint histogram");
    std::vector<OutageSweepPoint> out;
    for (double snr : cfg.snr_db) {
        const double rho = power_for_snr(geo, snr, cfg.snr_convention);
        const NetworkConfig net = geo.with_budgets(rho, rho);
        std::vector<OutagePlan> plans;
        std::vector<bool> infeasible;
        for (SchemeKind s : cfg.schemes) {
            const OutageOptimum o = optimize_outage(net, s, cfg.r1, cfg.r2, {}, cfg.outage_search, cfg.estimator());
            plans.push_back(o.plan);
            infeasible.push_back(o.infeasible);
        }
        const auto mask_of = [&](const LinkState& ls) {
            std::uint64_t mask = 0;
            for (std::size_t k = 0; k < m; ++k) {
                const BlockOutage b = evaluate_block(plans[k], ls);
                mask |= (std::uint64_t{b.pc} | std::uint64_t{b.p1} << 1 | std::uint64_t{b.p2} << 2) << (3 * k);
            }
            return mask;
        };
        EstimatorConfig mc = cfg.estimator();
        MaskCounts joint = count_masks(mc, net, mask_of);
        // Escalate until the rarest positive common outage has enough events.
        double rarest = 1.0;
        for (std::size_t k = 0; k < m; ++k) {
            const double pc = joint.probability(std::uint64_t{1} << (3 * k)).mean;
            if (pc > 0) rarest = std::min(rarest, pc);
        }
        const std::uint64_t n = escalated_samples(rarest, mc.samples, cfg.max_samples);
        if (n != mc.samples) {
            mc = mc.with_samples(n);
            joint = count_masks(mc, net, mask_of);
        }
        OutageSweepPoint point;
        point.snr1_db = snr;
        for (std::size_t k = 0; k < m; ++k) {
            OutageSweepRow row;
            row.scheme = cfg.schemes[k];
            row.snr1_db = snr;
            row.snr2_db = snr2_db(geo, snr, cfg.snr_convention);
            row.pc = joint.probability(std::uint64_t{1} << (3 * k));
            row.p1 = joint.probability(std::uint64_t{2} << (3 * k));
            row.p2 = joint.probability(std::uint64_t{4} << (3 * k));
            row.infeasible = infeasible[k];
            point.rows.push_back(row);
        }
        point.joint = std::move(joint);
        out.push_back(std::move(point));
    }
    return out;
}

Estimate joint_difference(const OutageSweepPoint& p, std::size_t a, int fa, std::size_t b, int fb) {
    return p.joint.difference(std::uint64_t{1} << (3 * a + fa), std::uint64_t{1} << (3 * b + fb));
}

namespace {

// Fixed pilot sized to resolve the targets; every bisection probe reuses it.
std::uint64_t region_pilot_samples(const ExperimentConfig& cfg) {
    const double beta = std::min(cfg.beta1, cfg.beta2);
    std::uint64_t pilot = cfg.outage_search.pilot_samples;
    if (beta > 0 && beta < 1) pilot = std::max<std::uint64_t>(pilot, static_cast<std::uint64_t>(std::ceil(100 / beta)));
    return pilot;
}

}  // namespace

std::vector<OutageRegionRow> run_outage_region(const ExperimentConfig& cfg) {
    cfg.validate();
    require_outage_schemes(cfg);
    const NetworkConfig net = budgeted(cfg, cfg.region_snr_db);
    OutageRegionSettings st;
    st.beta1 = cfg.beta1;
    st.beta2 = cfg.beta2;
    st.rate_cap = cfg.rate_cap;
    st.tolerance = cfg.region_tolerance;
    st.rays = cfg.rays;
    st.search = cfg.outage_search;
    st.search.pilot_samples = st.search.max_pilot_samples = region_pilot_samples(cfg);
    st.search.min_pilot_events = 0;
    std::vector<OutageRegionRow> rows;
    for (SchemeKind s : cfg.schemes)
        for (const RegionPoint& p : outage_rate_region(net, s, st, cfg.estimator())) rows.push_back({s, p});
    return rows;
}

std::vector<CaseProbRow> run_case_prob(const ExperimentConfig& cfg) {
    cfg.validate();
    const NetworkConfig geo = cfg.geometry();
    const CaseProbabilities closed = case_probability(geo);
    const MaskCounts counts =
        count_masks(cfg.estimator(), geo, [](const LinkState& ls) { return std::uint64_t{1} << index_of(classify_case(ls)); });
    std::vector<CaseProbRow> rows;
    for (TransmissionCase c : kAllCases)
        rows.push_back({c, closed[c], counts.probability(std::uint64_t{1} << index_of(c))});
    return rows;
}

// ---------------------------------------------------------------------------

void write_csv(std::ostream& os, const ExperimentConfig& cfg, const std::vector<RateRegionRow>& rows) {
    header(os, cfg);
    os << "scheme,w1,w2,r1,r2,value,r1_se,r2_se,samples,seed\n";
    for (const auto& r : rows) {
        const BoundaryPoint& p = r.point;
        os << to_string(r.scheme) << ',' << fmt(p.weight.w1) << ',' << fmt(p.weight.w2) << ',' << fmt(p.r1.mean) << ','
           << fmt(p.r2.mean) << ',' << fmt(p.value.mean) << ',' << fmt(p.r1.std_error) << ',' << fmt(p.r2.std_error)
           << ',' << p.value.n << ',' << cfg.seed << '\n';
    }
}

void write_csv(std::ostream& os, const ExperimentConfig& cfg, const std::vector<OutageSweepPoint>& points) {
    header(os, cfg);
    os << "scheme,snr1_db,snr2_db,pc,pc_se,p1,p1_se,p2,p2_se,samples,seed\n";
    for (const auto& pt : points)
        for (const auto& r : pt.rows)
            os << to_string(r.scheme) << ',' << fmt(r.snr1_db) << ',' << fmt(r.snr2_db) << ',' << fmt(r.pc.mean) << ','
               << fmt(r.pc.std_error) << ',' << fmt(r.p1.mean) << ',' << fmt(r.p1.std_error) << ',' << fmt(r.p2.mean)
               << ',' << fmt(r.p2.std_error) << ',' << r.pc.n << ',' << cfg.seed << '\n';
}

void write_csv(std::ostream& os, const ExperimentConfig& cfg, const std::vector<OutageRegionRow>& rows) {
    header(os, cfg);
    os << "scheme,kind,ray_deg,r1,r2,t,samples,seed\n";
    for (const auto& r : rows)
        os << to_string(r.scheme) << ',' << to_string(r.point.kind) << ',' << fmt(r.point.ray_deg) << ','
           << fmt(r.point.r1) << ',' << fmt(r.point.r2) << ',' << fmt(r.point.t) << ',' << region_pilot_samples(cfg) << ','
           << cfg.seed << '\n';
}

void write_csv(std::ostream& os, const ExperimentConfig& cfg, const std::vector<CaseProbRow>& rows) {
    header(os, cfg);
    os << "case,closed_form,mc,mc_se,samples,seed\n";
    for (const auto& r : rows)
        os << to_string(r.c) << ',' << fmt(r.closed_form) << ',' << fmt(r.mc.mean) << ',' << fmt(r.mc.std_error) << ','
           << r.mc.n << ',' << cfg.seed << '\n';
}

}  // namespace d2d
