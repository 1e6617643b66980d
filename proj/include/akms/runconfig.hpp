#ifndef AKMS_RUNCONFIG_HPP
#define AKMS_RUNCONFIG_HPP

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "akms/control.hpp"
#include "akms/error.hpp"
#include "akms/montecarlo.hpp"
#include "akms/secrecy.hpp"

#include "json.hpp"

namespace akms::cli {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// Scenario description as the config file carries it: mean SNRs in dB.
/// The dB -> linear conversion happens exactly once, in to_scenario().
struct ScenarioFields {
    double alpha_h = 2.0, kappa_h = 0.0, mu_h = 1.0, m_h = 1.0, gbar_h_db = 0.0;
    double alpha_k = 2.0, kappa_k = 0.0, mu_k = 1.0, m_k = 1.0, gbar_k_db = 0.0;
    double rate_target = 0.0;

    static const std::set<std::string>& variable_whitelist() {
        static const std::set<std::string> names = {
            "gbar_h_db", "gbar_k_db", "alpha",   "alpha_h", "alpha_k", "kappa_h",
            "kappa_k",   "mu_h",      "mu_k",    "m_h",     "m_k",     "rate_target"};
        return names;
    }

    void set(const std::string& name, double value) {
        if (name == "gbar_h_db") gbar_h_db = value;
        else if (name == "gbar_k_db") gbar_k_db = value;
        else if (name == "alpha") alpha_h = alpha_k = value;
        else if (name == "alpha_h") alpha_h = value;
        else if (name == "alpha_k") alpha_k = value;
        else if (name == "kappa_h") kappa_h = value;
        else if (name == "kappa_k") kappa_k = value;
        else if (name == "mu_h") mu_h = value;
        else if (name == "mu_k") mu_k = value;
        else if (name == "m_h") m_h = value;
        else if (name == "m_k") m_k = value;
        else if (name == "rate_target") rate_target = value;
        else
            throw domain_error("unknown scenario variable '" + name + "'");
    }

    secrecy::SecrecyScenario to_scenario() const {
        secrecy::SecrecyScenario s;
        s.main = {alpha_h, kappa_h, mu_h, m_h, db_to_linear(gbar_h_db)};
        s.eve = {alpha_k, kappa_k, mu_k, m_k, db_to_linear(gbar_k_db)};
        s.rate_target = rate_target;
        s.validate();
        return s;
    }
};

struct SweepSpec {
    std::string variable = "gbar_h_db";
    double start = 0.0, stop = 0.0, step = 1.0;

    void validate() const {
        if (!(step > 0.0)) throw domain_error("sweep: step must be > 0");
        if (stop < start) throw domain_error("sweep: stop must be >= start");
        if (!ScenarioFields::variable_whitelist().count(variable))
            throw domain_error("sweep: variable '" + variable + "' not in whitelist");
    }

    std::vector<double> points() const {
        std::vector<double> p;
        for (double v = start; v <= stop + 0.5 * step; v += step) p.push_back(v);
        return p;
    }
};

/// One curve of a figure: a label plus parameter overrides on the base scenario.
struct CurveSpec {
    std::string label;
    std::map<std::string, double> overrides;
};

inline const std::vector<std::string>& known_metrics() {
    static const std::vector<std::string> m = {"sop_exact", "sop_numeric", "sop_asymptotic",
                                               "spsc",      "asc",         "mc_all"};
    return m;
}

struct RunConfig {
    ScenarioFields base;
    SweepSpec sweep;
    std::vector<CurveSpec> curves; // empty -> single unlabeled curve
    std::vector<std::string> metrics;
    SeriesControl series;
    mc::SimConfig sim;
    std::string output; // empty -> stdout

    bool has_metric(const std::string& name) const {
        for (const auto& m : metrics)
            if (m == name) return true;
        return false;
    }

    void validate() const {
        sweep.validate();
        series.validate();
        sim.validate();
        for (const auto& m : metrics) {
            bool ok = false;
            for (const auto& k : known_metrics()) ok = ok || (k == m);
            if (!ok) throw domain_error("unknown metric '" + m + "'");
        }
        for (const auto& c : curves)
            for (const auto& [k, v] : c.overrides) {
                (void)v;
                if (!ScenarioFields::variable_whitelist().count(k))
                    throw domain_error("curve override '" + k + "' not in whitelist");
            }
    }
};

namespace detail {

inline void parse_link(const nlohmann::json& j, const char* which, ScenarioFields& f) {
    if (!j.contains(which)) return;
    const auto& L = j.at(which);
    const bool is_main = std::string(which) == "main";
    auto get = [&](const char* key, double& slot) {
        if (L.contains(key)) slot = L.at(key).get<double>();
    };
    if (is_main) {
        get("alpha", f.alpha_h);
        get("kappa", f.kappa_h);
        get("mu", f.mu_h);
        get("m", f.m_h);
        get("mean_snr_db", f.gbar_h_db);
    } else {
        get("alpha", f.alpha_k);
        get("kappa", f.kappa_k);
        get("mu", f.mu_k);
        get("m", f.m_k);
        get("mean_snr_db", f.gbar_k_db);
    }
}

} // namespace detail

inline RunConfig parse_run_config(const nlohmann::json& j) {
    RunConfig cfg;
    if (j.contains("scenario")) {
        const auto& sc = j.at("scenario");
        detail::parse_link(sc, "main", cfg.base);
        detail::parse_link(sc, "eve", cfg.base);
        if (sc.contains("rate_target")) cfg.base.rate_target = sc.at("rate_target").get<double>();
    }
    if (j.contains("sweep")) {
        const auto& sw = j.at("sweep");
        cfg.sweep.variable = sw.value("variable", cfg.sweep.variable);
        cfg.sweep.start = sw.value("start", cfg.sweep.start);
        cfg.sweep.stop = sw.value("stop", cfg.sweep.stop);
        cfg.sweep.step = sw.value("step", cfg.sweep.step);
    }
    if (j.contains("curves")) {
        for (const auto& c : j.at("curves")) {
            CurveSpec cs;
            cs.label = c.value("label", "");
            if (c.contains("overrides"))
                for (auto it = c.at("overrides").begin(); it != c.at("overrides").end(); ++it)
                    cs.overrides[it.key()] = it.value().get<double>();
            cfg.curves.push_back(std::move(cs));
        }
    }
    if (j.contains("metrics"))
        for (const auto& m : j.at("metrics")) cfg.metrics.push_back(m.get<std::string>());
    if (j.contains("series")) {
        const auto& s = j.at("series");
        cfg.series.max_terms = s.value("max_terms", cfg.series.max_terms);
        cfg.series.rel_tol = s.value("rel_tol", cfg.series.rel_tol);
        cfg.series.hard_cap = s.value("hard_cap", cfg.series.hard_cap);
    }
    if (j.contains("sim")) {
        const auto& s = j.at("sim");
        cfg.sim.n_samples = s.value("n_samples", cfg.sim.n_samples);
        cfg.sim.seed = s.value("seed", cfg.sim.seed);
        cfg.sim.batch_size = s.value("batch_size", cfg.sim.batch_size);
        if (cfg.sim.batch_size > cfg.sim.n_samples) cfg.sim.batch_size = cfg.sim.n_samples;
    }
    cfg.output = j.value("output", std::string());
    cfg.validate();
    return cfg;
}

} // namespace akms::cli

#endif
