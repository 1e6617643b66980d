#ifndef AKMS_RUNNER_HPP
#define AKMS_RUNNER_HPP

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "akms/montecarlo.hpp"
#include "akms/runconfig.hpp"
#include "akms/secrecy.hpp"

namespace akms::cli {

namespace detail {

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline constexpr double nan = std::numeric_limits<double>::quiet_NaN();

} // namespace detail

/// All metric values for one (curve, sweep point); NaN where not computed.
struct SweepRow {
    std::string curve;
    double sweep_value = 0.0;
    double sop_exact = detail::nan, sop_exact_err = detail::nan;
    long sop_exact_terms = 0;
    double sop_numeric = detail::nan, sop_numeric_err = detail::nan;
    long sop_numeric_evals = 0;
    double sop_asymptotic = detail::nan, sop_asymptotic_err = detail::nan;
    long sop_asymptotic_terms = 0;
    double spsc = detail::nan, spsc_err = detail::nan;
    long spsc_terms = 0;
    double asc_nats = detail::nan, asc_bits = detail::nan;
    double asc_im1 = detail::nan, asc_im2 = detail::nan, asc_im3 = detail::nan;
    double asc_err = detail::nan;
    long asc_evals = 0;
    double mc_sop = detail::nan, mc_sop_se = detail::nan;
    double mc_spsc = detail::nan, mc_spsc_se = detail::nan;
    double mc_asc_clipped = detail::nan, mc_asc_clipped_se = detail::nan;
    double mc_asc_unclipped = detail::nan, mc_asc_unclipped_se = detail::nan;
    std::string errors; // ';'-joined names of failed metrics
};

inline SweepRow evaluate_point(const ScenarioFields& fields, const RunConfig& cfg) {
    SweepRow row;
    auto fail = [&row](const std::string& metric) {
        if (!row.errors.empty()) row.errors += ';';
        row.errors += metric;
    };
    secrecy::SecrecyScenario s;
    try {
        s = fields.to_scenario();
    } catch (const std::exception&) {
        fail("scenario");
        return row;
    }
    if (cfg.has_metric("sop_exact")) {
        try {
            auto r = secrecy::sop_lower_exact(s, cfg.series);
            row.sop_exact = r.value;
            row.sop_exact_err = r.error_estimate;
            row.sop_exact_terms = r.terms_or_evals;
        } catch (const std::exception&) {
            fail("sop_exact");
        }
    }
    if (cfg.has_metric("sop_numeric")) {
        try {
            auto r = secrecy::sop_lower_numeric(s);
            row.sop_numeric = r.value;
            row.sop_numeric_err = r.error_estimate;
            row.sop_numeric_evals = r.terms_or_evals;
        } catch (const std::exception&) {
            fail("sop_numeric");
        }
    }
    if (cfg.has_metric("sop_asymptotic")) {
        try {
            auto r = secrecy::sop_asymptotic(s, cfg.series);
            row.sop_asymptotic = r.value;
            row.sop_asymptotic_err = r.error_estimate;
            row.sop_asymptotic_terms = r.terms_or_evals;
        } catch (const std::exception&) {
            fail("sop_asymptotic");
        }
    }
    if (cfg.has_metric("spsc")) {
        try {
            auto r = secrecy::spsc(s, cfg.series);
            row.spsc = r.value;
            row.spsc_err = r.error_estimate;
            row.spsc_terms = r.terms_or_evals;
        } catch (const std::exception&) {
            fail("spsc");
        }
    }
    if (cfg.has_metric("asc")) {
        try {
            auto r = secrecy::asc(s, cfg.series);
            row.asc_nats = r.asc_nats;
            row.asc_bits = r.asc_bits;
            row.asc_im1 = r.im1;
            row.asc_im2 = r.im2;
            row.asc_im3 = r.im3;
            row.asc_err = r.error_estimate;
            row.asc_evals = r.evals;
        } catch (const std::exception&) {
            fail("asc");
        }
    }
    if (cfg.has_metric("mc_all")) {
        try {
            auto sop = mc::estimate_sop(s, cfg.sim);
            row.mc_sop = sop.mean;
            row.mc_sop_se = sop.std_error;
            auto sp = mc::estimate_spsc(s, cfg.sim);
            row.mc_spsc = sp.mean;
            row.mc_spsc_se = sp.std_error;
            auto a = mc::estimate_asc(s, cfg.sim);
            row.mc_asc_clipped = a.clipped.mean;
            row.mc_asc_clipped_se = a.clipped.std_error;
            row.mc_asc_unclipped = a.unclipped.mean;
            row.mc_asc_unclipped_se = a.unclipped.std_error;
        } catch (const std::exception&) {
            fail("mc_all");
        }
    }
    return row;
}

inline std::vector<std::string> csv_header(const RunConfig& cfg) {
    std::vector<std::string> h = {"curve", cfg.sweep.variable};
    auto add = [&h](std::initializer_list<const char*> names) {
        for (auto* n : names) h.push_back(n);
    };
    if (cfg.has_metric("sop_exact")) add({"sop_exact", "sop_exact_err", "sop_exact_terms"});
    if (cfg.has_metric("sop_numeric")) add({"sop_numeric", "sop_numeric_err", "sop_numeric_evals"});
    if (cfg.has_metric("sop_asymptotic"))
        add({"sop_asymptotic", "sop_asymptotic_err", "sop_asymptotic_terms"});
    if (cfg.has_metric("spsc")) add({"spsc", "spsc_err", "spsc_terms"});
    if (cfg.has_metric("asc")) add({"asc_nats", "asc_bits", "asc_im1", "asc_im2", "asc_im3", "asc_err", "asc_evals"});
    if (cfg.has_metric("mc_all"))
        add({"mc_sop", "mc_sop_se", "mc_spsc", "mc_spsc_se", "mc_asc_clipped", "mc_asc_clipped_se",
             "mc_asc_unclipped", "mc_asc_unclipped_se"});
    h.push_back("error_code");
    return h;
}

inline void write_csv_row(std::ostream& os, const RunConfig& cfg, const SweepRow& r) {
    using detail::fmt;
    std::vector<std::string> cells = {detail::csv_quote(r.curve), fmt(r.sweep_value)};
    auto addv = [&cells](double v) { cells.push_back(fmt(v)); };
    auto addl = [&cells](long v) { cells.push_back(std::to_string(v)); };
    if (cfg.has_metric("sop_exact")) {
        addv(r.sop_exact);
        addv(r.sop_exact_err);
        addl(r.sop_exact_terms);
    }
    if (cfg.has_metric("sop_numeric")) {
        addv(r.sop_numeric);
        addv(r.sop_numeric_err);
        addl(r.sop_numeric_evals);
    }
    if (cfg.has_metric("sop_asymptotic")) {
        addv(r.sop_asymptotic);
        addv(r.sop_asymptotic_err);
        addl(r.sop_asymptotic_terms);
    }
    if (cfg.has_metric("spsc")) {
        addv(r.spsc);
        addv(r.spsc_err);
        addl(r.spsc_terms);
    }
    if (cfg.has_metric("asc")) {
        addv(r.asc_nats);
        addv(r.asc_bits);
        addv(r.asc_im1);
        addv(r.asc_im2);
        addv(r.asc_im3);
        addv(r.asc_err);
        addl(r.asc_evals);
    }
    if (cfg.has_metric("mc_all")) {
        addv(r.mc_sop);
        addv(r.mc_sop_se);
        addv(r.mc_spsc);
        addv(r.mc_spsc_se);
        addv(r.mc_asc_clipped);
        addv(r.mc_asc_clipped_se);
        addv(r.mc_asc_unclipped);
        addv(r.mc_asc_unclipped_se);
    }
    cells.push_back(detail::csv_quote(r.errors));
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) os << ',';
        os << cells[i];
    }
    os << '\n';
}

/// Run the sweep and write the CSV table. Returns the process exit code:
/// 0 on success, 2 if any row recorded a metric failure.
inline int run_sweep(const RunConfig& cfg, std::ostream& csv) {
    cfg.validate();
    auto header = csv_header(cfg);
    for (size_t i = 0; i < header.size(); ++i) {
        if (i) csv << ',';
        csv << header[i];
    }
    csv << '\n';
    if (cfg.metrics.empty()) return 0;

    std::vector<CurveSpec> curves = cfg.curves;
    if (curves.empty()) curves.push_back(CurveSpec{});
    bool any_failed = false;
    for (const auto& curve : curves) {
        for (double v : cfg.sweep.points()) {
            ScenarioFields f = cfg.base;
            for (const auto& [k, val] : curve.overrides) f.set(k, val);
            f.set(cfg.sweep.variable, v);
            SweepRow row = evaluate_point(f, cfg);
            row.curve = curve.label;
            row.sweep_value = v;
            any_failed = any_failed || !row.errors.empty();
            write_csv_row(csv, cfg, row);
        }
    }
    return any_failed ? 2 : 0;
}

/// Single-scenario structured report (JSON): all metrics, the ASC
/// breakdown, CDF spot checks and a truncation report.
inline int run_point(const RunConfig& cfg, std::ostream& os) {
    cfg.validate();
    ScenarioFields f = cfg.base;
    if (!cfg.curves.empty())
        for (const auto& [k, v] : cfg.curves.front().overrides) f.set(k, v);
    RunConfig all = cfg;
    if (all.metrics.empty()) all.metrics = {"sop_exact", "sop_numeric", "sop_asymptotic", "spsc", "asc"};
    SweepRow row = evaluate_point(f, all);

    nlohmann::json j;
    j["scenario"] = {{"main",
                      {{"alpha", f.alpha_h}, {"kappa", f.kappa_h}, {"mu", f.mu_h}, {"m", f.m_h},
                       {"mean_snr_db", f.gbar_h_db}}},
                     {"eve",
                      {{"alpha", f.alpha_k}, {"kappa", f.kappa_k}, {"mu", f.mu_k}, {"m", f.m_k},
                       {"mean_snr_db", f.gbar_k_db}}},
                     {"rate_target", f.rate_target}};
    auto put = [&](const char* name, double v, double err, long n) {
        if (!std::isnan(v)) j["metrics"][name] = {{"value", v}, {"error_estimate", err}, {"terms_or_evals", n}};
    };
    put("sop_exact", row.sop_exact, row.sop_exact_err, row.sop_exact_terms);
    put("sop_numeric", row.sop_numeric, row.sop_numeric_err, row.sop_numeric_evals);
    put("sop_asymptotic", row.sop_asymptotic, row.sop_asymptotic_err, row.sop_asymptotic_terms);
    put("spsc", row.spsc, row.spsc_err, row.spsc_terms);
    if (!std::isnan(row.asc_nats))
        j["metrics"]["asc"] = {{"nats", row.asc_nats}, {"bits", row.asc_bits}, {"im1", row.asc_im1},
                               {"im2", row.asc_im2},   {"im3", row.asc_im3},   {"error_estimate", row.asc_err},
                               {"evals", row.asc_evals}};
    if (all.has_metric("mc_all") && !std::isnan(row.mc_sop))
        j["metrics"]["mc"] = {{"sop", row.mc_sop},
                              {"sop_se", row.mc_sop_se},
                              {"spsc", row.mc_spsc},
                              {"spsc_se", row.mc_spsc_se},
                              {"asc_clipped", row.mc_asc_clipped},
                              {"asc_clipped_se", row.mc_asc_clipped_se},
                              {"asc_unclipped", row.mc_asc_unclipped},
                              {"asc_unclipped_se", row.mc_asc_unclipped_se}};

    // truncation report + CDF spot checks on the main link
    try {
        auto s = f.to_scenario();
        auto link = channel::make_link(s.main);
        nlohmann::json spots = nlohmann::json::array();
        for (double g : {0.5 * s.main.mean_snr, s.main.mean_snr, 2.0 * s.main.mean_snr}) {
            auto ps = channel::pdf_series(link, g, cfg.series);
            nlohmann::json spot = {{"gamma", g},
                                   {"pdf", channel::pdf(link, g)},
                                   {"pdf_series", ps.value},
                                   {"pdf_series_terms", ps.terms_used},
                                   {"pdf_series_trunc", ps.trunc_estimate},
                                   {"cdf_general", channel::cdf_general(link, g, cfg.series)}};
            if (s.main.integer_mu()) spot["cdf_series"] = channel::cdf_series(link, g, cfg.series);
            spots.push_back(spot);
        }
        j["main_link_spot_checks"] = spots;
    } catch (const std::exception& e) {
        j["main_link_spot_checks"] = std::string("failed: ") + e.what();
    }
    if (!row.errors.empty()) j["errors"] = row.errors;
    os << j.dump(2) << '\n';
    return row.errors.empty() ? 0 : 2;
}

/// Convergence table: each analytic metric evaluated with the truncation
/// cap set to 5, 10, 20 and 40 terms.
struct ConvergenceRow {
    std::string metric;
    std::string curve;
    double values[4];     // at max_terms 5, 10, 20, 40
    double rel_change[3]; // between consecutive columns
};

inline std::vector<ConvergenceRow> convergence_table(const RunConfig& cfg) {
    cfg.validate();
    static const int kTerms[4] = {5, 10, 20, 40};
    std::vector<CurveSpec> curves = cfg.curves;
    if (curves.empty()) curves.push_back(CurveSpec{});
    std::vector<std::string> metrics;
    for (const auto& m : cfg.metrics)
        if (m != "mc_all") metrics.push_back(m);
    if (metrics.empty()) metrics = {"sop_exact", "spsc"};

    std::vector<ConvergenceRow> rows;
    const auto pts = cfg.sweep.points();
    const double sweep_value = pts[pts.size() / 2];
    for (const auto& curve : curves) {
        ScenarioFields f = cfg.base;
        for (const auto& [k, v] : curve.overrides) f.set(k, v);
        f.set(cfg.sweep.variable, sweep_value);
        for (const auto& metric : metrics) {
            ConvergenceRow row;
            row.metric = metric;
            row.curve = curve.label;
            for (int i = 0; i < 4; ++i) {
                RunConfig c1 = cfg;
                c1.metrics = {metric};
                c1.series.max_terms = kTerms[i];
                c1.series.hard_cap = std::max(cfg.series.hard_cap, kTerms[i]);
                SweepRow r = evaluate_point(f, c1);
                double v = detail::nan;
                if (metric == "sop_exact") v = r.sop_exact;
                else if (metric == "sop_numeric") v = r.sop_numeric;
                else if (metric == "sop_asymptotic") v = r.sop_asymptotic;
                else if (metric == "spsc") v = r.spsc;
                else if (metric == "asc") v = r.asc_nats;
                row.values[i] = v;
            }
            for (int i = 0; i < 3; ++i) {
                const double denom = std::abs(row.values[i + 1]);
                row.rel_change[i] =
                    denom > 0.0 ? std::abs(row.values[i + 1] - row.values[i]) / denom : 0.0;
            }
            rows.push_back(row);
        }
    }
    return rows;
}

inline int convergence_report(const RunConfig& cfg, std::ostream& os) {
    auto rows = convergence_table(cfg);
    os << "metric          curve                 terms=5        terms=10       terms=20       terms=40"
          "       d(5->10)   d(10->20)  d(20->40)\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%-15s %-20s %- 14.8g %- 14.8g %- 14.8g %- 14.8g %-10.3g %-10.3g %-10.3g\n",
                      r.metric.c_str(), r.curve.c_str(), r.values[0], r.values[1], r.values[2], r.values[3],
                      r.rel_change[0], r.rel_change[1], r.rel_change[2]);
        os << buf;
    }
    return 0;
}

} // namespace akms::cli

#endif
