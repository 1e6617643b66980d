// Command-line front end: figure sweeps to CSV, single-point reports and
// series-convergence tables for the alpha-kappa-mu shadowed secrecy metrics.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "akms/presets.hpp"
#include "akms/runconfig.hpp"
#include "akms/runner.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string preset;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<bool> mc;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "JSON run configuration file");
    cmd->add_option("--preset", o.preset, "built-in figure preset (fig1..fig5)");
    cmd->add_option("--out", o.out_path, "output path (default: config's 'output', else stdout)");
    cmd->add_option("--seed", [&o](const std::vector<std::string>& v) {
        o.seed = std::stoull(v.front());
        return true;
    }, "Monte-Carlo seed override")->expected(1);
    cmd->add_flag("--mc,!--no-mc", [&o](std::int64_t count) { o.mc = count > 0; },
                  "enable/disable Monte-Carlo estimates");
}

akms::cli::RunConfig load_config(const CommonOpts& o) {
    nlohmann::json j;
    if (!o.preset.empty()) {
        j = nlohmann::json::parse(akms::cli::preset_json(o.preset));
    } else if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        if (!in) throw akms::domain_error("cannot open config file: " + o.config_path);
        in >> j;
    } else {
        throw akms::domain_error("either --config or --preset is required");
    }
    auto cfg = akms::cli::parse_run_config(j);
    if (o.seed) cfg.sim.seed = *o.seed;
    if (!o.out_path.empty()) cfg.output = o.out_path;
    if (o.mc) {
        const bool want = *o.mc;
        const bool have = cfg.has_metric("mc_all");
        if (want && !have) cfg.metrics.push_back("mc_all");
        if (!want && have)
            cfg.metrics.erase(std::remove(cfg.metrics.begin(), cfg.metrics.end(), "mc_all"),
                              cfg.metrics.end());
    }
    return cfg;
}

template <class Fn>
int with_output(const akms::cli::RunConfig& cfg, Fn&& fn) {
    if (cfg.output.empty()) return fn(std::cout);
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file: " << cfg.output << "\n";
        return 1;
    }
    return fn(out);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"alpha-kappa-mu shadowed wiretap secrecy metrics"};
    app.require_subcommand(1);

    CommonOpts sweep_opts, point_opts, conv_opts;
    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep and emit a CSV table");
    add_common(sweep, sweep_opts);
    auto* point = app.add_subcommand("point", "evaluate one scenario and emit a JSON report");
    add_common(point, point_opts);
    auto* conv = app.add_subcommand("converge", "series truncation convergence table");
    add_common(conv, conv_opts);

    auto* presets = app.add_subcommand("presets", "list or dump built-in figure presets");
    std::string dump_name;
    presets->add_option("--dump", dump_name, "print the named preset JSON to stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep->parsed()) {
            auto cfg = load_config(sweep_opts);
            return with_output(cfg, [&](std::ostream& os) { return akms::cli::run_sweep(cfg, os); });
        }
        if (point->parsed()) {
            auto cfg = load_config(point_opts);
            return with_output(cfg, [&](std::ostream& os) { return akms::cli::run_point(cfg, os); });
        }
        if (conv->parsed()) {
            auto cfg = load_config(conv_opts);
            return with_output(cfg,
                               [&](std::ostream& os) { return akms::cli::convergence_report(cfg, os); });
        }
        if (presets->parsed()) {
            if (!dump_name.empty()) {
                std::cout << akms::cli::preset_json(dump_name);
                return 0;
            }
            for (const auto& n : akms::cli::preset_names()) std::cout << n << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
