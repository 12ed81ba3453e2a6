#include <tsa/commands.hpp>
#include <tsa/errors.hpp>

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdio>

namespace {

void add_common(CLI::App& cmd, tsa::CommandOptions& o) {
    cmd.add_option("--scenario", o.scenario, "Scenario JSON file")->required();
    cmd.add_option("--out", o.out_dir, "Output directory")->capture_default_str();
    cmd.add_option("--alpha", o.alpha_s, "Sampling precision in whole seconds (overrides the scenario)");
    cmd.add_option("--min-elevation", o.min_elevation_deg, "Elevation mask in degrees (overrides the scenario)");
    cmd.add_option("--coarse-step", o.coarse_step_s, "Coarse scan step in seconds (overrides the scenario)");
    cmd.add_option("--jobs", o.jobs, "Worker threads, 0 = number of processors")->capture_default_str();
    cmd.add_option("--constellation", o.constellations, "Restrict to these constellation ids (repeatable)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Temporal spectrum analysis of ground-station / satellite visibility"};
    app.require_subcommand(1);
    app.set_version_flag("--version", TSA_VERSION);

    tsa::CommandOptions o;
    auto* access = app.add_subcommand("access", "Access windows and step-function data per (station, satellite) pair");
    add_common(*access, o);
    access->add_option("--station", o.stations, "Only these station ids (repeatable)");
    access->add_option("--satellite", o.satellites, "Only these satellite ids (repeatable)");
    access->add_flag("--aggregate", o.aggregate, "One windows.csv instead of one file per pair");
    access->add_flag("--all-pairs", o.all_pairs, "Include pairs across constellations");

    auto* intra = app.add_subcommand("intra", "Spectrum matrix, Gram eigen decomposition and station ranking");
    add_common(*intra, o);

    auto* inter = app.add_subcommand("inter", "Pulse statistics, PMFs and the interaction-intensity matrix");
    add_common(*inter, o);
    inter->add_option("--pmf-bin", o.pmf.bin_s, "PMF bin width in seconds, 0 = whole global window")
        ->capture_default_str();
    std::string pooling = "all";
    inter->add_option("--pmf-pooling", pooling, "PMF pooling: all (every pair) or best (strongest station)")
        ->check(CLI::IsMember({"all", "best"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    o.pmf.pooling = pooling == "best" ? tsa::PmfPooling::best_station : tsa::PmfPooling::all_pairs;

    try {
        tsa::CommandResult r;
        if (*access) {
            r = tsa::cmd_access(o);
        } else if (*intra) {
            r = tsa::cmd_intra(o);
        } else {
            r = tsa::cmd_inter(o);
        }
        std::fputs(r.summary.c_str(), stdout);
        if (!r.summary.empty() && r.summary.back() != '\n') {
            std::fputc('\n', stdout);
        }
        return 0;
    } catch (const std::exception& e) {
        const int code = tsa::exit_code_for(e);
        fmt::print(stderr, "tsa: error: {}\n", e.what());
        return code;
    }
}
