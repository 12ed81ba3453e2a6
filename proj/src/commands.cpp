#include <tsa/commands.hpp>

#include <tsa/errors.hpp>
#include <tsa/report.hpp>
#include <tsa/spectra.hpp>

#include <fmt/format.h>

#include <chrono>
#include <set>
#include <sstream>

#ifndef TSA_VERSION
#define TSA_VERSION "dev"
#endif

namespace tsa {

std::string safe_file_stem(const std::string& id) {
    std::string out;
    for (const char c : id) {
        const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' ||
                        c == '_' || c == '.';
        out += ok ? c : '_';
    }
    return out.empty() ? "_" : out;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const InputError*>(&e) != nullptr) {
        return 2;
    }
    if (dynamic_cast<const EmptyNetworkError*>(&e) != nullptr) {
        return 3;
    }
    if (dynamic_cast<const NumericalError*>(&e) != nullptr) {
        return 4;
    }
    return 1;
}

namespace {

using Clock = std::chrono::steady_clock;

Scenario load_with_overrides(const CommandOptions& o) {
    auto s = load_scenario(o.scenario);
    if (o.alpha_s) {
        s.alpha_s = *o.alpha_s;
    }
    if (o.min_elevation_deg) {
        s.min_elevation_deg = *o.min_elevation_deg;
    }
    if (o.coarse_step_s) {
        s.coarse_step_s = *o.coarse_step_s;
    }
    validate_scenario(s);
    if (o.pmf.bin_s < 0) {
        throw FormatError(fmt::format("pmf bin must be >= 0 s (got {})", o.pmf.bin_s));
    }
    resolve_jobs(o.jobs);
    return s;
}

std::vector<std::string> selected_constellations(const Scenario& s, const CommandOptions& o) {
    std::vector<std::string> ids;
    if (o.constellations.empty()) {
        for (const auto& c : s.constellations) {
            ids.push_back(c.id);
        }
        return ids;
    }
    std::set<std::string> seen;
    for (const auto& id : o.constellations) {
        s.constellation(id);  // throws CrossReferenceError listing the known ids
        if (seen.insert(id).second) {
            ids.push_back(id);
        }
    }
    return ids;
}

std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) {
        out += out.empty() ? s : ", " + s;
    }
    return out;
}

void check_filter(const std::vector<std::string>& wanted, const std::vector<std::string>& available,
                  const char* what) {
    for (const auto& w : wanted) {
        if (std::find(available.begin(), available.end(), w) == available.end()) {
            throw CrossReferenceError(fmt::format("no {} '{}'; available: {}", what, w, join(available)));
        }
    }
}

bool wanted(const std::vector<std::string>& filter, const std::string& id) {
    return filter.empty() || std::find(filter.begin(), filter.end(), id) != filter.end();
}

CommandResult finish(const char* command, const CommandOptions& o, const Scenario& s, OutputSet& out,
                     Clock::time_point started, std::vector<std::pair<std::string, std::string>> settings,
                     std::string summary) {
    RunManifest m;
    m.tool_version = TSA_VERSION;
    m.command = command;
    m.scenario = o.scenario;
    m.output_dir = out.dir();
    m.alpha_s = s.alpha_s;
    m.min_elevation_deg = s.min_elevation_deg;
    m.coarse_step_s = s.coarse_step_s;
    m.inputs = s.input_files;
    m.outputs = out.files();
    m.settings = std::move(settings);
    m.wall_clock_s = std::chrono::duration<double>(Clock::now() - started).count();
    out.write("manifest.json", manifest_json(m));
    return {out.dir(), out.files(), std::move(summary)};
}

}  // namespace

CommandResult cmd_access(const CommandOptions& o) {
    const auto started = Clock::now();
    const auto s = load_with_overrides(o);
    const auto ids = selected_constellations(s, o);
    auto set = compute_spectra(s, ids, {Backend::openmp, o.jobs});

    std::vector<std::string> station_ids;
    std::vector<std::string> satellite_ids;
    for (const auto& g : set.stations) {
        station_ids.push_back(g.id);
    }
    for (const auto& x : set.satellites) {
        satellite_ids.push_back(x.id);
    }
    check_filter(o.stations, station_ids, "station");
    check_filter(o.satellites, satellite_ids, "satellite");

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t g = 0; g < set.stations.size(); ++g) {
        for (std::size_t x = 0; x < set.satellites.size(); ++x) {
            if (!wanted(o.stations, set.stations[g].id) || !wanted(o.satellites, set.satellites[x].id)) {
                continue;
            }
            if (!o.all_pairs && set.stations[g].constellation_id != set.satellites[x].constellation_id) {
                continue;
            }
            pairs.emplace_back(g, x);
        }
    }
    if (pairs.empty()) {
        throw CrossReferenceError(fmt::format(
            "no (station, satellite) pair matches the filters{}; stations: {}; satellites: {}",
            o.all_pairs ? "" : " (pairs are intra-constellation unless --all-pairs)", join(station_ids),
            join(satellite_ids)));
    }

    OutputSet out(o.out_dir);
    std::ostringstream step;
    write_step_header(step);
    std::ostringstream all;
    write_windows_header(all);
    std::set<std::string> used;
    std::size_t windows = 0;
    for (const auto& [g, x] : pairs) {
        const auto spec = set.spectrum(g, x);
        windows += spec.windows.size();
        write_step_rows(step, spec, set.span);
        if (o.aggregate) {
            write_windows_rows(all, spec);
            continue;
        }
        std::string stem = safe_file_stem(spec.station_id) + "__" + safe_file_stem(spec.satellite_id);
        for (int k = 2; !used.insert(stem).second; ++k) {
            stem = fmt::format("{}__{}", safe_file_stem(spec.station_id) + "__" + safe_file_stem(spec.satellite_id), k);
        }
        std::ostringstream one;
        write_windows_header(one);
        write_windows_rows(one, spec);
        out.write(std::filesystem::path("windows") / (stem + ".csv"), one.str());
    }
    if (o.aggregate) {
        out.write("windows.csv", all.str());
    }
    out.write("step_function.csv", step.str());
    return finish("access", o, s, out, started,
                  {{"pairs", o.all_pairs ? "all" : "intra"}, {"aggregate", o.aggregate ? "true" : "false"}},
                  fmt::format("{} pairs, {} windows, {} files in {}", pairs.size(), windows, out.files().size() + 1,
                              o.out_dir.string()));
}

CommandResult cmd_intra(const CommandOptions& o) {
    const auto started = Clock::now();
    const auto s = load_with_overrides(o);
    const auto ids = selected_constellations(s, o);
    const auto set = compute_spectra(s, ids, {Backend::openmp, o.jobs});
    OutputSet out(o.out_dir);
    std::string summary;
    for (const auto& id : ids) {
        const auto r = run_intra(set, id);
        const auto stem = safe_file_stem(id);
        out.write("intra_" + stem + ".json", intra_json(r));
        std::ostringstream h;
        write_h_csv(h, r.h);
        out.write("H_" + stem + ".csv", h.str());
        summary += fmt::format("{}: dominant {}, isolated {}, lambda_max {}\n", id, r.ranking.dominant_id,
                               r.ranking.isolated_id, format_number(r.eigen.eigenvalues.front()));
    }
    return finish("intra", o, s, out, started, {}, summary);
}

CommandResult cmd_inter(const CommandOptions& o) {
    const auto started = Clock::now();
    const auto s = load_with_overrides(o);
    const auto ids = selected_constellations(s, o);
    const auto set = compute_spectra(s, ids, {Backend::openmp, o.jobs});
    const auto r = run_inter(set, ids, o.pmf);

    OutputSet out(o.out_dir);
    out.write("interaction.json", inter_json(r, o.pmf));
    std::ostringstream p;
    write_p_csv(p, r.p);
    out.write("P.csv", p.str());
    std::ostringstream pmf;
    write_pmf_header(pmf);
    std::ostringstream stats;
    write_pulse_stats_header(stats);
    for (const auto& pair : r.pairs) {
        write_pmf_rows(pmf, pair.pmf);
        write_pulse_stats_rows(stats, pair);
    }
    out.write("pmf.csv", pmf.str());
    out.write("pulse_stats.csv", stats.str());

    std::string summary = "P:\n" + p.str() + "eigenvalues:";
    for (const auto& g : r.p.eigen.values) {
        summary += fmt::format(" {}{:+}i", format_number(g.real()), g.imag());
    }
    summary += "\n";
    return finish("inter", o, s, out, started,
                  {{"pmf_bin_s", std::to_string(o.pmf.bin_s)},
                   {"pmf_pooling", o.pmf.pooling == PmfPooling::all_pairs ? "all_pairs" : "best_station"}},
                  summary);
}

}  // namespace tsa
