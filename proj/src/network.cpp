#include <tsa/network.hpp>

#include <tsa/errors.hpp>

#include <fmt/format.h>
#include <omp.h>

#include <exception>

namespace tsa {

TemporalSpectrum SpectrumSet::spectrum(std::size_t station, std::size_t satellite) const {
    TemporalSpectrum s;
    s.station_id = stations[station].id;
    s.station_constellation = stations[station].constellation_id;
    s.satellite_id = satellites[satellite].id;
    s.satellite_constellation = satellites[satellite].constellation_id;
    s.windows = at(station, satellite);
    return s;
}

std::vector<std::size_t> SpectrumSet::stations_of(std::string_view constellation_id) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < stations.size(); ++i) {
        if (stations[i].constellation_id == constellation_id) {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<std::size_t> SpectrumSet::satellites_of(std::string_view constellation_id) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < satellites.size(); ++i) {
        if (satellites[i].constellation_id == constellation_id) {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<NetworkSatellite> network_satellites(const Scenario& scenario) {
    std::vector<NetworkSatellite> out;
    for (const auto& c : scenario.constellations) {
        for (const auto& tle : c.satellites) {
            out.push_back({satellite_id(tle), c.id, tle});
        }
    }
    return out;
}

std::vector<GroundStation> network_stations(const Scenario& scenario) {
    std::vector<GroundStation> out;
    for (const auto& c : scenario.constellations) {
        out.insert(out.end(), c.stations.begin(), c.stations.end());
    }
    return out;
}

AccessOptions access_options(const Scenario& scenario) {
    return {scenario.min_elevation_deg, scenario.alpha_s, scenario.coarse_step_s};
}

int resolve_jobs(int jobs) {
    if (jobs < 0) {
        throw FormatError(fmt::format("jobs must be >= 0 (got {})", jobs));
    }
    return jobs == 0 ? omp_get_num_procs() : jobs;
}

namespace {

// All stations against one satellite; fills out[station].
void satellite_kernel(const std::vector<StationFrame>& frames, const std::vector<GroundStation>& stations,
                      const NetworkSatellite& sat, const TimeSpan& span, const AccessOptions& opt, bool exhaustive,
                      std::vector<AccessWindow>* out) {
    const Sgp4 prop(sat.tle);
    const std::int64_t n = sample_count(span.duration(), opt.alpha_s);
    const auto time_of = [&](std::int64_t i) { return span.start + Seconds{i * opt.alpha_s}; };

    std::vector<std::int64_t> grid;
    if (exhaustive) {
        grid.resize(static_cast<std::size_t>(n));
        for (std::int64_t i = 0; i < n; ++i) {
            grid[static_cast<std::size_t>(i)] = i;
        }
    } else {
        grid = coarse_indices(n, std::max(1, opt.coarse_step_s / opt.alpha_s));
    }

    // one propagation per grid sample, shared by every station
    std::vector<Vec3> positions(grid.size());
    try {
        for (std::size_t k = 0; k < grid.size(); ++k) {
            positions[k] = satellite_ecef(prop, time_of(grid[k]));
        }
    } catch (const DecayError& e) {
        throw DecayError(e.code(), fmt::format("satellite {}: {}", sat.id, e.what()));
    }

    std::vector<GridSample> at(grid.size());
    for (std::size_t g = 0; g < frames.size(); ++g) {
        const auto& frame = frames[g];
        for (std::size_t k = 0; k < grid.size(); ++k) {
            at[k] = evaluate_sample(frame, positions[k], opt.min_elevation_deg);
        }
        std::vector<IndexRun> runs;
        if (exhaustive) {
            runs = find_runs_exhaustive(n, [&](std::int64_t i) { return at[static_cast<std::size_t>(i)]; });
        } else {
            const auto eval = [&](std::int64_t i) {
                return evaluate_sample(frame, satellite_ecef(prop, time_of(i)), opt.min_elevation_deg);
            };
            try {
                runs = refine_runs(n, grid, at, eval);
            } catch (const DecayError& e) {
                throw DecayError(e.code(), fmt::format("{} / {}: {}", stations[g].id, sat.id, e.what()));
            }
        }
        out[g] = runs_to_windows(runs, span.start, opt.alpha_s);
    }
}

}  // namespace

SpectrumSet compute_spectra(std::vector<GroundStation> stations, std::vector<NetworkSatellite> satellites,
                            const TimeSpan& span, const AccessOptions& access, const ComputeOptions& compute) {
    validate_access(span, access);
    SpectrumSet set;
    set.span = span;
    set.options = access;
    set.stations = std::move(stations);
    set.satellites = std::move(satellites);
    set.windows.assign(set.stations.size() * set.satellites.size(), {});

    std::vector<StationFrame> frames;
    frames.reserve(set.stations.size());
    for (const auto& gs : set.stations) {
        frames.emplace_back(gs);
    }

    const auto n_sat = static_cast<std::int64_t>(set.satellites.size());
    const bool exhaustive = compute.backend == Backend::exhaustive;
    std::vector<std::exception_ptr> failures(set.satellites.size());
    const auto run = [&](std::int64_t s) {
        try {
            satellite_kernel(frames, set.stations, set.satellites[static_cast<std::size_t>(s)], span, access,
                             exhaustive, &set.windows[static_cast<std::size_t>(s) * set.stations.size()]);
        } catch (...) {
            failures[static_cast<std::size_t>(s)] = std::current_exception();
        }
    };

    if (compute.backend == Backend::openmp) {
        const int threads = resolve_jobs(compute.jobs);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (std::int64_t s = 0; s < n_sat; ++s) {
            run(s);
        }
    } else {
        for (std::int64_t s = 0; s < n_sat; ++s) {
            run(s);
        }
    }
    // the lowest-index failure is reported whatever the thread interleaving
    for (const auto& f : failures) {
        if (f) {
            std::rethrow_exception(f);
        }
    }
    return set;
}

SpectrumSet compute_spectra(const Scenario& scenario, const ComputeOptions& compute) {
    return compute_spectra(network_stations(scenario), network_satellites(scenario),
                           {scenario.span_start, scenario.span_end}, access_options(scenario), compute);
}

SpectrumSet compute_spectra(const Scenario& scenario, const std::vector<std::string>& constellation_ids,
                            const ComputeOptions& compute) {
    std::vector<GroundStation> stations;
    std::vector<NetworkSatellite> satellites;
    for (const auto& id : constellation_ids) {
        const auto& c = scenario.constellation(id);
        stations.insert(stations.end(), c.stations.begin(), c.stations.end());
        for (const auto& tle : c.satellites) {
            satellites.push_back({satellite_id(tle), c.id, tle});
        }
    }
    return compute_spectra(std::move(stations), std::move(satellites), {scenario.span_start, scenario.span_end},
                           access_options(scenario), compute);
}

}  // namespace tsa
