#pragma once

#include <tsa/catalog.hpp>
#include <tsa/visibility.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace tsa {

enum class Backend {
    serial,      // coarse scan + bisection, one thread
    openmp,      // same kernel, satellites spread over threads
    exhaustive,  // every grid sample evaluated; reference only
};

struct ComputeOptions {
    Backend backend = Backend::openmp;
    int jobs = 0;  // 0: all processors
};

struct NetworkSatellite {
    std::string id;
    std::string constellation_id;
    TleRecord tle;
};

// Temporal spectra of every (station, satellite) pair of a network.
struct SpectrumSet {
    TimeSpan span;
    AccessOptions options;
    std::vector<GroundStation> stations;
    std::vector<NetworkSatellite> satellites;
    std::vector<std::vector<AccessWindow>> windows;  // [satellite * stations.size() + station]

    const std::vector<AccessWindow>& at(std::size_t station, std::size_t satellite) const {
        return windows[satellite * stations.size() + station];
    }
    TemporalSpectrum spectrum(std::size_t station, std::size_t satellite) const;

    // Indices of the stations / satellites owned by a constellation.
    std::vector<std::size_t> stations_of(std::string_view constellation_id) const;
    std::vector<std::size_t> satellites_of(std::string_view constellation_id) const;
};

// Satellites of a scenario in declaration order, tagged with their constellation.
std::vector<NetworkSatellite> network_satellites(const Scenario& scenario);
std::vector<GroundStation> network_stations(const Scenario& scenario);

// All pairs. Results do not depend on the backend's thread count; the
// exhaustive backend is the reference for the other two.
SpectrumSet compute_spectra(std::vector<GroundStation> stations, std::vector<NetworkSatellite> satellites,
                            const TimeSpan& span, const AccessOptions& access, const ComputeOptions& compute = {});

SpectrumSet compute_spectra(const Scenario& scenario, const ComputeOptions& compute = {});

// Only the stations and satellites of the listed constellations.
SpectrumSet compute_spectra(const Scenario& scenario, const std::vector<std::string>& constellation_ids,
                            const ComputeOptions& compute = {});

AccessOptions access_options(const Scenario& scenario);

int resolve_jobs(int jobs);

}  // namespace tsa
