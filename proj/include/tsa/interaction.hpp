#pragma once

#include <tsa/linalg.hpp>
#include <tsa/network.hpp>
#include <tsa/visibility.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace tsa {

// Positive 0 -> 1 transitions with a leading 0 before the first bit.
std::int64_t count_pulses(const std::vector<std::uint8_t>& bits);
std::int64_t count_pulses(const BinarySpectrum& bits);

// Pulses per second over the global window. Throws DivisionError when the
// window has no duration.
double pulse_density(std::int64_t count, const GlobalWindow& gw);

struct PulseStats {
    std::string station_id;
    std::string satellite_id;
    std::int64_t pulse_count = 0;
    double density = 0.0;  // pulses/s
};

enum class PmfPooling {
    all_pairs,     // every (station, satellite) pair of the constellation pair
    best_station,  // only the pairs of the strongest station
};

struct PmfOptions {
    std::int64_t bin_s = 0;  // 0: one bin spanning the whole global window
    PmfPooling pooling = PmfPooling::all_pairs;
};

struct PulsePmf {
    std::string from_constellation;
    std::string to_constellation;
    std::int64_t bin_s = 0;       // bin width actually used
    std::int64_t bins = 0;        // whole bins per pair
    std::int64_t observations = 0;
    std::vector<std::int64_t> support;   // ascending k with nonzero count
    std::vector<std::int64_t> counts;
    std::vector<double> probabilities;

    // Smallest k of highest probability.
    std::int64_t mode() const;
    double probability(std::int64_t k) const;
    double mean() const;
};

// Pulse starts of one spectrum per whole bin of the global window:
// max(1, floor(duration / bin)) bins of width bin (bin = duration when 0).
// Starts in a trailing partial bin are not counted.
std::vector<std::int64_t> pulses_per_bin(const std::vector<AccessWindow>& windows, const GlobalWindow& gw,
                                         int alpha_s, std::int64_t bin_s);

// Normalized histogram; an empty sample gives {0: 1}.
PulsePmf pmf_from_counts(std::string from, std::string to, const std::vector<std::int64_t>& per_bin,
                         std::int64_t bin_s, std::int64_t bins);

// Everything about one ordered constellation pair (stations of `from`
// against satellites of `to`), over the pair-scoped global window.
struct PairInteraction {
    std::string from;
    std::string to;
    bool has_windows = false;  // false: no visibility at all; gw is then the span
    GlobalWindow gw;
    std::vector<PulseStats> stats;          // station-major
    std::vector<std::int64_t> station_totals;
    std::size_t strongest = 0;              // index into station_totals, first on ties
    std::string strongest_station_id;
    std::int64_t strongest_count = 0;       // P_ij
    PulsePmf pmf;
};

// Throws EmptyNetworkError when `from` has no stations or `to` no satellites.
PairInteraction analyze_pair(const SpectrumSet& set, const std::string& from, const std::string& to,
                             const PmfOptions& options = {});

PulsePmf pulse_pmf(const SpectrumSet& set, const std::string& from, const std::string& to,
                   const PmfOptions& options = {});
std::int64_t strongest_station_count(const SpectrumSet& set, const std::string& from, const std::string& to);

struct InteractionMatrix {
    std::vector<std::string> constellation_ids;
    std::vector<std::int64_t> values;  // row-major, P[from][to]
    GeneralEigen eigen;

    std::size_t size() const { return constellation_ids.size(); }
    std::int64_t at(std::size_t i, std::size_t j) const { return values[i * size() + j]; }
    Matrix as_matrix() const;
};

struct InterResult {
    InteractionMatrix p;
    std::vector<PairInteraction> pairs;  // row-major like p
};

// Throws EmptyNetworkError for an empty constellation list.
InterResult run_inter(const SpectrumSet& set, const std::vector<std::string>& constellation_ids,
                      const PmfOptions& options = {});

InteractionMatrix interaction_matrix(const SpectrumSet& set, const std::vector<std::string>& constellation_ids);

GeneralEigen eigen_general(const InteractionMatrix& p);

}  // namespace tsa
