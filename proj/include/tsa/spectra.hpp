#pragma once

#include <tsa/linalg.hpp>
#include <tsa/network.hpp>
#include <tsa/visibility.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace tsa {

// Stations x satellites matrix of total visibility seconds over the global
// window, each entry an exact multiple of alpha.
struct SpectrumMatrix {
    std::string constellation_id;
    std::vector<std::string> station_ids;    // rows
    std::vector<std::string> satellite_ids;  // columns
    std::vector<std::int64_t> values;        // row-major
    GlobalWindow global_window;
    int alpha_s = 1;

    std::size_t rows() const { return station_ids.size(); }
    std::size_t cols() const { return satellite_ids.size(); }
    std::int64_t at(std::size_t i, std::size_t x) const { return values[i * cols() + x]; }
    std::int64_t row_total(std::size_t i) const;
    Matrix as_matrix() const;
};

// windows[i * satellites + x] is the spectrum of (station i, satellite x).
// The global window is derived from exactly these spectra.
// Throws DimensionError, EmptyNetworkError.
SpectrumMatrix spectrum_matrix(std::string constellation_id, std::vector<std::string> station_ids,
                               std::vector<std::string> satellite_ids,
                               const std::vector<std::vector<AccessWindow>>& windows, int alpha_s);

// Same with an explicit global window.
SpectrumMatrix spectrum_matrix(std::string constellation_id, std::vector<std::string> station_ids,
                               std::vector<std::string> satellite_ids,
                               const std::vector<std::vector<AccessWindow>>& windows, const GlobalWindow& gw,
                               int alpha_s);

// Stations and satellites of one constellation taken from a computed set.
SpectrumMatrix spectrum_matrix(const SpectrumSet& set, const std::string& constellation_id);

// Reference: counts bits of the dense sampled bitstreams.
SpectrumMatrix spectrum_matrix_dense(const SpectrumSet& set, const std::string& constellation_id);

struct GramEigen {
    Matrix J;                     // seconds^2
    std::vector<double> eigenvalues;  // descending
    Matrix eigenvectors;          // orthonormal columns
    int sweeps = 0;
};

// J = H H^T, exact in 128-bit integers before conversion.
Matrix gram_matrix(const SpectrumMatrix& h);
// Same for real-valued H with extended-precision accumulation.
Matrix gram_matrix(const Matrix& h);

GramEigen gram(const SpectrumMatrix& h);
GramEigen gram(const Matrix& h);
GramEigen gram_from_j(Matrix j);

struct StationScore {
    std::string station_id;
    double score = 0.0;  // magnitude in the leading eigenspace
    double j_ii = 0.0;
};

struct StationRanking {
    std::size_t dominant = 0;
    std::size_t isolated = 0;
    std::string dominant_id;
    std::string isolated_id;
    std::vector<StationScore> scores;  // row order
    std::vector<std::size_t> order;    // most to least dominant
    std::size_t leading_multiplicity = 1;
};

// Eigenvalues within this relative distance of lambda_max span the leading
// eigenspace; a station's score is the norm of its row in that basis, which
// is the leading-eigenvector component magnitude when lambda_max is simple.
inline constexpr double kLeadingEigenTolerance = 1e-9;

// Throws DimensionError when ids and J disagree.
StationRanking rank_stations(const GramEigen& ge, const std::vector<std::string>& station_ids);

struct IntraResult {
    SpectrumMatrix h;
    GramEigen eigen;
    StationRanking ranking;
    double dense_memory_bits = 0.0;  // |G| |X| T_g / alpha
};

IntraResult run_intra(const SpectrumSet& set, const std::string& constellation_id);
IntraResult run_intra(const Scenario& scenario, const std::string& constellation_id,
                      const ComputeOptions& compute = {});

}  // namespace tsa
