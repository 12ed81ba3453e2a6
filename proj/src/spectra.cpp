#include <tsa/spectra.hpp>

#include <tsa/errors.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tsa {

std::int64_t SpectrumMatrix::row_total(std::size_t i) const {
    std::int64_t s = 0;
    for (std::size_t x = 0; x < cols(); ++x) {
        s += at(i, x);
    }
    return s;
}

Matrix SpectrumMatrix::as_matrix() const {
    Matrix m(rows(), cols());
    for (std::size_t i = 0; i < rows(); ++i) {
        for (std::size_t x = 0; x < cols(); ++x) {
            m(i, x) = static_cast<double>(at(i, x));
        }
    }
    return m;
}

namespace {

void check_dimensions(const std::vector<std::string>& stations, const std::vector<std::string>& satellites,
                      const std::vector<std::vector<AccessWindow>>& windows) {
    if (windows.size() != stations.size() * satellites.size()) {
        throw DimensionError(fmt::format("{} spectra given for {} stations x {} satellites", windows.size(),
                                         stations.size(), satellites.size()));
    }
}

}  // namespace

SpectrumMatrix spectrum_matrix(std::string constellation_id, std::vector<std::string> station_ids,
                               std::vector<std::string> satellite_ids,
                               const std::vector<std::vector<AccessWindow>>& windows, const GlobalWindow& gw,
                               int alpha_s) {
    check_dimensions(station_ids, satellite_ids, windows);
    if (alpha_s < 1) {
        throw FormatError(fmt::format("alpha must be >= 1 s (got {})", alpha_s));
    }
    SpectrumMatrix h;
    h.constellation_id = std::move(constellation_id);
    h.station_ids = std::move(station_ids);
    h.satellite_ids = std::move(satellite_ids);
    h.global_window = gw;
    h.alpha_s = alpha_s;
    h.values.assign(windows.size(), 0);
    const auto rows = static_cast<std::int64_t>(h.rows());
    const std::size_t cols = h.cols();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < rows; ++i) {
        for (std::size_t x = 0; x < cols; ++x) {
            const std::size_t k = static_cast<std::size_t>(i) * cols + x;
            h.values[k] = clipped_sample_count(windows[k], gw, alpha_s) * alpha_s;
        }
    }
    return h;
}

SpectrumMatrix spectrum_matrix(std::string constellation_id, std::vector<std::string> station_ids,
                               std::vector<std::string> satellite_ids,
                               const std::vector<std::vector<AccessWindow>>& windows, int alpha_s) {
    check_dimensions(station_ids, satellite_ids, windows);
    std::vector<const std::vector<AccessWindow>*> ptrs;
    ptrs.reserve(windows.size());
    for (const auto& w : windows) {
        ptrs.push_back(&w);
    }
    const auto gw = global_window(ptrs);
    return spectrum_matrix(std::move(constellation_id), std::move(station_ids), std::move(satellite_ids), windows,
                           gw, alpha_s);
}

namespace {

struct Slice {
    std::vector<std::string> station_ids;
    std::vector<std::string> satellite_ids;
    std::vector<std::vector<AccessWindow>> windows;
};

Slice slice(const SpectrumSet& set, const std::string& constellation_id) {
    Slice s;
    const auto gi = set.stations_of(constellation_id);
    const auto xi = set.satellites_of(constellation_id);
    for (const auto g : gi) {
        s.station_ids.push_back(set.stations[g].id);
    }
    for (const auto x : xi) {
        s.satellite_ids.push_back(set.satellites[x].id);
    }
    for (const auto g : gi) {
        for (const auto x : xi) {
            s.windows.push_back(set.at(g, x));
        }
    }
    return s;
}

}  // namespace

SpectrumMatrix spectrum_matrix(const SpectrumSet& set, const std::string& constellation_id) {
    auto s = slice(set, constellation_id);
    return spectrum_matrix(constellation_id, std::move(s.station_ids), std::move(s.satellite_ids), s.windows,
                           set.options.alpha_s);
}

SpectrumMatrix spectrum_matrix_dense(const SpectrumSet& set, const std::string& constellation_id) {
    auto s = slice(set, constellation_id);
    std::vector<TemporalSpectrum> spectra(s.windows.size());
    for (std::size_t k = 0; k < s.windows.size(); ++k) {
        spectra[k].windows = s.windows[k];
    }
    const auto gw = global_window(spectra);
    const int alpha = set.options.alpha_s;
    SpectrumMatrix h;
    h.constellation_id = constellation_id;
    h.station_ids = std::move(s.station_ids);
    h.satellite_ids = std::move(s.satellite_ids);
    h.global_window = gw;
    h.alpha_s = alpha;
    for (const auto& sp : spectra) {
        const auto bits = sample(sp, gw, alpha);
        h.values.push_back(std::count(bits.bits.begin(), bits.bits.end(), std::uint8_t{1}) * alpha);
    }
    return h;
}

Matrix gram_matrix(const SpectrumMatrix& h) {
    const std::size_t g = h.rows();
    Matrix j(g, g);
    for (std::size_t a = 0; a < g; ++a) {
        for (std::size_t b = a; b < g; ++b) {
            __int128 s = 0;
            for (std::size_t x = 0; x < h.cols(); ++x) {
                s += static_cast<__int128>(h.at(a, x)) * h.at(b, x);
            }
            const auto v = static_cast<double>(s);
            j(a, b) = v;
            j(b, a) = v;
        }
    }
    return j;
}

Matrix gram_matrix(const Matrix& h) {
    const std::size_t g = h.rows();
    Matrix j(g, g);
    for (std::size_t a = 0; a < g; ++a) {
        for (std::size_t b = a; b < g; ++b) {
            long double s = 0.0L;
            for (std::size_t x = 0; x < h.cols(); ++x) {
                s += static_cast<long double>(h(a, x)) * h(b, x);
            }
            const auto v = static_cast<double>(s);
            j(a, b) = v;
            j(b, a) = v;
        }
    }
    return j;
}

GramEigen gram_from_j(Matrix j) {
    if (j.empty()) {
        throw DimensionError("spectrum matrix has no stations");
    }
    auto eig = jacobi_eigen(j);
    return {std::move(j), std::move(eig.values), std::move(eig.vectors), eig.sweeps};
}

GramEigen gram(const SpectrumMatrix& h) { return gram_from_j(gram_matrix(h)); }

GramEigen gram(const Matrix& h) { return gram_from_j(gram_matrix(h)); }

StationRanking rank_stations(const GramEigen& ge, const std::vector<std::string>& station_ids) {
    const std::size_t n = station_ids.size();
    if (n == 0 || ge.J.rows() != n || ge.eigenvalues.size() != n) {
        throw DimensionError(fmt::format("ranking {} stations against a {}x{} Gram matrix", n, ge.J.rows(),
                                         ge.J.cols()));
    }
    StationRanking r;
    const double lead = ge.eigenvalues[0];
    std::size_t mult = 1;
    while (mult < n && lead - ge.eigenvalues[mult] <= kLeadingEigenTolerance * std::fabs(lead)) {
        ++mult;
    }
    r.leading_multiplicity = mult;
    std::vector<long long> quantized(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < mult; ++k) {
            s += ge.eigenvectors(i, k) * ge.eigenvectors(i, k);
        }
        const double score = mult == 1 ? std::fabs(ge.eigenvectors(i, 0)) : std::sqrt(s);
        r.scores.push_back({station_ids[i], score, ge.J(i, i)});
        quantized[i] = std::llround(score * 1e9);
    }
    r.order.resize(n);
    std::iota(r.order.begin(), r.order.end(), std::size_t{0});
    std::stable_sort(r.order.begin(), r.order.end(), [&](std::size_t a, std::size_t b) {
        if (quantized[a] != quantized[b]) {
            return quantized[a] > quantized[b];
        }
        return r.scores[a].j_ii > r.scores[b].j_ii;
    });
    r.dominant = r.order.front();
    r.isolated = r.order.back();
    r.dominant_id = station_ids[r.dominant];
    r.isolated_id = station_ids[r.isolated];
    return r;
}

IntraResult run_intra(const SpectrumSet& set, const std::string& constellation_id) {
    IntraResult out;
    out.h = spectrum_matrix(set, constellation_id);
    if (out.h.rows() == 0) {
        throw EmptyNetworkError(fmt::format("constellation {} has no stations", constellation_id));
    }
    out.eigen = gram(out.h);
    out.ranking = rank_stations(out.eigen, out.h.station_ids);
    out.dense_memory_bits = static_cast<double>(out.h.rows()) * static_cast<double>(out.h.cols()) *
                            static_cast<double>(out.h.global_window.duration().count()) / out.h.alpha_s;
    return out;
}

IntraResult run_intra(const Scenario& scenario, const std::string& constellation_id, const ComputeOptions& compute) {
    return run_intra(compute_spectra(scenario, {constellation_id}, compute), constellation_id);
}

}  // namespace tsa
