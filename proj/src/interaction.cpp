#include <tsa/interaction.hpp>

#include <tsa/errors.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <map>

namespace tsa {

std::int64_t count_pulses(const std::vector<std::uint8_t>& bits) {
    std::int64_t n = 0;
    std::uint8_t prev = 0;
    for (const auto b : bits) {
        if (b != 0 && prev == 0) {
            ++n;
        }
        prev = b;
    }
    return n;
}

std::int64_t count_pulses(const BinarySpectrum& bits) { return count_pulses(bits.bits); }

double pulse_density(std::int64_t count, const GlobalWindow& gw) {
    const auto d = gw.duration().count();
    if (d <= 0) {
        throw DivisionError(fmt::format("pulse density over a global window of {} s", d));
    }
    return static_cast<double>(count) / static_cast<double>(d);
}

std::int64_t PulsePmf::mode() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < support.size(); ++i) {
        if (counts[i] > counts[best]) {
            best = i;
        }
    }
    return support.empty() ? 0 : support[best];
}

double PulsePmf::probability(std::int64_t k) const {
    const auto it = std::lower_bound(support.begin(), support.end(), k);
    return it != support.end() && *it == k ? probabilities[static_cast<std::size_t>(it - support.begin())] : 0.0;
}

double PulsePmf::mean() const {
    double m = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i) {
        m += static_cast<double>(support[i]) * probabilities[i];
    }
    return m;
}

std::vector<std::int64_t> pulses_per_bin(const std::vector<AccessWindow>& windows, const GlobalWindow& gw,
                                         int alpha_s, std::int64_t bin_s) {
    const std::int64_t d = gw.duration().count();
    const std::int64_t width = bin_s > 0 ? bin_s : std::max<std::int64_t>(1, d);
    const std::int64_t bins = std::max<std::int64_t>(1, d / width);
    std::vector<std::int64_t> out(static_cast<std::size_t>(bins), 0);
    for (const auto off : pulse_start_offsets(windows, gw, alpha_s)) {
        const std::int64_t b = off / width;
        if (b < bins) {
            ++out[static_cast<std::size_t>(b)];
        }
    }
    return out;
}

PulsePmf pmf_from_counts(std::string from, std::string to, const std::vector<std::int64_t>& per_bin,
                         std::int64_t bin_s, std::int64_t bins) {
    PulsePmf pmf;
    pmf.from_constellation = std::move(from);
    pmf.to_constellation = std::move(to);
    pmf.bin_s = bin_s;
    pmf.bins = bins;
    std::map<std::int64_t, std::int64_t> hist;
    for (const auto k : per_bin) {
        ++hist[k];
    }
    if (hist.empty()) {
        hist[0] = 1;
    }
    for (const auto& [k, c] : hist) {
        pmf.support.push_back(k);
        pmf.counts.push_back(c);
        pmf.observations += c;
    }
    for (const auto c : pmf.counts) {
        pmf.probabilities.push_back(static_cast<double>(c) / static_cast<double>(pmf.observations));
    }
    return pmf;
}

PairInteraction analyze_pair(const SpectrumSet& set, const std::string& from, const std::string& to,
                             const PmfOptions& options) {
    const auto gi = set.stations_of(from);
    const auto xi = set.satellites_of(to);
    if (gi.empty()) {
        throw EmptyNetworkError(fmt::format("constellation {} has no stations", from));
    }
    if (xi.empty()) {
        throw EmptyNetworkError(fmt::format("constellation {} has no satellites", to));
    }
    PairInteraction out;
    out.from = from;
    out.to = to;

    std::vector<const std::vector<AccessWindow>*> spectra;
    for (const auto g : gi) {
        for (const auto x : xi) {
            spectra.push_back(&set.at(g, x));
        }
    }
    out.has_windows = std::any_of(spectra.begin(), spectra.end(), [](const auto* w) { return !w->empty(); });
    out.gw = out.has_windows ? global_window(spectra) : set.span;

    const int alpha = set.options.alpha_s;
    const std::int64_t d = out.gw.duration().count();
    const std::int64_t width = options.bin_s > 0 ? options.bin_s : std::max<std::int64_t>(1, d);
    const std::int64_t bins = std::max<std::int64_t>(1, d / width);

    std::vector<std::vector<std::int64_t>> binned(spectra.size());
    out.stats.resize(spectra.size());
    const auto n = static_cast<std::int64_t>(spectra.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t k = 0; k < n; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        const auto g = gi[uk / xi.size()];
        const auto x = xi[uk % xi.size()];
        auto& st = out.stats[uk];
        st.station_id = set.stations[g].id;
        st.satellite_id = set.satellites[x].id;
        st.pulse_count = clipped_pulse_count(*spectra[uk], out.gw, alpha);
        st.density = out.has_windows ? pulse_density(st.pulse_count, out.gw) : 0.0;
        binned[uk] = pulses_per_bin(*spectra[uk], out.gw, alpha, width);
    }

    out.station_totals.assign(gi.size(), 0);
    for (std::size_t k = 0; k < out.stats.size(); ++k) {
        out.station_totals[k / xi.size()] += out.stats[k].pulse_count;
    }
    // first station on ties
    out.strongest = static_cast<std::size_t>(
        std::max_element(out.station_totals.begin(), out.station_totals.end()) - out.station_totals.begin());
    out.strongest_count = out.station_totals[out.strongest];
    out.strongest_station_id = set.stations[gi[out.strongest]].id;

    std::vector<std::int64_t> pooled;
    for (std::size_t k = 0; k < binned.size(); ++k) {
        if (options.pooling == PmfPooling::best_station && k / xi.size() != out.strongest) {
            continue;
        }
        pooled.insert(pooled.end(), binned[k].begin(), binned[k].end());
    }
    out.pmf = pmf_from_counts(from, to, pooled, width, bins);
    return out;
}

PulsePmf pulse_pmf(const SpectrumSet& set, const std::string& from, const std::string& to,
                   const PmfOptions& options) {
    return analyze_pair(set, from, to, options).pmf;
}

std::int64_t strongest_station_count(const SpectrumSet& set, const std::string& from, const std::string& to) {
    return analyze_pair(set, from, to).strongest_count;
}

Matrix InteractionMatrix::as_matrix() const {
    Matrix m(size(), size());
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = 0; j < size(); ++j) {
            m(i, j) = static_cast<double>(at(i, j));
        }
    }
    return m;
}

GeneralEigen eigen_general(const InteractionMatrix& p) { return eigen_general(p.as_matrix()); }

InterResult run_inter(const SpectrumSet& set, const std::vector<std::string>& constellation_ids,
                      const PmfOptions& options) {
    if (constellation_ids.empty()) {
        throw EmptyNetworkError("no constellations to analyze");
    }
    InterResult out;
    out.p.constellation_ids = constellation_ids;
    for (const auto& from : constellation_ids) {
        for (const auto& to : constellation_ids) {
            out.pairs.push_back(analyze_pair(set, from, to, options));
            out.p.values.push_back(out.pairs.back().strongest_count);
        }
    }
    out.p.eigen = eigen_general(out.p);
    return out;
}

InteractionMatrix interaction_matrix(const SpectrumSet& set, const std::vector<std::string>& constellation_ids) {
    return run_inter(set, constellation_ids).p;
}

}  // namespace tsa
