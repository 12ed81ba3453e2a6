#include <tsa/visibility.hpp>

#include <tsa/errors.hpp>

#include <fmt/format.h>

namespace tsa {

std::int64_t sample_count(Seconds duration, int alpha_s) {
    if (duration.count() <= 0 || alpha_s < 1) {
        return 0;
    }
    return duration.count() / alpha_s;
}

std::vector<std::int64_t> coarse_indices(std::int64_t n, std::int64_t stride) {
    std::vector<std::int64_t> out;
    if (n <= 0) {
        return out;
    }
    stride = std::max<std::int64_t>(1, stride);
    for (std::int64_t i = 0; i < n; i += stride) {
        out.push_back(i);
    }
    if (out.back() != n - 1) {
        out.push_back(n - 1);
    }
    return out;
}

std::vector<AccessWindow> runs_to_windows(const std::vector<IndexRun>& runs, UtcSeconds origin, int alpha_s) {
    std::vector<AccessWindow> out;
    out.reserve(runs.size());
    for (const auto& r : runs) {
        out.push_back({origin + Seconds{r.begin * alpha_s}, origin + Seconds{r.end * alpha_s}});
    }
    return out;
}

GridSample evaluate_sample(const StationFrame& frame, const Vec3& sat_ecef, double min_elevation_deg) {
    const Vec3 rho = sat_ecef - frame.position();
    return {frame.visible(sat_ecef, min_elevation_deg), dot(rho, frame.up()) / norm(rho)};
}

Vec3 satellite_ecef(const Sgp4& sat, UtcSeconds t) {
    const Instant at{t};
    const auto state = sat.propagate_minutes(sat.minutes_since_epoch(at));
    return teme_to_ecef(state.position, gmst(at));
}

PairEvaluator::PairEvaluator(const GroundStation& gs, const Sgp4& sat, const TimeSpan& span,
                             const AccessOptions& options)
    : frame_(gs),
      sat_(sat),
      origin_(span.start),
      alpha_(options.alpha_s),
      mask_(options.min_elevation_deg),
      n_(sample_count(span.duration(), options.alpha_s)) {}

GridSample PairEvaluator::operator()(std::int64_t n) const {
    return evaluate_sample(frame_, satellite_ecef(sat_, origin_ + Seconds{n * alpha_}), mask_);
}

void validate_access(const TimeSpan& span, const AccessOptions& options) {
    if (options.alpha_s < 1) {
        throw FormatError(fmt::format("alpha must be >= 1 s (got {})", options.alpha_s));
    }
    if (options.coarse_step_s < 1) {
        throw FormatError(fmt::format("coarse step must be >= 1 s (got {})", options.coarse_step_s));
    }
    if (span.end <= span.start) {
        throw FormatError("span end must be after span start");
    }
}

namespace {

template <class Search>
TemporalSpectrum single_pair(const GroundStation& gs, const TleRecord& tle, const TimeSpan& span,
                             const AccessOptions& options, Search&& search) {
    validate_access(span, options);
    TemporalSpectrum out;
    out.station_id = gs.id;
    out.satellite_id = satellite_id(tle);
    out.station_constellation = gs.constellation_id;
    const Sgp4 sat(tle);
    const PairEvaluator eval(gs, sat, span, options);
    try {
        out.windows = runs_to_windows(search(eval), span.start, options.alpha_s);
    } catch (const DecayError& e) {
        throw DecayError(e.code(), fmt::format("{} / {}: {}", gs.id, out.satellite_id, e.what()));
    }
    return out;
}

}  // namespace

TemporalSpectrum access_windows(const GroundStation& gs, const TleRecord& sat, const TimeSpan& span,
                                const AccessOptions& options) {
    const std::int64_t stride = std::max(1, options.coarse_step_s / std::max(1, options.alpha_s));
    return single_pair(gs, sat, span, options,
                       [&](const PairEvaluator& e) { return find_runs(e.size(), stride, e); });
}

TemporalSpectrum access_windows_exhaustive(const GroundStation& gs, const TleRecord& sat, const TimeSpan& span,
                                           const AccessOptions& options) {
    return single_pair(gs, sat, span, options,
                       [&](const PairEvaluator& e) { return find_runs_exhaustive(e.size(), e); });
}

GlobalWindow global_window(const std::vector<const std::vector<AccessWindow>*>& spectra) {
    bool any = false;
    GlobalWindow gw;
    for (const auto* windows : spectra) {
        if (windows == nullptr || windows->empty()) {
            continue;
        }
        if (!any) {
            gw = {windows->front().start, windows->back().end};
            any = true;
        } else {
            gw.start = std::min(gw.start, windows->front().start);
            gw.end = std::max(gw.end, windows->back().end);
        }
    }
    if (!any) {
        throw EmptyNetworkError("no access window in any spectrum: no network exists in the span");
    }
    return gw;
}

GlobalWindow global_window(const std::vector<TemporalSpectrum>& spectra) {
    std::vector<const std::vector<AccessWindow>*> ptrs;
    ptrs.reserve(spectra.size());
    for (const auto& s : spectra) {
        ptrs.push_back(&s.windows);
    }
    return global_window(ptrs);
}

std::vector<AccessWindow> clip(const std::vector<AccessWindow>& windows, const GlobalWindow& gw) {
    std::vector<AccessWindow> out;
    for (const auto& w : windows) {
        const auto s = std::max(w.start, gw.start);
        const auto e = std::min(w.end, gw.end);
        if (e > s) {
            out.push_back({s, e});
        }
    }
    return out;
}

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
    // b > 0, a >= 0
    return (a + b - 1) / b;
}

// Sample indices [first, last) of gw that fall inside [s, e), s >= gw.start.
std::pair<std::int64_t, std::int64_t> sample_range(const AccessWindow& w, const GlobalWindow& gw, int alpha_s) {
    const std::int64_t first = ceil_div((w.start - gw.start).count(), alpha_s);
    const std::int64_t last = ceil_div((w.end - gw.start).count(), alpha_s);
    return {first, last};
}

}  // namespace

BinarySpectrum sample(const std::vector<AccessWindow>& windows, const GlobalWindow& gw, int alpha_s) {
    if (alpha_s < 1) {
        throw FormatError(fmt::format("alpha must be >= 1 s (got {})", alpha_s));
    }
    BinarySpectrum out;
    out.origin = gw.start;
    out.alpha_s = alpha_s;
    const auto total = gw.duration().count();
    out.bits.assign(static_cast<std::size_t>(total > 0 ? ceil_div(total, alpha_s) : 0), 0);
    for (const auto& w : clip(windows, gw)) {
        const auto [first, last] = sample_range(w, gw, alpha_s);
        for (auto n = first; n < last; ++n) {
            out.bits[static_cast<std::size_t>(n)] = 1;
        }
    }
    return out;
}

BinarySpectrum sample(const TemporalSpectrum& spectrum, const GlobalWindow& gw, int alpha_s) {
    return sample(spectrum.windows, gw, alpha_s);
}

std::int64_t clipped_sample_count(const std::vector<AccessWindow>& windows, const GlobalWindow& gw, int alpha_s) {
    std::int64_t count = 0;
    for (const auto& w : clip(windows, gw)) {
        const auto [first, last] = sample_range(w, gw, alpha_s);
        count += std::max<std::int64_t>(0, last - first);
    }
    return count;
}

std::vector<std::int64_t> pulse_start_offsets(const std::vector<AccessWindow>& windows, const GlobalWindow& gw,
                                              int alpha_s) {
    std::vector<std::int64_t> out;
    std::int64_t prev_last = -1;
    for (const auto& w : clip(windows, gw)) {
        const auto [first, last] = sample_range(w, gw, alpha_s);
        if (last <= first) {
            continue;
        }
        // windows closer than one sample merge into a single run of bits
        if (first != prev_last) {
            out.push_back(first * alpha_s);
        }
        prev_last = last;
    }
    return out;
}

std::int64_t clipped_pulse_count(const std::vector<AccessWindow>& windows, const GlobalWindow& gw, int alpha_s) {
    return static_cast<std::int64_t>(pulse_start_offsets(windows, gw, alpha_s).size());
}

std::vector<AccessWindow> decode_runs(const BinarySpectrum& s) {
    std::vector<AccessWindow> out;
    const auto n = static_cast<std::int64_t>(s.bits.size());
    std::int64_t begin = -1;
    for (std::int64_t i = 0; i <= n; ++i) {
        const bool v = i < n && s.bits[static_cast<std::size_t>(i)] != 0;
        if (v && begin < 0) {
            begin = i;
        } else if (!v && begin >= 0) {
            out.push_back({s.origin + Seconds{begin * s.alpha_s}, s.origin + Seconds{i * s.alpha_s}});
            begin = -1;
        }
    }
    return out;
}

}  // namespace tsa
