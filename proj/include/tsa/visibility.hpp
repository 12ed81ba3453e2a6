#pragma once

#include <tsa/catalog.hpp>
#include <tsa/frames.hpp>
#include <tsa/sgp4.hpp>
#include <tsa/time.hpp>

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace tsa {

struct TimeSpan {
    UtcSeconds start{};
    UtcSeconds end{};

    Seconds duration() const { return end - start; }
    bool operator==(const TimeSpan&) const = default;
};

// Half-open visibility interval [start, end).
struct AccessWindow {
    UtcSeconds start{};
    UtcSeconds end{};

    Seconds duration() const { return end - start; }
    bool operator==(const AccessWindow&) const = default;
};

struct TemporalSpectrum {
    std::string station_id;
    std::string satellite_id;
    std::string station_constellation;
    std::string satellite_constellation;
    std::vector<AccessWindow> windows;  // sorted, disjoint, non-adjacent
};

using GlobalWindow = TimeSpan;

struct BinarySpectrum {
    UtcSeconds origin{};
    int alpha_s = 1;
    std::vector<std::uint8_t> bits;
};

struct AccessOptions {
    double min_elevation_deg = 0.0;
    int alpha_s = 1;
    int coarse_step_s = 30;
};

// ---------------------------------------------------------------------------
// Sample grid search
//
// The span is sampled at t_n = start + n*alpha for n in [0, N) with
// N = floor(duration / alpha); a sample stands for [t_n, t_n + alpha). A
// window is a maximal run of visible samples. The fast search evaluates every
// `stride`-th sample, bisects each change of state down to one sample, and
// looks for passes that fit between two coarse samples by maximizing the
// score around every coarse local maximum.

struct GridSample {
    bool visible = false;
    double score = 0.0;  // increases with elevation; used only to locate peaks
};

struct IndexRun {
    std::int64_t begin = 0;
    std::int64_t end = 0;  // exclusive
    bool operator==(const IndexRun&) const = default;
};

std::int64_t sample_count(Seconds duration, int alpha_s);

// 0, stride, 2*stride, ..., and always n-1.
std::vector<std::int64_t> coarse_indices(std::int64_t n, std::int64_t stride);

template <class Eval>
std::vector<IndexRun> refine_runs(std::int64_t n, const std::vector<std::int64_t>& coarse,
                                  const std::vector<GridSample>& at_coarse, Eval&& eval) {
    std::vector<IndexRun> runs;
    if (n <= 0) {
        return runs;
    }
    const std::size_t m = coarse.size();

    // Visible indices found by the peak search inside invisible stretches.
    std::vector<std::pair<std::size_t, std::int64_t>> extra;  // (coarse slot k, index p) with c_k < p < c_k+1
    for (std::size_t k = 0; k < m; ++k) {
        if (at_coarse[k].visible) {
            continue;
        }
        const bool left_ok = k == 0 || at_coarse[k - 1].score <= at_coarse[k].score;
        const bool right_ok = k + 1 == m || at_coarse[k + 1].score <= at_coarse[k].score;
        if (!left_ok || !right_ok) {
            continue;
        }
        if ((k > 0 && at_coarse[k - 1].visible) || (k + 1 < m && at_coarse[k + 1].visible)) {
            continue;  // the neighbouring run's bisection handles it
        }
        std::int64_t lo = k == 0 ? coarse[k] : coarse[k - 1];
        std::int64_t hi = k + 1 == m ? coarse[k] : coarse[k + 1];
        // integer ternary search for the maximum score on [lo, hi]
        while (hi - lo > 2) {
            const std::int64_t m1 = lo + (hi - lo) / 3;
            const std::int64_t m2 = hi - (hi - lo) / 3;
            if (eval(m1).score < eval(m2).score) {
                lo = m1 + 1;
            } else {
                hi = m2 - 1;
            }
        }
        for (std::int64_t p = lo; p <= hi; ++p) {
            if (p != coarse[k] && eval(p).visible) {
                const std::size_t slot = p < coarse[k] ? k - 1 : k;
                extra.emplace_back(slot, p);
                break;
            }
        }
    }
    std::sort(extra.begin(), extra.end());

    // first index in (a, b] whose state equals state(b), given state(a) != state(b)
    const auto transition = [&](std::int64_t a, std::int64_t b, bool state_b) {
        while (b - a > 1) {
            const std::int64_t mid = a + (b - a) / 2;
            if (eval(mid).visible == state_b) {
                b = mid;
            } else {
                a = mid;
            }
        }
        return b;
    };

    bool open = at_coarse[0].visible;
    std::int64_t run_begin = 0;
    std::size_t e = 0;
    for (std::size_t k = 0; k + 1 < m; ++k) {
        const std::int64_t a = coarse[k];
        const std::int64_t b = coarse[k + 1];
        const bool va = at_coarse[k].visible;
        const bool vb = at_coarse[k + 1].visible;
        if (va != vb) {
            const std::int64_t t = transition(a, b, vb);
            if (vb) {
                run_begin = t;
                open = true;
            } else {
                runs.push_back({run_begin, t});
                open = false;
            }
        } else if (!va) {
            while (e < extra.size() && extra[e].first == k) {
                const std::int64_t p = extra[e].second;
                if (!runs.empty() && p < runs.back().end) {
                    ++e;  // same pass reached from two coarse maxima
                    continue;
                }
                runs.push_back({transition(a, p, true), transition(p, b, false)});
                ++e;
            }
        }
    }
    if (open) {
        runs.push_back({run_begin, n});
    }
    return runs;
}

template <class Eval>
std::vector<IndexRun> find_runs(std::int64_t n, std::int64_t stride, Eval&& eval) {
    const auto coarse = coarse_indices(n, stride);
    std::vector<GridSample> at;
    at.reserve(coarse.size());
    for (const auto c : coarse) {
        at.push_back(eval(c));
    }
    return refine_runs(n, coarse, at, eval);
}

template <class Eval>
std::vector<IndexRun> find_runs_exhaustive(std::int64_t n, Eval&& eval) {
    std::vector<IndexRun> runs;
    std::int64_t begin = -1;
    for (std::int64_t i = 0; i < n; ++i) {
        const bool v = eval(i).visible;
        if (v && begin < 0) {
            begin = i;
        } else if (!v && begin >= 0) {
            runs.push_back({begin, i});
            begin = -1;
        }
    }
    if (begin >= 0) {
        runs.push_back({begin, n});
    }
    return runs;
}

std::vector<AccessWindow> runs_to_windows(const std::vector<IndexRun>& runs, UtcSeconds origin, int alpha_s);

// ---------------------------------------------------------------------------
// Single pair

// Station/satellite geometry at grid sample n.
class PairEvaluator {
public:
    PairEvaluator(const GroundStation& gs, const Sgp4& sat, const TimeSpan& span, const AccessOptions& options);

    GridSample operator()(std::int64_t n) const;
    std::int64_t size() const { return n_; }

private:
    StationFrame frame_;
    const Sgp4& sat_;
    UtcSeconds origin_;
    int alpha_;
    double mask_;
    std::int64_t n_;
};

// Geometry of one sample: visibility predicate plus sin(elevation) score.
GridSample evaluate_sample(const StationFrame& frame, const Vec3& sat_ecef, double min_elevation_deg);

// Satellite ECEF position at time t.
Vec3 satellite_ecef(const Sgp4& sat, UtcSeconds t);

void validate_access(const TimeSpan& span, const AccessOptions& options);

// Throws DecayError (with the pair named) and FormatError for bad options.
TemporalSpectrum access_windows(const GroundStation& gs, const TleRecord& sat, const TimeSpan& span,
                                const AccessOptions& options);

// Reference: every grid sample evaluated.
TemporalSpectrum access_windows_exhaustive(const GroundStation& gs, const TleRecord& sat, const TimeSpan& span,
                                           const AccessOptions& options);

// ---------------------------------------------------------------------------
// Global window and discretization

// Earliest first-window start to latest last-window end over the spectra.
// Throws EmptyNetworkError when no spectrum has a window.
GlobalWindow global_window(const std::vector<const std::vector<AccessWindow>*>& spectra);
GlobalWindow global_window(const std::vector<TemporalSpectrum>& spectra);

std::vector<AccessWindow> clip(const std::vector<AccessWindow>& windows, const GlobalWindow& gw);

// Bit n is set iff gw.start + n*alpha lies in a window clipped to gw;
// ceil(duration / alpha) bits.
BinarySpectrum sample(const std::vector<AccessWindow>& windows, const GlobalWindow& gw, int alpha_s);
BinarySpectrum sample(const TemporalSpectrum& spectrum, const GlobalWindow& gw, int alpha_s);

// Number of set bits of sample(), computed from the intervals directly.
std::int64_t clipped_sample_count(const std::vector<AccessWindow>& windows, const GlobalWindow& gw, int alpha_s);

// Number of clipped windows holding at least one sample, i.e. the number of
// 1-runs of sample(); computed from the intervals directly.
std::int64_t clipped_pulse_count(const std::vector<AccessWindow>& windows, const GlobalWindow& gw, int alpha_s);

// Offsets from gw.start (seconds, multiples of alpha) of the first sample of
// every 1-run of sample(); computed from the intervals directly.
std::vector<std::int64_t> pulse_start_offsets(const std::vector<AccessWindow>& windows, const GlobalWindow& gw,
                                              int alpha_s);

// Maximal 1-runs back to windows [origin + a*alpha, origin + b*alpha).
std::vector<AccessWindow> decode_runs(const BinarySpectrum& bits);

}  // namespace tsa
