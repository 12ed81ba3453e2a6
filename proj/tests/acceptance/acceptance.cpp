// Acceptance runner: one PASS/FAIL line per criterion.
//
//   tsa_acceptance [--only 1,2,5a,...] [--data DIR] [--sgp4 DIR] [--work DIR]
//
// Criterion ids: 1 2 3 4 5a 5b 5c 5d 6. Exit status is 0 only when every
// selected check passes.

#include <tsa/commands.hpp>
#include <tsa/errors.hpp>
#include <tsa/frames.hpp>
#include <tsa/interaction.hpp>
#include <tsa/sgp4.hpp>
#include <tsa/spectra.hpp>
#include <tsa/visibility.hpp>
#include <tsa/walker.hpp>

#include "../support/sgp4_vectors.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace tsa;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// ---------------------------------------------------------------------------
// 1. SGP4 verification vectors

Outcome criterion_sgp4(const std::string& dir) {
    const auto cases = testing::load_verification_set(dir);
    double worst = 0.0;
    int compared = 0;
    int skipped = 0;
    for (const auto& c : cases) {
        const Sgp4 prop(c.tle);
        if (prop.init_error() != 0) {
            ++skipped;  // the reference prints no states for this element set either
            continue;
        }
        for (const auto& s : c.states) {
            const auto r = prop.evaluate(s.minutes);
            if (r.error != 0) {
                return {false, fmt::format("sat {} t={} min: error {}", c.tle.catalog_number, s.minutes, r.error)};
            }
            worst = std::max({worst, std::fabs(r.position.x - s.r[0]), std::fabs(r.position.y - s.r[1]),
                              std::fabs(r.position.z - s.r[2])});
            ++compared;
        }
    }
    return {worst < 1e-3 && compared > 0,
            fmt::format("{} sets, {} states, max axis error {:.3e} km, {} set(s) without reference states",
                        cases.size(), compared, worst, skipped)};
}

// ---------------------------------------------------------------------------
// 2. Coarse scan + bisection vs 1 s elevation sampling

// Independent of the visibility module: elevation straight from SGP4 and
// the frame transforms, every second.
std::vector<AccessWindow> oracle_windows(const GroundStation& gs, const TleRecord& tle, const TimeSpan& span,
                                         double mask_deg) {
    const auto site = station_ecef(gs);
    const Sgp4 prop(tle);
    std::vector<AccessWindow> out;
    bool open = false;
    for (auto t = span.start; t < span.end; t += Seconds{1}) {
        const auto sat = teme_to_ecef(prop.propagate(Instant{t}));
        const bool vis = elevation_deg(site.position, sat.position) >= mask_deg;
        if (vis && !open) {
            out.push_back({t, t});
        }
        if (vis) {
            out.back().end = t + Seconds{1};
        }
        open = vis;
    }
    return out;
}

Outcome criterion_visibility() {
    const std::vector<GroundStation> stations = {
        {"ALIC", -23.670, 133.886, 603.0, "C"},
        {"TSKB", 36.106, 140.087, 67.0, "C"},
        {"KIRU", 67.857, 20.968, 391.0, "C"},
    };
    WalkerShell shell;
    shell.name_prefix = "C";
    shell.total = 40;
    shell.planes = 8;
    shell.phasing = 3;
    shell.inclination_deg = 70.0;
    shell.mean_motion_rev_day = 14.8;
    shell.count = 5;
    const auto sats = walker_constellation(shell);
    const auto start = parse_iso8601("2026-09-01T00:00:00Z");
    const TimeSpan span{start, start + std::chrono::hours{2}};
    const AccessOptions opt{0.0, 1, 30};

    std::size_t windows = 0;
    std::int64_t worst = 0;
    for (const auto& gs : stations) {
        for (const auto& tle : sats) {
            const auto fast = access_windows(gs, tle, span, opt).windows;
            const auto ref = oracle_windows(gs, tle, span, opt.min_elevation_deg);
            if (fast.size() != ref.size()) {
                return {false, fmt::format("{} / {}: {} windows vs {} from 1 s sampling", gs.id, tle.name,
                                           fast.size(), ref.size())};
            }
            for (std::size_t k = 0; k < fast.size(); ++k) {
                worst = std::max({worst, std::abs((fast[k].start - ref[k].start).count()),
                                  std::abs((fast[k].end - ref[k].end).count())});
            }
            windows += fast.size();
        }
    }
    return {worst <= 1 && windows > 0,
            fmt::format("15 pairs, {} windows, max boundary difference {} s", windows, worst)};
}

// ---------------------------------------------------------------------------
// 3. Gram / eigen properties on random H

Outcome criterion_gram(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> rows_d(1, 40);
    std::uniform_int_distribution<int> cols_d(1, 700);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<std::int64_t> scale_d(2, 1000);

    double worst_neg = 0.0;
    double worst_trace = 0.0;
    double worst_res = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const int m = rows_d(rng);
        const int n = cols_d(rng);
        const double density = u(rng);
        SpectrumMatrix h;
        h.constellation_id = "R";
        for (int i = 0; i < m; ++i) {
            h.station_ids.push_back(fmt::format("G{}", i));
        }
        for (int x = 0; x < n; ++x) {
            h.satellite_ids.push_back(fmt::format("X{}", x));
        }
        for (int k = 0; k < m * n; ++k) {
            h.values.push_back(u(rng) < density ? static_cast<std::int64_t>(u(rng) * 7200.0) : 0);
        }
        const auto ge = gram(h);
        const auto& j = ge.J;
        for (int a = 0; a < m; ++a) {
            for (int b = 0; b < a; ++b) {
                if (j(a, b) != j(b, a)) {
                    return {false, fmt::format("trial {}: J not symmetric at ({}, {})", trial, a, b)};
                }
            }
        }
        const double lmax = ge.eigenvalues.front();
        const double lmin = ge.eigenvalues.back();
        if (lmax > 0.0) {
            worst_neg = std::max(worst_neg, -lmin / lmax);
        }
        double sum = 0.0;
        for (const auto l : ge.eigenvalues) {
            sum += l;
        }
        const double tr = j.trace();
        if (tr > 0.0) {
            worst_trace = std::max(worst_trace, std::fabs(sum - tr) / tr);
        }
        const double fro = j.frobenius_norm();
        for (int k = 0; k < m; ++k) {
            double r2 = 0.0;
            for (int a = 0; a < m; ++a) {
                double jq = 0.0;
                for (int b = 0; b < m; ++b) {
                    jq += j(a, b) * ge.eigenvectors(b, k);
                }
                const double d = jq - ge.eigenvalues[k] * ge.eigenvectors(a, k);
                r2 += d * d;
            }
            if (fro > 0.0) {
                worst_res = std::max(worst_res, std::sqrt(r2) / fro);
            }
        }

        const auto base = rank_stations(ge, h.station_ids);
        auto scaled = h;
        const auto s = scale_d(rng);
        for (auto& v : scaled.values) {
            v *= s;
        }
        const auto other = rank_stations(gram(scaled), scaled.station_ids);
        if (other.dominant != base.dominant || other.order != base.order) {
            return {false, fmt::format("trial {} ({}x{}): ranking changed under scaling by {}", trial, m, n, s)};
        }
    }
    const bool pass = worst_neg <= 1e-10 && worst_trace <= 1e-8 && worst_res <= 1e-8;
    return {pass, fmt::format("200 trials; worst -lmin/lmax {:.2e}, trace rel {:.2e}, residual/|J|_F {:.2e}; "
                              "ranking scale-invariant",
                              worst_neg, worst_trace, worst_res)};
}

// ---------------------------------------------------------------------------
// 4. Pulse counts

// Maximal runs of 1s, found by splitting on 0s.
std::int64_t maximal_runs(const std::vector<std::uint8_t>& bits) {
    std::string s;
    for (const auto b : bits) {
        s += b != 0 ? '1' : '0';
    }
    std::int64_t runs = 0;
    std::istringstream in(s);
    for (std::string part; std::getline(in, part, '0');) {
        runs += part.empty() ? 0 : 1;
    }
    return runs;
}

Outcome criterion_pulses(std::uint64_t seed) {
    std::int64_t checked = 0;
    for (int len = 0; len <= 16; ++len) {
        for (std::uint32_t v = 0; v < (1u << len); ++v) {
            std::vector<std::uint8_t> bits(static_cast<std::size_t>(len));
            for (int i = 0; i < len; ++i) {
                bits[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((v >> i) & 1u);
            }
            if (count_pulses(bits) != maximal_runs(bits)) {
                return {false, fmt::format("length {} value {:#x}", len, v)};
            }
            ++checked;
        }
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> len_d(17, 4000);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 10000; ++t) {
        const double p = u(rng);
        std::vector<std::uint8_t> bits(static_cast<std::size_t>(len_d(rng)));
        for (auto& b : bits) {
            b = u(rng) < p ? 1 : 0;
        }
        if (count_pulses(bits) != maximal_runs(bits)) {
            return {false, fmt::format("random string {} of length {}", t, bits.size())};
        }
        ++checked;
    }
    return {true, fmt::format("{} strings (all of length <= 16, 10000 random of length 17..4000)", checked)};
}

// ---------------------------------------------------------------------------
// 5. Three-constellation interaction scenario

struct InterOutcome {
    Outcome a;
    Outcome b;
    Outcome c;
    Outcome d;
};

InterOutcome criterion_interaction(const fs::path& scenario_path) {
    const auto scenario = load_scenario(scenario_path);
    std::vector<std::string> ids;
    std::vector<std::size_t> product;
    for (const auto& c : scenario.constellations) {
        ids.push_back(c.id);
        product.push_back(c.stations.size() * c.satellites.size());
    }
    const auto set = compute_spectra(scenario, {Backend::openmp, 0});
    const auto r = run_inter(set, ids);
    const std::size_t n = ids.size();
    InterOutcome out;

    // (a) mode in [1, 6] and nonzero mass somewhere in [2, 4]
    std::string bad;
    std::string modes;
    for (const auto& pair : r.pairs) {
        const auto& pmf = pair.pmf;
        const double mass = pmf.probability(2) + pmf.probability(3) + pmf.probability(4);
        modes += fmt::format("{}{}->{}:{}", modes.empty() ? "" : " ", pair.from, pair.to, pmf.mode());
        if (pmf.mode() < 1 || pmf.mode() > 6 || mass <= 0.0) {
            bad += fmt::format(" {}->{} (mode {}, mass[2,4] {:.3f})", pair.from, pair.to, pmf.mode(), mass);
        }
    }
    out.a = {bad.empty(), bad.empty() ? "modes " + modes : "violations:" + bad};

    // (b) densest stations x satellites holds the largest diagonal entry
    const auto densest = static_cast<std::size_t>(std::max_element(product.begin(), product.end()) - product.begin());
    std::size_t diag_arg = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (r.p.at(i, i) > r.p.at(diag_arg, diag_arg)) {
            diag_arg = i;
        }
    }
    bool unique_max = true;
    for (std::size_t i = 0; i < n; ++i) {
        unique_max = unique_max && (i == densest || r.p.at(i, i) < r.p.at(densest, densest));
    }
    out.b = {unique_max, fmt::format("densest {} P={}, largest diagonal {} P={}", ids[densest],
                                     r.p.at(densest, densest), ids[diag_arg], r.p.at(diag_arg, diag_arg))};

    // (c) smallest off-diagonal entry lies in the smallest constellation's row or column
    const auto smallest = static_cast<std::size_t>(std::min_element(product.begin(), product.end()) - product.begin());
    std::int64_t min_all = std::numeric_limits<std::int64_t>::max();
    std::int64_t min_small = std::numeric_limits<std::int64_t>::max();
    std::string where;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) {
                continue;
            }
            if (r.p.at(i, j) < min_all) {
                min_all = r.p.at(i, j);
                where = ids[i] + "->" + ids[j];
            }
            if (i == smallest || j == smallest) {
                min_small = std::min(min_small, r.p.at(i, j));
            }
        }
    }
    out.c = {n > 1 && min_small == min_all,
             fmt::format("smallest {}; off-diagonal minimum {} at {}", ids[smallest], min_all, where)};

    // (d) one dominant real eigenvalue plus one exact conjugate pair, sum = trace
    const auto& g = r.p.eigen.values;
    std::string spectrum;
    double sum = 0.0;
    for (const auto& z : g) {
        spectrum += fmt::format("{}{:.4g}{:+.4g}i", spectrum.empty() ? "" : ", ", z.real(), z.imag());
        sum += z.real();
    }
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        trace += static_cast<double>(r.p.at(i, i));
    }
    const bool trace_ok = std::fabs(sum - trace) <= 1e-8 * std::max(1.0, std::fabs(trace));
    bool shape = g.size() == 3 && g[0].imag() == 0.0 && g[0].real() > 0.0;
    if (shape) {
        const auto& p = g[1];
        const auto& q = g[2];
        shape = p.imag() != 0.0 && p.real() == q.real() && p.imag() == -q.imag() &&
                std::abs(g[0]) > std::abs(p);
    }
    out.d = {shape && trace_ok, fmt::format("eigenvalues [{}]; sum {} vs trace {}{}", spectrum, sum, trace,
                                            shape ? "" : "; no complex-conjugate pair")};
    return out;
}

// ---------------------------------------------------------------------------
// 6. Determinism across thread counts

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// The manifest records the output directory and the elapsed time; both
// legitimately differ between the two runs.
std::string manifest_without_run_fields(const fs::path& p) {
    auto j = nlohmann::ordered_json::parse(slurp(p));
    j.erase("wall_clock_s");
    j.erase("output_dir");
    return j.dump();
}

Outcome criterion_determinism(const fs::path& scenario_path, const fs::path& work) {
    CommandOptions o;
    o.scenario = scenario_path;
    o.out_dir = work / "jobs1";
    o.jobs = 1;
    fs::remove_all(o.out_dir);
    const auto r1 = cmd_inter(o);
    o.out_dir = work / "jobs8";
    o.jobs = 8;
    fs::remove_all(o.out_dir);
    const auto r8 = cmd_inter(o);
    if (r1.outputs != r8.outputs) {
        return {false, "different output file lists"};
    }
    for (const auto& f : r1.outputs) {
        const bool same = f == fs::path("manifest.json")
                              ? manifest_without_run_fields(work / "jobs1" / f) ==
                                    manifest_without_run_fields(work / "jobs8" / f)
                              : slurp(work / "jobs1" / f) == slurp(work / "jobs8" / f);
        if (!same) {
            return {false, fmt::format("{} differs", f.string())};
        }
    }
    return {true, fmt::format("{} data files byte-identical; manifest identical apart from wall_clock_s and "
                              "output_dir",
                              r1.outputs.size() - 1)};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance checks"};
    std::string only;
    std::string data_dir = TSA_DATA_DIR;
    std::string sgp4_dir = TSA_TEST_DATA_DIR "/sgp4";
    std::string work_dir = (fs::temp_directory_path() / "tsa_acceptance").string();
    std::uint64_t seed = 20260901;
    app.add_option("--only", only, "Comma-separated criterion ids (1 2 3 4 5a 5b 5c 5d 6)");
    app.add_option("--data", data_dir, "Directory holding scenario_b/");
    app.add_option("--sgp4", sgp4_dir, "Directory holding SGP4-VER.TLE and tcppver.out");
    app.add_option("--work", work_dir, "Scratch directory for criterion 6 outputs");
    app.add_option("--seed", seed, "Seed for the random trials");
    CLI11_PARSE(app, argc, argv);

    std::set<std::string> selected;
    {
        std::istringstream in(only);
        for (std::string id; std::getline(in, id, ',');) {
            if (!id.empty()) {
                selected.insert(id);
            }
        }
    }
    const auto want = [&](const std::string& id) { return selected.empty() || selected.count(id) > 0; };
    const fs::path scenario_b = fs::path(data_dir) / "scenario_b" / "scenario.json";

    int failures = 0;
    const auto report = [&](int number, const std::string& title, double seconds, double limit, Outcome o) {
        if (seconds > limit) {
            o.pass = false;
            o.detail += fmt::format("; over the {:.0f} s limit", limit);
        }
        failures += o.pass ? 0 : 1;
        fmt::print("[{}] criterion {}: {} ({:.2f} s) {}\n", o.pass ? "PASS" : "FAIL", number, title, seconds,
                   o.detail);
        std::fflush(stdout);
    };
    const auto run = [&](int number, const std::string& title, double limit, const std::function<Outcome()>& f) {
        if (!want(std::to_string(number))) {
            return;
        }
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = f();
        } catch (const std::exception& e) {
            o = {false, fmt::format("exception: {}", e.what())};
        }
        report(number, title, seconds_since(t0), limit, o);
    };

    run(1, "SGP4 verification vectors within 1e-3 km", 5.0, [&] { return criterion_sgp4(sgp4_dir); });
    run(2, "coarse scan + bisection matches 1 s sampling", 30.0, criterion_visibility);
    run(3, "Gram/eigen properties on 200 random H", 60.0, [&] { return criterion_gram(seed); });
    run(4, "pulse count equals maximal-run count", 10.0, [&] { return criterion_pulses(seed); });

    const std::vector<std::string> parts = {"5a", "5b", "5c", "5d"};
    if (std::any_of(parts.begin(), parts.end(), want)) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            const auto r = criterion_interaction(scenario_b);
            const std::pair<std::string, const Outcome*> sub[] = {{"a", &r.a}, {"b", &r.b}, {"c", &r.c}, {"d", &r.d}};
            for (const auto& [tag, s] : sub) {
                if (!want("5" + tag)) {
                    continue;
                }
                o.pass = o.pass && s->pass;
                o.detail += fmt::format("{}({}) {}: {}", o.detail.empty() ? "" : " | ", tag,
                                        s->pass ? "pass" : "FAIL", s->detail);
            }
        } catch (const std::exception& e) {
            o = {false, fmt::format("exception: {}", e.what())};
        }
        report(5, "three-constellation scenario reproduction", seconds_since(t0), 600.0, o);
    }

    run(6, "inter outputs identical for --jobs 1 and --jobs 8", 600.0,
        [&] { return criterion_determinism(scenario_b, work_dir); });

    return failures == 0 ? 0 : 1;
}
