#include <doctest.h>

#include <tsa/errors.hpp>
#include <tsa/interaction.hpp>

#include "../support/small_network.hpp"

#include <random>

using namespace tsa;
using namespace tsa::testing;

namespace {

UtcSeconds t(std::int64_t s) { return UtcSeconds{Seconds{s}}; }

std::vector<std::uint8_t> bits_of(const std::string& s) {
    std::vector<std::uint8_t> b;
    for (const char c : s) {
        b.push_back(c == '1' ? 1 : 0);
    }
    return b;
}

// independent scanner: count maximal runs of ones
std::int64_t runs_of_ones(const std::vector<std::uint8_t>& b) {
    std::int64_t runs = 0;
    std::size_t i = 0;
    while (i < b.size()) {
        if (b[i] == 0) {
            ++i;
            continue;
        }
        ++runs;
        while (i < b.size() && b[i] != 0) {
            ++i;
        }
    }
    return runs;
}

SpectrumSet two_constellation_set(double mask = 0.0, int hours = 3) {
    auto stations = small_stations("A");
    stations.push_back({"QUI", -0.2, -78.5, 2800.0, "B"});
    stations.push_back({"SVA", 78.2, 15.4, 500.0, "B"});
    auto sats = small_satellites(6, "A", 53.0, 15.0, 91000);
    const auto b = small_satellites(4, "B", 86.4, 14.34, 92000);
    sats.insert(sats.end(), b.begin(), b.end());
    return compute_spectra(stations, sats, small_span(hours), {mask, 1, 30});
}

}  // namespace

TEST_CASE("pulse counting examples") {
    CHECK(count_pulses(bits_of("0001110011")) == 2);
    CHECK(count_pulses(bits_of("0000")) == 0);
    CHECK(count_pulses(bits_of("1")) == 1);
    CHECK(count_pulses(bits_of("")) == 0);
    CHECK(count_pulses(bits_of("1011")) == 2);
}

TEST_CASE("pulse counting equals the run count for all short strings") {
    for (int len = 0; len <= 12; ++len) {
        for (std::uint32_t v = 0; v < (1u << len); ++v) {
            std::vector<std::uint8_t> b(static_cast<std::size_t>(len));
            for (int i = 0; i < len; ++i) {
                b[static_cast<std::size_t>(i)] = (v >> i) & 1u;
            }
            REQUIRE(count_pulses(b) == runs_of_ones(b));
        }
    }
}

TEST_CASE("pulse count does not depend on the representation") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 300; ++trial) {
        const int alpha = 1 + static_cast<int>(rng() % 5);
        std::vector<AccessWindow> w;
        std::int64_t cursor = static_cast<std::int64_t>(rng() % 30);
        for (int k = 0; k < 6; ++k) {
            const std::int64_t len = 1 + static_cast<std::int64_t>(rng() % 50);
            w.push_back({t(cursor), t(cursor + len)});
            cursor += len + 1 + static_cast<std::int64_t>(rng() % 30);
        }
        const GlobalWindow gw{t(static_cast<std::int64_t>(rng() % 20)), t(cursor)};
        const auto bits = sample(w, gw, alpha);
        CHECK(count_pulses(bits) == clipped_pulse_count(w, gw, alpha));
        if (alpha == 1) {
            CHECK(count_pulses(bits) == static_cast<std::int64_t>(clip(w, gw).size()));
        }
    }
}

TEST_CASE("pulse density") {
    CHECK(pulse_density(5, {t(0), t(10000)}) == doctest::Approx(5e-4));
    CHECK(pulse_density(0, {t(0), t(10000)}) == 0.0);
    CHECK(pulse_density(30, {t(0), t(36000)}) == doctest::Approx(30.0 / 36000.0));
    CHECK_THROWS_AS(pulse_density(1, {t(5), t(5)}), DivisionError);
}

TEST_CASE("hourly binning") {
    const GlobalWindow gw{t(0), t(7200)};
    const std::vector<AccessWindow> w{{t(1800), t(1900)}, {t(5400), t(5500)}, {t(6120), t(6200)}};
    const auto per_hour = pulses_per_bin(w, gw, 1, 3600);
    CHECK(per_hour == std::vector<std::int64_t>{1, 2});
    const auto pmf = pmf_from_counts("A", "B", per_hour, 3600, 2);
    CHECK(pmf.support == std::vector<std::int64_t>{1, 2});
    CHECK(pmf.probabilities == std::vector<double>{0.5, 0.5});
    CHECK(pulses_per_bin(w, gw, 1, 0) == std::vector<std::int64_t>{3});
    // starts in a trailing partial bin are dropped
    CHECK(pulses_per_bin(w, gw, 1, 5000) == std::vector<std::int64_t>{1});

    const auto empty = pmf_from_counts("A", "B", {}, 3600, 0);
    CHECK(empty.support == std::vector<std::int64_t>{0});
    CHECK(empty.probabilities == std::vector<double>{1.0});
    CHECK(empty.mode() == 0);
}

TEST_CASE("pair analysis on a two-constellation network") {
    const auto set = two_constellation_set();
    for (const auto& from : {"A", "B"}) {
        for (const auto& to : {"A", "B"}) {
            const auto pa = analyze_pair(set, from, to);
            CAPTURE(from);
            CAPTURE(to);
            const auto gi = set.stations_of(from);
            const auto xi = set.satellites_of(to);
            REQUIRE(pa.stats.size() == gi.size() * xi.size());
            // brute-force strongest station over the dense bitstreams
            std::int64_t best = 0;
            std::int64_t total = 0;
            for (std::size_t a = 0; a < gi.size(); ++a) {
                std::int64_t s = 0;
                for (std::size_t b = 0; b < xi.size(); ++b) {
                    const auto bits = sample(set.at(gi[a], xi[b]), pa.gw, set.options.alpha_s);
                    const auto c = runs_of_ones(bits.bits);
                    CHECK(pa.stats[a * xi.size() + b].pulse_count == c);
                    const double rho = pa.stats[a * xi.size() + b].density;
                    CHECK(rho >= 0.0);
                    CHECK(rho <= 1.0 / set.options.alpha_s);
                    s += c;
                }
                total += s;
                best = std::max(best, s);
            }
            CHECK(pa.strongest_count == best);
            CHECK(strongest_station_count(set, from, to) == best);

            // whole-window PMF: one observation per pair, mean = total / pairs
            double psum = 0.0;
            for (const auto p : pa.pmf.probabilities) {
                psum += p;
            }
            CHECK(psum == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(pa.pmf.mean() == doctest::Approx(static_cast<double>(total) / static_cast<double>(pa.stats.size())));

            // hourly PMF: mean x hours ~ total / pairs, short only by starts in the partial hour
            const auto hourly = pulse_pmf(set, from, to, {3600, PmfPooling::all_pairs});
            const double hours = static_cast<double>(hourly.bins);
            CHECK(hourly.mean() * hours <= static_cast<double>(total) / static_cast<double>(pa.stats.size()) + 1e-9);

            const auto best_only = pulse_pmf(set, from, to, {0, PmfPooling::best_station});
            CHECK(best_only.observations == static_cast<std::int64_t>(xi.size()));
        }
    }
    CHECK_THROWS_AS(analyze_pair(set, "A", "nope"), EmptyNetworkError);
    CHECK_THROWS_AS(analyze_pair(set, "nope", "A"), EmptyNetworkError);
}

TEST_CASE("no visibility at all") {
    const auto set = two_constellation_set(90.5, 1);
    const auto pa = analyze_pair(set, "A", "B");
    CHECK_FALSE(pa.has_windows);
    CHECK(pa.strongest_count == 0);
    CHECK(pa.pmf.support == std::vector<std::int64_t>{0});
    CHECK(pa.pmf.probabilities == std::vector<double>{1.0});
}

TEST_CASE("strongest station example") {
    // one station sees {2, 3} pulses, the other {4, 0}
    SpectrumSet set;
    set.span = {t(0), t(1000)};
    set.stations = {{"G1", 0, 0, 0, "A"}, {"G2", 0, 0, 0, "A"}};
    set.satellites = {{"X1", "B", {}}, {"X2", "B", {}}};
    const auto pulses = [](int n, std::int64_t base) {
        std::vector<AccessWindow> w;
        for (int k = 0; k < n; ++k) {
            w.push_back({t(base + 20 * k), t(base + 20 * k + 10)});
        }
        return w;
    };
    // windows[satellite * stations + station]
    set.windows = {pulses(2, 0), pulses(4, 0), pulses(3, 100), pulses(0, 0)};
    CHECK(strongest_station_count(set, "A", "B") == 5);
}

TEST_CASE("interaction matrix") {
    const auto set = two_constellation_set();
    const auto res = run_inter(set, {"A", "B"});
    REQUIRE(res.p.size() == 2);
    REQUIRE(res.pairs.size() == 4);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            CHECK(res.p.at(i, j) >= 0);
            CHECK(res.p.at(i, j) == res.pairs[i * 2 + j].strongest_count);
        }
    }
    std::complex<double> sum = 0.0;
    for (const auto& g : res.p.eigen.values) {
        sum += g;
    }
    const double tr = static_cast<double>(res.p.at(0, 0) + res.p.at(1, 1));
    CHECK(std::fabs(sum.real() - tr) <= 1e-8 * std::max(1.0, tr));

    const auto one = interaction_matrix(set, {"B"});
    REQUIRE(one.size() == 1);
    CHECK(one.at(0, 0) == res.p.at(1, 1));
    CHECK_THROWS_AS(run_inter(set, {}), EmptyNetworkError);
}
