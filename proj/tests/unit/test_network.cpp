#include <doctest.h>

#include <tsa/errors.hpp>
#include <tsa/network.hpp>

#include "../support/small_network.hpp"

using namespace tsa;
using namespace tsa::testing;

TEST_CASE("walker shells") {
    WalkerShell s;
    s.total = 12;
    s.planes = 3;
    s.phasing = 1;
    const auto all = walker_constellation(s);
    REQUIRE(all.size() == 12);
    CHECK(all[0].raan == 0.0);
    CHECK(all[4].raan == 120.0);
    CHECK(all[4].mean_anomaly == 30.0);  // slot 0 of plane 1 shifted by F*360/T
    CHECK(all[1].mean_anomaly == 90.0);
    CHECK(satellite_id(all[0]) == "SAT-1");
    s.count = 4;
    const auto some = walker_constellation(s);
    REQUIRE(some.size() == 4);
    CHECK(some[1].raan == all[3].raan);
    CHECK(some[1].mean_anomaly == all[3].mean_anomaly);
    s.planes = 5;
    CHECK_THROWS_AS(walker_constellation(s), FormatError);
}

TEST_CASE("backends agree") {
    const auto span = small_span();
    const AccessOptions opt{};
    const auto exhaustive = compute_spectra(small_stations(), small_satellites(), span, opt, {Backend::exhaustive});
    const auto serial = compute_spectra(small_stations(), small_satellites(), span, opt, {Backend::serial});
    const auto par1 = compute_spectra(small_stations(), small_satellites(), span, opt, {Backend::openmp, 1});
    const auto par4 = compute_spectra(small_stations(), small_satellites(), span, opt, {Backend::openmp, 4});
    REQUIRE(serial.windows.size() == 15);
    CHECK(serial.windows == exhaustive.windows);
    CHECK(par1.windows == serial.windows);
    CHECK(par4.windows == serial.windows);
    std::size_t total = 0;
    for (const auto& w : serial.windows) {
        total += w.size();
    }
    CHECK(total > 0);
}

TEST_CASE("set matches single-pair access windows") {
    const auto span = small_span();
    const auto set = compute_spectra(small_stations(), small_satellites(), span, {5.0, 1, 30});
    for (std::size_t g = 0; g < set.stations.size(); ++g) {
        for (std::size_t x = 0; x < set.satellites.size(); ++x) {
            const auto single = access_windows(set.stations[g], set.satellites[x].tle, span, {5.0, 1, 30});
            CHECK(set.at(g, x) == single.windows);
            const auto s = set.spectrum(g, x);
            CHECK(s.station_id == set.stations[g].id);
            CHECK(s.satellite_id == set.satellites[x].id);
            CHECK(s.satellite_constellation == "C");
        }
    }
}

TEST_CASE("constellation membership") {
    auto stations = small_stations("A");
    stations.push_back({"X1", 0.0, 0.0, 0.0, "B"});
    auto sats = small_satellites(2, "B");
    const auto more = small_satellites(3, "A", 86.0, 14.5, 92000);
    sats.insert(sats.end(), more.begin(), more.end());
    const auto set = compute_spectra(stations, sats, small_span(1), {});
    CHECK(set.stations_of("A") == std::vector<std::size_t>{0, 1, 2});
    CHECK(set.stations_of("B") == std::vector<std::size_t>{3});
    CHECK(set.satellites_of("B") == std::vector<std::size_t>{0, 1});
    CHECK(set.satellites_of("A") == std::vector<std::size_t>{2, 3, 4});
    CHECK(set.stations_of("Z").empty());
}

TEST_CASE("decay is reported for the lowest failing satellite") {
    auto sats = small_satellites(3);
    // push two satellites far below the surface
    for (const std::size_t k : {1u, 2u}) {
        sats[k].tle.mean_motion = 17.5;
        sats[k].tle.bstar = 0.5;
        sats[k].tle.mean_motion_dot = 0.05;
    }
    const TimeSpan span{small_span().start, small_span().start + std::chrono::hours{24 * 20}};
    for (const auto backend : {Backend::serial, Backend::openmp}) {
        try {
            compute_spectra(small_stations(), sats, span, {0.0, 60, 600}, {backend, 3});
            FAIL("expected a decay error");
        } catch (const DecayError& e) {
            CHECK(std::string(e.what()).find(sats[1].id) != std::string::npos);
        }
    }
}

TEST_CASE("jobs") {
    CHECK(resolve_jobs(3) == 3);
    CHECK(resolve_jobs(0) >= 1);
    CHECK_THROWS_AS(resolve_jobs(-1), FormatError);
}
