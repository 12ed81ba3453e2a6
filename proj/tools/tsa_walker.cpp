#include <tsa/errors.hpp>
#include <tsa/walker.hpp>

#include <CLI11.hpp>
#include <fmt/format.h>

#include <chrono>
#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Generate a Walker-delta TLE set"};
    tsa::WalkerShell s;
    std::string epoch = "2026-09-01T00:00:00Z";
    std::string out;
    app.add_option("--prefix", s.name_prefix, "Satellite name prefix")->capture_default_str();
    app.add_option("--first-catalog", s.first_catalog_number, "Catalog number of the first satellite")
        ->capture_default_str();
    app.add_option("--total", s.total, "Satellites in the full shell (T)")->capture_default_str();
    app.add_option("--planes", s.planes, "Orbital planes (P)")->capture_default_str();
    app.add_option("--phasing", s.phasing, "Phasing factor (F)")->capture_default_str();
    app.add_option("--inclination", s.inclination_deg, "Inclination, degrees")->capture_default_str();
    app.add_option("--mean-motion", s.mean_motion_rev_day, "Mean motion, rev/day")->capture_default_str();
    app.add_option("--raan0", s.raan0_deg, "RAAN of the first plane, degrees")->capture_default_str();
    app.add_option("--eccentricity", s.eccentricity, "Eccentricity")->capture_default_str();
    app.add_option("--bstar", s.bstar, "Drag term, 1/earth radii")->capture_default_str();
    app.add_option("--count", s.count, "Satellites to emit, spread over the shell (0 = all)")->capture_default_str();
    app.add_option("--epoch", epoch, "Element epoch, ISO 8601 UTC")->capture_default_str();
    app.add_option("-o,--out", out, "Output file (default stdout)");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        using namespace std::chrono;
        const auto t = tsa::parse_iso8601(epoch);
        const auto day = floor<days>(t);
        const year_month_day ymd{day};
        const auto jan1 = sys_days{ymd.year() / January / 1};
        s.epoch_year = static_cast<int>(ymd.year());
        s.epoch_day = 1.0 + static_cast<double>((t - jan1).count()) / 86400.0;
        std::string text;
        for (const auto& tle : tsa::walker_constellation(s)) {
            text += tsa::format_tle(tle);
        }
        if (out.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(out, std::ios::binary);
            f << text;
            if (!f) {
                throw tsa::MissingFileError("cannot write " + out);
            }
        }
        return 0;
    } catch (const tsa::InputError& e) {
        fmt::print(stderr, "tsa-walker: error: {}\n", e.what());
        return 2;
    }
}
