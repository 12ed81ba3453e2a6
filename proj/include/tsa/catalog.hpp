#pragma once

#include <tsa/time.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace tsa {

// Mean elements of one satellite as carried by a two-line element set.
// Angles are in degrees and mean motion in revolutions/day, exactly as the
// fixed columns encode them, so formatting a record reproduces its lines.
struct TleRecord {
    std::string name;
    int catalog_number = 0;
    char classification = 'U';
    std::string international_designator;
    int epoch_year = 2000;    // four digits
    double epoch_day = 1.0;   // fractional day of year, 1.0 == Jan 1 00:00 UTC
    double mean_motion_dot = 0.0;   // rev/day^2 (first derivative / 2)
    double mean_motion_ddot = 0.0;  // rev/day^3 (second derivative / 6)
    double bstar = 0.0;             // 1/earth radii
    int ephemeris_type = 0;
    int element_number = 0;
    double inclination = 0.0;
    double raan = 0.0;
    double eccentricity = 0.0;
    double arg_perigee = 0.0;
    double mean_anomaly = 0.0;
    double mean_motion = 0.0;
    int revolution_number = 0;
    bool line1_checksum_ok = true;
    bool line2_checksum_ok = true;

    Instant epoch() const { return instant_from_year_day(epoch_year, epoch_day); }
    double period_minutes() const { return 1440.0 / mean_motion; }

    bool operator==(const TleRecord&) const = default;
};

// Identifier used for a satellite in reports: the trimmed name line, or
// "NORAD-<catalog number>" for bare two-line sets.
std::string satellite_id(const TleRecord& tle);

struct TleParseOptions {
    // Reject lines whose checksum digit does not match. Disabled only for
    // legacy catalogs that are known to carry stale checksums.
    bool verify_checksums = true;
};

// Modulo-10 sum over the first 68 columns; digits count their value and
// '-' counts as 1.
int tle_checksum(std::string_view line);

// Parses a sequence of 2-line or 3-line (name + 2 lines) groups. Blank lines
// are skipped and a leading "0 " on name lines is dropped.
// Throws ChecksumError or FormatError; never returns partial results.
std::vector<TleRecord> parse_tle(std::string_view text, const TleParseOptions& options = {});

TleRecord parse_tle_lines(std::string_view line1, std::string_view line2,
                          std::string_view name = {}, const TleParseOptions& options = {});

// Name line (when present) followed by both element lines, '\n' terminated,
// with freshly computed checksums.
std::string format_tle(const TleRecord& tle);

std::vector<TleRecord> load_tle_file(const std::filesystem::path& path);

struct GroundStation {
    std::string id;
    double latitude_deg = 0.0;   // geodetic, [-90, 90]
    double longitude_deg = 0.0;  // (-180, 180]
    double altitude_m = 0.0;     // above the WGS84 ellipsoid
    std::string constellation_id;

    bool operator==(const GroundStation&) const = default;
};

// CSV with header `id,lat_deg,lon_deg,alt_m,constellation`; LF or CRLF.
// Throws FormatError or RangeError.
std::vector<GroundStation> parse_stations(std::string_view csv);
std::vector<GroundStation> load_stations(const std::filesystem::path& path);

struct Constellation {
    std::string id;
    std::vector<GroundStation> stations;
    std::vector<TleRecord> satellites;
};

struct Scenario {
    std::string name;
    std::vector<Constellation> constellations;
    UtcSeconds span_start{};
    UtcSeconds span_end{};
    int alpha_s = 1;                  // sampling precision, whole seconds >= 1
    double min_elevation_deg = 0.0;   // geometric horizon by default
    int coarse_step_s = 30;
    std::filesystem::path source;
    std::vector<std::filesystem::path> input_files;  // every file the scenario read

    const Constellation& constellation(std::string_view id) const;
    std::size_t constellation_index(std::string_view id) const;
};

// Loads the JSON scenario file documented in the README. Relative paths are
// resolved against the scenario file's directory.
// Throws FormatError, MissingFileError or CrossReferenceError.
Scenario load_scenario(const std::filesystem::path& path);

// Checks the Scenario invariants (span order, alpha, unique ids, station
// ownership). load_scenario calls it; exposed for programmatic scenarios.
void validate_scenario(const Scenario& scenario);

}  // namespace tsa
