#include <tsa/walker.hpp>

#include <tsa/errors.hpp>

#include <fmt/format.h>

#include <cmath>

namespace tsa {

namespace {

double wrap360(double deg) {
    const double r = std::fmod(deg, 360.0);
    return r < 0.0 ? r + 360.0 : r;
}

}  // namespace

std::vector<TleRecord> walker_constellation(const WalkerShell& s) {
    if (s.total < 1 || s.planes < 1 || s.total % s.planes != 0) {
        throw FormatError(fmt::format("walker: {} satellites do not split into {} planes", s.total, s.planes));
    }
    if (s.phasing < 0 || s.phasing >= s.planes) {
        throw FormatError(fmt::format("walker: phasing {} outside [0, {})", s.phasing, s.planes));
    }
    if (s.count < 0 || s.count > s.total) {
        throw FormatError(fmt::format("walker: cannot pick {} of {} satellites", s.count, s.total));
    }
    if (s.mean_motion_rev_day <= 0.0) {
        throw FormatError("walker: mean motion must be positive");
    }
    const int per_plane = s.total / s.planes;
    const int n = s.count == 0 ? s.total : s.count;
    std::vector<TleRecord> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        // k-th pick of n spread evenly over the shell
        const int idx = static_cast<int>((static_cast<long long>(k) * s.total) / n);
        const int plane = idx / per_plane;
        const int slot = idx % per_plane;
        TleRecord t;
        t.name = fmt::format("{}-{}", s.name_prefix, k + 1);
        t.catalog_number = s.first_catalog_number + k;
        t.international_designator = fmt::format("{:02d}{:03d}A", s.epoch_year % 100, 900 + k % 100);
        t.epoch_year = s.epoch_year;
        t.epoch_day = s.epoch_day;
        t.bstar = s.bstar;
        t.element_number = 999;
        t.inclination = s.inclination_deg;
        t.raan = wrap360(s.raan0_deg + 360.0 * plane / s.planes);
        t.eccentricity = s.eccentricity;
        t.arg_perigee = s.arg_perigee_deg;
        t.mean_anomaly = wrap360(360.0 * slot / per_plane + 360.0 * s.phasing * plane / s.total);
        t.mean_motion = s.mean_motion_rev_day;
        // round-trip through the fixed columns so records equal their file form
        out.push_back(parse_tle(format_tle(t)).front());
    }
    return out;
}

}  // namespace tsa
