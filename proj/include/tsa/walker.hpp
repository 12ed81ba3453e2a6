#pragma once

#include <tsa/catalog.hpp>

#include <string>
#include <vector>

namespace tsa {

// Walker-delta shell i: T/P/F, sampled down to `count` satellites.
struct WalkerShell {
    std::string name_prefix = "SAT";
    int first_catalog_number = 90000;
    int total = 24;    // T, satellites in the full shell
    int planes = 3;    // P, must divide T
    int phasing = 1;   // F in [0, P)
    double inclination_deg = 53.0;
    double mean_motion_rev_day = 15.0;
    double raan0_deg = 0.0;
    double eccentricity = 0.0001;
    double arg_perigee_deg = 0.0;
    double bstar = 0.0;
    int epoch_year = 2026;
    double epoch_day = 244.0;  // 2026-09-01 00:00 UTC
    int count = 0;             // 0: the whole shell; otherwise evenly spaced picks
};

// Throws FormatError for inconsistent parameters.
std::vector<TleRecord> walker_constellation(const WalkerShell& shell);

}  // namespace tsa
