#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace tsa {

using Seconds = std::chrono::seconds;

// Whole-second UTC instant. Window boundaries, spans and sample grids use it.
using UtcSeconds = std::chrono::sys_seconds;

// Sub-second UTC instant (TLE epochs, propagation times).
using Instant = std::chrono::sys_time<std::chrono::duration<double>>;

// UT1 is taken equal to UTC and leap seconds are ignored throughout.

// "2026-09-01T00:00:00Z"
std::string format_iso8601(UtcSeconds t);

// Accepts "YYYY-MM-DDTHH:MM:SS" with an optional trailing 'Z' (or a space in
// place of 'T'). Throws FormatError.
UtcSeconds parse_iso8601(std::string_view text);

// Seconds elapsed since J2000.0 (2000-01-01 12:00:00 UTC).
double seconds_since_j2000(Instant t);

double julian_date(Instant t);

// Start of a TLE epoch day-of-year (day 1.0 == Jan 1 00:00).
Instant instant_from_year_day(int year, double day_of_year);

}  // namespace tsa
