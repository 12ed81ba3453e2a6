#include <tsa/time.hpp>

#include <tsa/errors.hpp>

#include <charconv>

#include <fmt/format.h>

namespace tsa {

namespace {

constexpr std::chrono::sys_seconds kJ2000 =
    std::chrono::sys_days{std::chrono::year{2000} / 1 / 1} + std::chrono::hours{12};

int parse_fixed(std::string_view text, std::size_t pos, std::size_t len, std::string_view whole) {
    int value = 0;
    const auto field = text.substr(pos, len);
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw FormatError(fmt::format("malformed ISO 8601 time '{}'", whole));
    }
    return value;
}

}  // namespace

std::string format_iso8601(UtcSeconds t) {
    using namespace std::chrono;
    const auto day = floor<days>(t);
    const year_month_day ymd{day};
    const hh_mm_ss hms{t - day};
    return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}Z", static_cast<int>(ymd.year()),
                       static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                       hms.hours().count(), hms.minutes().count(), hms.seconds().count());
}

UtcSeconds parse_iso8601(std::string_view text) {
    using namespace std::chrono;
    std::string_view s = text;
    if (!s.empty() && (s.back() == 'Z' || s.back() == 'z')) {
        s.remove_suffix(1);
    }
    if (s.size() != 19 || s[4] != '-' || s[7] != '-' || (s[10] != 'T' && s[10] != ' ') ||
        s[13] != ':' || s[16] != ':') {
        throw FormatError(fmt::format("malformed ISO 8601 time '{}'", text));
    }
    const int y = parse_fixed(s, 0, 4, text);
    const int mo = parse_fixed(s, 5, 2, text);
    const int d = parse_fixed(s, 8, 2, text);
    const int h = parse_fixed(s, 11, 2, text);
    const int mi = parse_fixed(s, 14, 2, text);
    const int se = parse_fixed(s, 17, 2, text);
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok() || h > 23 || mi > 59 || se > 59) {
        throw FormatError(fmt::format("invalid calendar time '{}'", text));
    }
    return sys_days{ymd} + hours{h} + minutes{mi} + seconds{se};
}

double seconds_since_j2000(Instant t) {
    return (t - kJ2000).count();
}

double julian_date(Instant t) {
    return 2451545.0 + seconds_since_j2000(t) / 86400.0;
}

Instant instant_from_year_day(int year, double day_of_year) {
    using namespace std::chrono;
    const sys_seconds jan1 = sys_days{std::chrono::year{year} / 1 / 1};
    return Instant{jan1} + duration<double>{(day_of_year - 1.0) * 86400.0};
}

}  // namespace tsa
