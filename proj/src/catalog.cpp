#include <tsa/catalog.hpp>

#include <tsa/errors.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

namespace tsa {

namespace {

constexpr std::size_t kLineLength = 69;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::string_view trim_right(std::string_view s) {
    const auto last = s.find_last_not_of(" \t\r\n");
    return last == std::string_view::npos ? std::string_view{} : s.substr(0, last + 1);
}

// 1-based inclusive column range, as the TLE format is documented.
std::string_view columns(std::string_view line, std::size_t first, std::size_t last) {
    return line.substr(first - 1, last - first + 1);
}

[[noreturn]] void bad_field(std::string_view what, std::string_view field, int line_no) {
    throw FormatError(fmt::format("TLE line {}: malformed {} field '{}'", line_no, what, field));
}

double to_double(std::string_view field, std::string_view what, int line_no) {
    const auto t = trim(field);
    if (t.empty()) {
        return 0.0;
    }
    // from_chars rejects a leading '+', and ".5"-style values need a zero
    std::string buf;
    std::string_view s = t;
    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!s.empty() && s.front() == '.') {
        buf = "0";
    }
    buf.append(s);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc() || ptr != buf.data() + buf.size()) {
        bad_field(what, field, line_no);
    }
    return negative ? -value : value;
}

int to_int(std::string_view field, std::string_view what, int line_no) {
    const auto t = trim(field);
    if (t.empty()) {
        return 0;
    }
    int value = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size()) {
        bad_field(what, field, line_no);
    }
    return value;
}

// Catalog numbers above 99999 use the Alpha-5 scheme: a leading letter
// (I and O skipped) stands for 10..33.
int parse_catalog_number(std::string_view field, int line_no) {
    const auto t = trim(field);
    if (!t.empty() && std::isalpha(static_cast<unsigned char>(t.front()))) {
        const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(t.front())));
        if (c == 'I' || c == 'O' || t.size() != 5) {
            bad_field("catalog number", field, line_no);
        }
        int lead = c - 'A' + 10;
        if (c > 'I') {
            --lead;
        }
        if (c > 'O') {
            --lead;
        }
        return lead * 10000 + to_int(t.substr(1), "catalog number", line_no);
    }
    return to_int(field, "catalog number", line_no);
}

std::string format_catalog_number(int number) {
    if (number < 100000) {
        return fmt::format("{:05d}", number);
    }
    const int lead = number / 10000;
    char c = static_cast<char>('A' + lead - 10);
    if (c >= 'I') {
        ++c;
    }
    if (c >= 'O') {
        ++c;
    }
    return fmt::format("{}{:04d}", c, number % 10000);
}

// "SMMMMMSE" fields with an implied leading decimal point: " 12345-3" is
// 0.12345e-3.
double parse_implied_exponent(std::string_view field, std::string_view what, int line_no) {
    const auto t = trim(field);
    if (t.empty()) {
        return 0.0;
    }
    std::string_view s = t;
    char sign = '+';
    if (s.front() == '+' || s.front() == '-') {
        sign = s.front();
        s.remove_prefix(1);
    }
    if (s.size() < 3) {
        bad_field(what, field, line_no);
    }
    const auto exp_pos = s.find_last_of("+-");
    if (exp_pos == std::string_view::npos || exp_pos == 0 || exp_pos + 1 >= s.size()) {
        bad_field(what, field, line_no);
    }
    const auto mantissa = s.substr(0, exp_pos);
    const auto exponent = s.substr(exp_pos);
    if (!std::all_of(mantissa.begin(), mantissa.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        bad_field(what, field, line_no);
    }
    const std::string text = fmt::format("{}0.{}e{}", sign == '-' ? "-" : "", mantissa, exponent);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        bad_field(what, field, line_no);
    }
    return value;
}

std::string format_implied_exponent(double value) {
    if (value == 0.0) {
        return " 00000-0";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4e", std::fabs(value));
    // buf looks like "2.8098e-05"
    const std::string_view s{buf};
    const std::string digits = std::string{s.substr(0, 1)} + std::string{s.substr(2, 4)};
    const int exp10 = std::stoi(std::string{s.substr(7)}) + 1;
    if (exp10 > 9 || exp10 < -9) {
        throw RangeError(fmt::format("value {} does not fit the TLE exponent field", value));
    }
    return fmt::format("{}{}{}{}", value < 0 ? '-' : ' ', digits, exp10 < 0 ? '-' : '+', std::abs(exp10));
}

void check_line(std::string_view line, char expected_number, int line_no) {
    if (line.size() != kLineLength) {
        throw FormatError(fmt::format("TLE line {} has {} columns, expected {}", line_no, line.size(),
                                      kLineLength));
    }
    if (line.front() != expected_number || line[1] != ' ') {
        throw FormatError(fmt::format("TLE line {} does not start with '{} '", line_no, expected_number));
    }
}

bool checksum_matches(std::string_view line) {
    const char c = line[68];
    return std::isdigit(static_cast<unsigned char>(c)) && (c - '0') == tle_checksum(line);
}

void validate_elements(const TleRecord& r) {
    const auto bad = [&](std::string_view what, double v) {
        throw RangeError(fmt::format("TLE {}: {} {} out of range", r.catalog_number, what, v));
    };
    if (!(r.inclination >= 0.0 && r.inclination <= 180.0)) bad("inclination", r.inclination);
    if (!(r.raan >= 0.0 && r.raan < 360.0)) bad("raan", r.raan);
    if (!(r.arg_perigee >= 0.0 && r.arg_perigee < 360.0)) bad("argument of perigee", r.arg_perigee);
    if (!(r.mean_anomaly >= 0.0 && r.mean_anomaly < 360.0)) bad("mean anomaly", r.mean_anomaly);
    if (!(r.eccentricity >= 0.0 && r.eccentricity < 1.0)) bad("eccentricity", r.eccentricity);
    if (!(r.mean_motion > 0.0)) bad("mean motion", r.mean_motion);
    if (!(r.epoch_day >= 1.0 && r.epoch_day < 367.0)) bad("epoch day", r.epoch_day);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw MissingFileError(fmt::format("cannot open '{}'", path.string()));
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        lines.push_back(line);
        if (nl == std::string_view::npos) {
            break;
        }
        pos = nl + 1;
    }
    return lines;
}

bool looks_like_element_line(std::string_view line, char number) {
    return line.size() >= 2 && line[0] == number && line[1] == ' ';
}

}  // namespace

std::string satellite_id(const TleRecord& tle) {
    if (!tle.name.empty()) {
        return tle.name;
    }
    return fmt::format("NORAD-{}", tle.catalog_number);
}

int tle_checksum(std::string_view line) {
    int sum = 0;
    for (char c : line.substr(0, std::min<std::size_t>(68, line.size()))) {
        if (std::isdigit(static_cast<unsigned char>(c))) {
            sum += c - '0';
        } else if (c == '-') {
            sum += 1;
        }
    }
    return sum % 10;
}

TleRecord parse_tle_lines(std::string_view line1, std::string_view line2, std::string_view name,
                          const TleParseOptions& options) {
    line1 = trim_right(line1);
    line2 = trim_right(line2);
    check_line(line1, '1', 1);
    check_line(line2, '2', 2);

    TleRecord r;
    r.name = std::string{trim(name)};
    r.line1_checksum_ok = checksum_matches(line1);
    r.line2_checksum_ok = checksum_matches(line2);
    if (options.verify_checksums) {
        if (!r.line1_checksum_ok) {
            throw ChecksumError(fmt::format("TLE line 1 checksum mismatch: expected {}, found '{}'",
                                            tle_checksum(line1), line1[68]));
        }
        if (!r.line2_checksum_ok) {
            throw ChecksumError(fmt::format("TLE line 2 checksum mismatch: expected {}, found '{}'",
                                            tle_checksum(line2), line2[68]));
        }
    }

    r.catalog_number = parse_catalog_number(columns(line1, 3, 7), 1);
    r.classification = line1[7] == ' ' ? 'U' : line1[7];
    r.international_designator = std::string{trim(columns(line1, 10, 17))};
    const int yy = to_int(columns(line1, 19, 20), "epoch year", 1);
    r.epoch_year = yy < 57 ? 2000 + yy : 1900 + yy;
    r.epoch_day = to_double(columns(line1, 21, 32), "epoch day", 1);
    r.mean_motion_dot = to_double(columns(line1, 34, 43), "mean motion derivative", 1);
    r.mean_motion_ddot = parse_implied_exponent(columns(line1, 45, 52), "mean motion second derivative", 1);
    r.bstar = parse_implied_exponent(columns(line1, 54, 61), "bstar", 1);
    r.ephemeris_type = to_int(columns(line1, 63, 63), "ephemeris type", 1);
    r.element_number = to_int(columns(line1, 65, 68), "element number", 1);

    const int catalog2 = parse_catalog_number(columns(line2, 3, 7), 2);
    if (catalog2 != r.catalog_number) {
        throw FormatError(fmt::format("TLE catalog numbers differ between lines ({} vs {})",
                                      r.catalog_number, catalog2));
    }
    r.inclination = to_double(columns(line2, 9, 16), "inclination", 2);
    r.raan = to_double(columns(line2, 18, 25), "raan", 2);
    const auto ecc = trim(columns(line2, 27, 33));
    r.eccentricity = ecc.empty() ? 0.0 : to_double(fmt::format(".{}", ecc), "eccentricity", 2);
    r.arg_perigee = to_double(columns(line2, 35, 42), "argument of perigee", 2);
    r.mean_anomaly = to_double(columns(line2, 44, 51), "mean anomaly", 2);
    r.mean_motion = to_double(columns(line2, 53, 63), "mean motion", 2);
    r.revolution_number = to_int(columns(line2, 64, 68), "revolution number", 2);

    validate_elements(r);
    return r;
}

std::vector<TleRecord> parse_tle(std::string_view text, const TleParseOptions& options) {
    std::vector<std::string_view> lines;
    for (auto line : split_lines(text)) {
        if (!trim(line).empty()) {
            lines.push_back(line);
        }
    }

    std::vector<TleRecord> records;
    std::size_t i = 0;
    while (i < lines.size()) {
        std::string_view name;
        if (!looks_like_element_line(lines[i], '1')) {
            name = trim(lines[i]);
            if (name.size() >= 2 && name[0] == '0' && name[1] == ' ') {
                name = trim(name.substr(2));
            }
            ++i;
        }
        if (i + 1 >= lines.size() || !looks_like_element_line(lines[i], '1') ||
            !looks_like_element_line(lines[i + 1], '2')) {
            throw FormatError(fmt::format("incomplete TLE group near line {} ('{}')", i + 1,
                                          i < lines.size() ? lines[i] : std::string_view{"<eof>"}));
        }
        records.push_back(parse_tle_lines(lines[i], lines[i + 1], name, options));
        i += 2;
    }
    return records;
}

std::string format_tle(const TleRecord& r) {
    validate_elements(r);
    const int yy = r.epoch_year % 100;

    const auto ndot_digits = std::llround(std::fabs(r.mean_motion_dot) * 1e8);
    if (ndot_digits >= 100000000) {
        throw RangeError(fmt::format("mean motion derivative {} does not fit", r.mean_motion_dot));
    }
    std::string line1 = fmt::format(
        "1 {}{} {:<8} {:02d}{:012.8f} {}.{:08d} {} {} {:1d} {:4d}", format_catalog_number(r.catalog_number),
        r.classification, r.international_designator.substr(0, 8), yy, r.epoch_day,
        r.mean_motion_dot < 0 ? '-' : ' ', ndot_digits, format_implied_exponent(r.mean_motion_ddot),
        format_implied_exponent(r.bstar), r.ephemeris_type % 10, r.element_number % 10000);
    line1 += static_cast<char>('0' + tle_checksum(line1));

    const auto ecc_digits = std::llround(r.eccentricity * 1e7);
    std::string line2 = fmt::format("2 {} {:8.4f} {:8.4f} {:07d} {:8.4f} {:8.4f} {:11.8f}{:5d}",
                                    format_catalog_number(r.catalog_number), r.inclination, r.raan,
                                    ecc_digits, r.arg_perigee, r.mean_anomaly, r.mean_motion,
                                    r.revolution_number % 100000);
    line2 += static_cast<char>('0' + tle_checksum(line2));

    if (line1.size() != kLineLength || line2.size() != kLineLength) {
        throw RangeError(fmt::format("TLE {} does not fit the fixed columns", r.catalog_number));
    }
    std::string out;
    if (!r.name.empty()) {
        out += r.name;
        out += '\n';
    }
    out += line1;
    out += '\n';
    out += line2;
    out += '\n';
    return out;
}

std::vector<TleRecord> load_tle_file(const std::filesystem::path& path) {
    try {
        return parse_tle(read_file(path));
    } catch (const MissingFileError&) {
        throw;
    } catch (const ChecksumError& e) {
        throw ChecksumError(fmt::format("{}: {}", path.string(), e.what()));
    } catch (const RangeError& e) {
        throw RangeError(fmt::format("{}: {}", path.string(), e.what()));
    } catch (const FormatError& e) {
        throw FormatError(fmt::format("{}: {}", path.string(), e.what()));
    }
}

std::vector<GroundStation> parse_stations(std::string_view csv) {
    if (csv.size() >= 3 && csv.substr(0, 3) == "\xEF\xBB\xBF") {
        csv.remove_prefix(3);
    }
    const auto lines = split_lines(csv);
    std::size_t i = 0;
    while (i < lines.size() && trim(lines[i]).empty()) {
        ++i;
    }
    if (i == lines.size()) {
        throw FormatError("station CSV is empty (missing header)");
    }
    if (trim(lines[i]) != "id,lat_deg,lon_deg,alt_m,constellation") {
        throw FormatError(fmt::format("unexpected station CSV header '{}'", lines[i]));
    }

    std::vector<GroundStation> stations;
    for (++i; i < lines.size(); ++i) {
        const auto line = trim(lines[i]);
        if (line.empty()) {
            continue;
        }
        std::vector<std::string_view> fields;
        std::size_t pos = 0;
        while (true) {
            const auto comma = line.find(',', pos);
            fields.push_back(trim(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
            if (comma == std::string_view::npos) {
                break;
            }
            pos = comma + 1;
        }
        const auto row = static_cast<int>(i + 1);
        if (fields.size() != 5 || fields[0].empty() || fields[4].empty()) {
            throw FormatError(fmt::format("station CSV line {}: expected 5 non-empty fields", row));
        }
        const auto number = [&](std::string_view f, std::string_view what) {
            double v = 0.0;
            std::string buf{f};
            if (!buf.empty() && buf.front() == '+') {
                buf.erase(0, 1);
            }
            auto [ptr, ec] = std::from_chars(buf.data(), buf.data() + buf.size(), v);
            if (buf.empty() || ec != std::errc() || ptr != buf.data() + buf.size() || !std::isfinite(v)) {
                throw FormatError(fmt::format("station CSV line {}: malformed {} '{}'", row, what, f));
            }
            return v;
        };
        GroundStation gs;
        gs.id = std::string{fields[0]};
        gs.latitude_deg = number(fields[1], "latitude");
        gs.longitude_deg = number(fields[2], "longitude");
        gs.altitude_m = number(fields[3], "altitude");
        gs.constellation_id = std::string{fields[4]};
        if (gs.latitude_deg < -90.0 || gs.latitude_deg > 90.0) {
            throw RangeError(fmt::format("station '{}': latitude {} outside [-90, 90]", gs.id, gs.latitude_deg));
        }
        if (gs.longitude_deg <= -180.0 || gs.longitude_deg > 180.0) {
            throw RangeError(fmt::format("station '{}': longitude {} outside (-180, 180]", gs.id, gs.longitude_deg));
        }
        stations.push_back(std::move(gs));
    }
    return stations;
}

std::vector<GroundStation> load_stations(const std::filesystem::path& path) {
    try {
        return parse_stations(read_file(path));
    } catch (const RangeError& e) {
        throw RangeError(fmt::format("{}: {}", path.string(), e.what()));
    } catch (const FormatError& e) {
        throw FormatError(fmt::format("{}: {}", path.string(), e.what()));
    }
}

const Constellation& Scenario::constellation(std::string_view id) const {
    return constellations[constellation_index(id)];
}

std::size_t Scenario::constellation_index(std::string_view id) const {
    for (std::size_t i = 0; i < constellations.size(); ++i) {
        if (constellations[i].id == id) {
            return i;
        }
    }
    std::string known;
    for (const auto& c : constellations) {
        known += known.empty() ? c.id : ", " + c.id;
    }
    throw CrossReferenceError(fmt::format("unknown constellation '{}' (available: {})", id, known));
}

void validate_scenario(const Scenario& s) {
    if (s.span_end <= s.span_start) {
        throw FormatError(fmt::format("span end {} is not after span start {}", format_iso8601(s.span_end),
                                      format_iso8601(s.span_start)));
    }
    if (s.alpha_s < 1) {
        throw FormatError(fmt::format("alpha must be a whole number of seconds >= 1 (got {})", s.alpha_s));
    }
    if (s.coarse_step_s < 1) {
        throw FormatError(fmt::format("coarse step must be >= 1 s (got {})", s.coarse_step_s));
    }
    if (!std::isfinite(s.min_elevation_deg)) {
        throw FormatError("min_elevation must be finite");
    }
    std::set<std::string> ids;
    std::set<std::string> station_ids;
    for (const auto& c : s.constellations) {
        if (c.id.empty() || !ids.insert(c.id).second) {
            throw FormatError(fmt::format("constellation id '{}' is empty or duplicated", c.id));
        }
        std::set<std::string> sat_ids;
        for (const auto& tle : c.satellites) {
            if (!sat_ids.insert(satellite_id(tle)).second) {
                throw FormatError(fmt::format("constellation '{}': duplicate satellite id '{}'", c.id,
                                              satellite_id(tle)));
            }
        }
        for (const auto& gs : c.stations) {
            if (gs.constellation_id != c.id) {
                throw CrossReferenceError(fmt::format("station '{}' belongs to '{}' but is listed under '{}'",
                                                      gs.id, gs.constellation_id, c.id));
            }
            if (!station_ids.insert(gs.id).second) {
                throw FormatError(fmt::format("duplicate station id '{}'", gs.id));
            }
        }
    }
}

namespace {

std::vector<std::string> string_or_list(const nlohmann::json& j, std::string_view key) {
    std::vector<std::string> out;
    if (j.is_string()) {
        out.push_back(j.get<std::string>());
    } else if (j.is_array()) {
        for (const auto& item : j) {
            if (!item.is_string()) {
                throw FormatError(fmt::format("scenario: '{}' entries must be strings", key));
            }
            out.push_back(item.get<std::string>());
        }
    } else {
        throw FormatError(fmt::format("scenario: '{}' must be a string or a list of strings", key));
    }
    return out;
}

}  // namespace

Scenario load_scenario(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(fmt::format("{}: {}", path.string(), e.what()));
    }
    if (!doc.is_object()) {
        throw FormatError(fmt::format("{}: top level must be an object", path.string()));
    }

    const auto base = path.parent_path();
    const auto resolve = [&](const std::string& p) {
        const std::filesystem::path fp{p};
        return fp.is_absolute() ? fp : base / fp;
    };

    Scenario s;
    s.source = path;
    s.input_files.push_back(path);
    try {
        s.name = doc.value("name", path.stem().string());

        if (!doc.contains("span") || !doc["span"].is_object()) {
            throw FormatError("missing 'span' object");
        }
        const auto& span = doc["span"];
        s.span_start = parse_iso8601(span.at("start").get<std::string>());
        if (span.contains("end")) {
            s.span_end = parse_iso8601(span["end"].get<std::string>());
        } else if (span.contains("duration_hours")) {
            const double hours = span["duration_hours"].get<double>();
            s.span_end = s.span_start + Seconds{std::llround(hours * 3600.0)};
        } else {
            throw FormatError("'span' needs 'end' or 'duration_hours'");
        }

        if (doc.contains("alpha_s")) {
            if (!doc["alpha_s"].is_number_integer()) {
                throw FormatError("'alpha_s' must be a whole number of seconds");
            }
            s.alpha_s = doc["alpha_s"].get<int>();
        }
        s.min_elevation_deg = doc.value("min_elevation_deg", 0.0);
        if (doc.contains("coarse_step_s")) {
            s.coarse_step_s = doc["coarse_step_s"].get<int>();
        }

        if (!doc.contains("constellations") || !doc["constellations"].is_array()) {
            throw FormatError("missing 'constellations' list");
        }
        for (const auto& jc : doc["constellations"]) {
            Constellation c;
            c.id = jc.at("id").get<std::string>();
            for (const auto& file : string_or_list(jc.at("tle"), "tle")) {
                const auto p = resolve(file);
                auto sats = load_tle_file(p);
                s.input_files.push_back(p);
                c.satellites.insert(c.satellites.end(), sats.begin(), sats.end());
            }
            if (jc.contains("limit")) {
                const auto limit = jc["limit"].get<std::size_t>();
                if (c.satellites.size() > limit) {
                    c.satellites.resize(limit);
                }
            }
            s.constellations.push_back(std::move(c));
        }

        if (doc.contains("stations")) {
            for (const auto& file : string_or_list(doc["stations"], "stations")) {
                const auto p = resolve(file);
                for (auto& gs : load_stations(p)) {
                    auto it = std::find_if(s.constellations.begin(), s.constellations.end(),
                                           [&](const Constellation& c) { return c.id == gs.constellation_id; });
                    if (it == s.constellations.end()) {
                        throw CrossReferenceError(fmt::format("station '{}' names unknown constellation '{}'",
                                                              gs.id, gs.constellation_id));
                    }
                    it->stations.push_back(std::move(gs));
                }
                s.input_files.push_back(p);
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(fmt::format("{}: {}", path.string(), e.what()));
    } catch (const CrossReferenceError& e) {
        throw CrossReferenceError(fmt::format("{}: {}", path.string(), e.what()));
    } catch (const MissingFileError&) {
        throw;
    } catch (const FormatError& e) {
        throw FormatError(fmt::format("{}: {}", path.string(), e.what()));
    }

    validate_scenario(s);
    return s;
}

}  // namespace tsa
