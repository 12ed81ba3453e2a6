#include <tsa/frames.hpp>

#include <cmath>
#include <numbers>

namespace tsa {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kDeg = kPi / 180.0;

Vec3 geodetic_up(double lat_rad, double lon_rad) {
    return {std::cos(lat_rad) * std::cos(lon_rad), std::cos(lat_rad) * std::sin(lon_rad), std::sin(lat_rad)};
}

}  // namespace

double gmst(Instant t) {
    const double tu = seconds_since_j2000(t) / (36525.0 * 86400.0);
    double sec = 67310.54841 + (876600.0 * 3600.0 + 8640184.812866) * tu + 0.093104 * tu * tu -
                 6.2e-6 * tu * tu * tu;
    double rad = std::fmod(sec * kDeg / 240.0, kTwoPi);
    if (rad < 0.0) {
        rad += kTwoPi;
    }
    return rad;
}

Vec3 teme_to_ecef(const Vec3& r, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {c * r.x + s * r.y, -s * r.x + c * r.y, r.z};
}

Vec3 ecef_to_teme(const Vec3& r, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {c * r.x - s * r.y, s * r.x + c * r.y, r.z};
}

EcefPosition teme_to_ecef(const EciState& state) {
    return {state.t, teme_to_ecef(state.position, gmst(state.t))};
}

Vec3 geodetic_to_ecef(double latitude_deg, double longitude_deg, double altitude_km) {
    const double lat = latitude_deg * kDeg;
    const double lon = longitude_deg * kDeg;
    const double sl = std::sin(lat);
    const double n = wgs84::a / std::sqrt(1.0 - wgs84::e2 * sl * sl);
    return {(n + altitude_km) * std::cos(lat) * std::cos(lon), (n + altitude_km) * std::cos(lat) * std::sin(lon),
            (n * (1.0 - wgs84::e2) + altitude_km) * sl};
}

EcefPosition station_ecef(const GroundStation& gs) {
    return {Instant{}, geodetic_to_ecef(gs.latitude_deg, gs.longitude_deg, gs.altitude_m / 1000.0)};
}

Geodetic ecef_to_geodetic(const Vec3& r) {
    using namespace wgs84;
    const double ep2 = (a * a - b * b) / (b * b);
    const double p = std::hypot(r.x, r.y);
    Geodetic g;
    g.longitude_deg = std::atan2(r.y, r.x) / kDeg;
    if (p < 1e-12) {
        g.latitude_deg = r.z >= 0.0 ? 90.0 : -90.0;
        g.altitude_km = std::fabs(r.z) - b;
        return g;
    }
    // Bowring: iterate on the parametric latitude until it settles.
    double beta = std::atan2(r.z * a, p * b);
    double lat = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double sb = std::sin(beta);
        const double cb = std::cos(beta);
        lat = std::atan2(r.z + ep2 * b * sb * sb * sb, p - e2 * a * cb * cb * cb);
        const double next = std::atan2((1.0 - f) * std::sin(lat), std::cos(lat));
        if (std::fabs(next - beta) < 1e-15) {
            break;
        }
        beta = next;
    }
    const double sl = std::sin(lat);
    const double n = a / std::sqrt(1.0 - e2 * sl * sl);
    g.latitude_deg = lat / kDeg;
    g.altitude_km = std::fabs(lat) < kPi / 4 ? p / std::cos(lat) - n : r.z / sl - n * (1.0 - e2);
    return g;
}

double elevation_deg(const Vec3& site, const Vec3& target) {
    const Geodetic g = ecef_to_geodetic(site);
    const Vec3 up = geodetic_up(g.latitude_deg * kDeg, g.longitude_deg * kDeg);
    const Vec3 rho = target - site;
    const double along = dot(rho, up);
    const double across = norm(rho - up * along);
    return std::atan2(along, across) / kDeg;
}

double elevation_deg(const EcefPosition& site, const EcefPosition& target) {
    return elevation_deg(site.position, target.position);
}

StationFrame::StationFrame(const GroundStation& gs)
    : StationFrame(gs.latitude_deg, gs.longitude_deg, gs.altitude_m / 1000.0) {}

StationFrame::StationFrame(double latitude_deg, double longitude_deg, double altitude_km)
    : position_(geodetic_to_ecef(latitude_deg, longitude_deg, altitude_km)),
      up_(geodetic_up(latitude_deg * kDeg, longitude_deg * kDeg)) {}

double StationFrame::elevation_deg(const Vec3& target) const {
    const Vec3 rho = target - position_;
    const double along = dot(rho, up_);
    const double across = norm(rho - up_ * along);
    return std::atan2(along, across) / kDeg;
}

bool StationFrame::visible(const Vec3& target, double mask_deg) const {
    if (mask_deg > 90.0) {
        return false;
    }
    if (mask_deg < -90.0) {
        return true;
    }
    const Vec3 rho = target - position_;
    return dot(rho, up_) >= norm(rho) * std::sin(mask_deg * kDeg);
}

}  // namespace tsa
