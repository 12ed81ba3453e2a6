#pragma once

#include <tsa/catalog.hpp>
#include <tsa/sgp4.hpp>
#include <tsa/time.hpp>
#include <tsa/vec3.hpp>

namespace tsa {

struct EcefPosition {
    Instant t{};
    Vec3 position;  // km
};

struct Geodetic {
    double latitude_deg = 0.0;
    double longitude_deg = 0.0;
    double altitude_km = 0.0;
};

namespace wgs84 {
inline constexpr double a = 6378.137;                 // km
inline constexpr double f = 1.0 / 298.257223563;
inline constexpr double b = a * (1.0 - f);
inline constexpr double e2 = f * (2.0 - f);
}  // namespace wgs84

// Greenwich mean sidereal time (IAU 1982), radians in [0, 2pi). UT1 = UTC.
double gmst(Instant t);

// Rotation about z by -gmst(t).
Vec3 teme_to_ecef(const Vec3& teme, double gmst_rad);
Vec3 ecef_to_teme(const Vec3& ecef, double gmst_rad);
EcefPosition teme_to_ecef(const EciState& state);

Vec3 geodetic_to_ecef(double latitude_deg, double longitude_deg, double altitude_km);
EcefPosition station_ecef(const GroundStation& gs);

// Iterative inverse (Bowring's method).
Geodetic ecef_to_geodetic(const Vec3& ecef);

// Elevation of `target` above the geodetic horizon of `site` (both ECEF, km).
// The local up vector is the ellipsoid normal at the site's geodetic
// latitude/longitude.
double elevation_deg(const Vec3& site, const Vec3& target);
double elevation_deg(const EcefPosition& site, const EcefPosition& target);

// Precomputed topocentric frame of one station, used by the visibility
// kernels to test the mask without trigonometry per sample.
class StationFrame {
public:
    explicit StationFrame(const GroundStation& gs);
    StationFrame(double latitude_deg, double longitude_deg, double altitude_km);

    const Vec3& position() const { return position_; }
    const Vec3& up() const { return up_; }

    double elevation_deg(const Vec3& target_ecef) const;

    // elevation(target) >= mask_deg, evaluated as up.rho >= |rho| sin(mask).
    bool visible(const Vec3& target_ecef, double mask_deg) const;

private:
    Vec3 position_;
    Vec3 up_;
};

}  // namespace tsa
