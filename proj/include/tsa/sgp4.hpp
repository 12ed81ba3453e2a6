#pragma once

#include <tsa/catalog.hpp>
#include <tsa/time.hpp>
#include <tsa/vec3.hpp>

namespace tsa {

enum class GravityModel { wgs72old, wgs72, wgs84 };

// Position (km) and velocity (km/s) in the TEME frame.
struct EciState {
    Instant t{};
    Vec3 position;
    Vec3 velocity;
};

// SGP4/SDP4 propagator for one element set ("improved" operation mode).
// All state is fixed at construction, so one instance may be shared by any
// number of threads. The deep-space resonance integrator restarts from the
// epoch on every call, which yields the same values as the stepwise
// integrator of the reference implementation.
class Sgp4 {
public:
    explicit Sgp4(const TleRecord& tle, GravityModel gravity = GravityModel::wgs72);

    // Model error codes: 1 mean eccentricity out of range, 2 mean motion
    // not positive, 3 perturbed eccentricity out of range, 4 semi-latus
    // rectum negative, 6 orbit decayed.
    struct Result {
        int error = 0;
        Vec3 position;
        Vec3 velocity;
    };

    // Never throws; inspect Result::error.
    Result evaluate(double minutes_since_epoch) const noexcept;

    // Throws DecayError when the model reports an error.
    EciState propagate_minutes(double minutes_since_epoch) const;
    EciState propagate(Instant t) const;

    double minutes_since_epoch(Instant t) const;
    Instant epoch() const { return epoch_; }
    bool deep_space() const { return method_ == 'd'; }
    const TleRecord& tle() const { return tle_; }

    // Error code of the evaluation at the epoch itself (0 when healthy).
    int init_error() const { return init_error_; }

private:
    struct Gravity {
        double tumin, mu, radius, xke, j2, j3, j4, j3oj2;
    };
    struct Deep {
        double e3 = 0, ee2 = 0, se2 = 0, se3 = 0, sgh2 = 0, sgh3 = 0, sgh4 = 0, sh2 = 0, sh3 = 0;
        double si2 = 0, si3 = 0, sl2 = 0, sl3 = 0, sl4 = 0, xgh2 = 0, xgh3 = 0, xgh4 = 0;
        double xh2 = 0, xh3 = 0, xi2 = 0, xi3 = 0, xl2 = 0, xl3 = 0, xl4 = 0, zmol = 0, zmos = 0;
        int irez = 0;
        double d2201 = 0, d2211 = 0, d3210 = 0, d3222 = 0, d4410 = 0, d4422 = 0;
        double d5220 = 0, d5232 = 0, d5421 = 0, d5433 = 0;
        double dedt = 0, didt = 0, dmdt = 0, dnodt = 0, domdt = 0;
        double del1 = 0, del2 = 0, del3 = 0, xfact = 0, xlamo = 0;
    };

    void dpper(double t, double& ep, double& inclp, double& nodep, double& argpp, double& mp) const;
    void dspace(double t, double& em, double& argpm, double& inclm, double& mm, double& nodem,
                double& nm) const;

    TleRecord tle_;
    Instant epoch_{};
    Gravity g_{};
    Deep ds_{};
    char method_ = 'n';
    int isimp_ = 0;
    int init_error_ = 0;
    double epoch_days_ = 0.0;  // days since 1949-12-31 00:00 UTC
    double bstar_ = 0, ecco_ = 0, argpo_ = 0, inclo_ = 0, mo_ = 0, no_kozai_ = 0, nodeo_ = 0;
    double no_unkozai_ = 0, gsto_ = 0;
    double aycof_ = 0, con41_ = 0, cc1_ = 0, cc4_ = 0, cc5_ = 0, d2_ = 0, d3_ = 0, d4_ = 0;
    double delmo_ = 0, eta_ = 0, argpdot_ = 0, omgcof_ = 0, sinmao_ = 0;
    double t2cof_ = 0, t3cof_ = 0, t4cof_ = 0, t5cof_ = 0, x1mth2_ = 0, x7thm1_ = 0;
    double mdot_ = 0, nodedot_ = 0, xlcof_ = 0, xmcof_ = 0, nodecf_ = 0;
};

// Convenience wrapper: builds a propagator and evaluates it once.
EciState propagate_teme(const TleRecord& tle, Instant t);

}  // namespace tsa
