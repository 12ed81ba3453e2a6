#include <tsa/sgp4.hpp>

#include <tsa/errors.hpp>

#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace tsa {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double twopi = 2.0 * pi;
constexpr double deg2rad = pi / 180.0;
constexpr double x2o3 = 2.0 / 3.0;
constexpr double xpdotp = 1440.0 / twopi;  // rev/day -> rad/min

// GMST in the form used by the propagator itself (input is a UT1 Julian date).
double gstime(double jdut1) {
    const double tut1 = (jdut1 - 2451545.0) / 36525.0;
    double temp = -6.2e-6 * tut1 * tut1 * tut1 + 0.093104 * tut1 * tut1 +
                  (876600.0 * 3600 + 8640184.812866) * tut1 + 67310.54841;
    temp = std::fmod(temp * deg2rad / 240.0, twopi);
    if (temp < 0.0) {
        temp += twopi;
    }
    return temp;
}

// Values produced by the deep-space common block and consumed by dsinit.
struct Dscom {
    double snodm, cnodm, sinim, cosim, sinomm, cosomm, day, em, emsq, gam, rtemsq, nm;
    double s1, s2, s3, s4, s5, s6, s7, ss1, ss2, ss3, ss4, ss5, ss6, ss7;
    double sz1, sz2, sz3, sz11, sz12, sz13, sz21, sz22, sz23, sz31, sz32, sz33;
    double z1, z2, z3, z11, z12, z13, z21, z22, z23, z31, z32, z33;
};

}  // namespace

Sgp4::Sgp4(const TleRecord& tle, GravityModel gravity) : tle_(tle), epoch_(tle.epoch()) {
    switch (gravity) {
        case GravityModel::wgs72old:
            g_.mu = 398600.79964;
            g_.radius = 6378.135;
            g_.xke = 0.0743669161;
            g_.j2 = 0.001082616;
            g_.j3 = -0.00000253881;
            g_.j4 = -0.00000165597;
            break;
        case GravityModel::wgs72:
            g_.mu = 398600.8;
            g_.radius = 6378.135;
            g_.xke = 60.0 / std::sqrt(g_.radius * g_.radius * g_.radius / g_.mu);
            g_.j2 = 0.001082616;
            g_.j3 = -0.00000253881;
            g_.j4 = -0.00000165597;
            break;
        case GravityModel::wgs84:
            g_.mu = 398600.5;
            g_.radius = 6378.137;
            g_.xke = 60.0 / std::sqrt(g_.radius * g_.radius * g_.radius / g_.mu);
            g_.j2 = 0.00108262998905;
            g_.j3 = -0.00000253215306;
            g_.j4 = -0.00000161098761;
            break;
    }
    g_.tumin = 1.0 / g_.xke;
    g_.j3oj2 = g_.j3 / g_.j2;

    // Epoch as the reference code forms it: midnight Julian date of Jan 1
    // plus the day-of-year offset, relative to 1949-12-31 00:00.
    {
        using namespace std::chrono;
        const sys_days jan1{year{tle.epoch_year} / 1 / 1};
        const double jd_jan1 = 2440587.5 + static_cast<double>(jan1.time_since_epoch().count());
        epoch_days_ = (jd_jan1 - 2433281.5) + (tle.epoch_day - 1.0);
    }

    bstar_ = tle.bstar;
    ecco_ = tle.eccentricity;
    argpo_ = tle.arg_perigee * deg2rad;
    inclo_ = tle.inclination * deg2rad;
    mo_ = tle.mean_anomaly * deg2rad;
    no_kozai_ = tle.mean_motion / xpdotp;
    nodeo_ = tle.raan * deg2rad;

    // Outside the model domain the initialization formulas divide by zero;
    // report it the way the propagator reports a mean-element failure.
    if (!(ecco_ >= 0.0 && ecco_ < 1.0)) {
        init_error_ = 1;
        return;
    }
    if (!(no_kozai_ > 0.0)) {
        init_error_ = 2;
        return;
    }

    const double ss = 78.0 / g_.radius + 1.0;
    const double qzms2ttemp = (120.0 - 78.0) / g_.radius;
    const double qzms2t = qzms2ttemp * qzms2ttemp * qzms2ttemp * qzms2ttemp;

    // initl
    const double eccsq = ecco_ * ecco_;
    const double omeosq = 1.0 - eccsq;
    const double rteosq = std::sqrt(omeosq);
    const double cosio = std::cos(inclo_);
    const double cosio2 = cosio * cosio;
    const double ak = std::pow(g_.xke / no_kozai_, x2o3);
    const double d1 = 0.75 * g_.j2 * (3.0 * cosio2 - 1.0) / (rteosq * omeosq);
    double del = d1 / (ak * ak);
    const double adel = ak * (1.0 - del * del - del * (1.0 / 3.0 + 134.0 * del * del / 81.0));
    del = d1 / (adel * adel);
    no_unkozai_ = no_kozai_ / (1.0 + del);
    const double ao = std::pow(g_.xke / no_unkozai_, x2o3);
    const double sinio = std::sin(inclo_);
    const double po = ao * omeosq;
    const double con42 = 1.0 - 5.0 * cosio2;
    con41_ = -con42 - cosio2 - cosio2;
    const double posq = po * po;
    const double rp = ao * (1.0 - ecco_);
    gsto_ = gstime(epoch_days_ + 2433281.5);

    if (omeosq >= 0.0 || no_unkozai_ >= 0.0) {
        isimp_ = rp < (220.0 / g_.radius + 1.0) ? 1 : 0;
        double sfour = ss;
        double qzms24 = qzms2t;
        const double perige = (rp - 1.0) * g_.radius;
        if (perige < 156.0) {
            sfour = perige - 78.0;
            if (perige < 98.0) {
                sfour = 20.0;
            }
            const double qzms24temp = (120.0 - sfour) / g_.radius;
            qzms24 = qzms24temp * qzms24temp * qzms24temp * qzms24temp;
            sfour = sfour / g_.radius + 1.0;
        }
        const double pinvsq = 1.0 / posq;
        const double tsi = 1.0 / (ao - sfour);
        eta_ = ao * ecco_ * tsi;
        const double etasq = eta_ * eta_;
        const double eeta = ecco_ * eta_;
        const double psisq = std::fabs(1.0 - etasq);
        const double coef = qzms24 * std::pow(tsi, 4.0);
        const double coef1 = coef / std::pow(psisq, 3.5);
        const double cc2 = coef1 * no_unkozai_ *
                           (ao * (1.0 + 1.5 * etasq + eeta * (4.0 + etasq)) +
                            0.375 * g_.j2 * tsi / psisq * con41_ * (8.0 + 3.0 * etasq * (8.0 + etasq)));
        cc1_ = bstar_ * cc2;
        double cc3 = 0.0;
        if (ecco_ > 1.0e-4) {
            cc3 = -2.0 * coef * tsi * g_.j3oj2 * no_unkozai_ * sinio / ecco_;
        }
        x1mth2_ = 1.0 - cosio2;
        cc4_ = 2.0 * no_unkozai_ * coef1 * ao * omeosq *
               (eta_ * (2.0 + 0.5 * etasq) + ecco_ * (0.5 + 2.0 * etasq) -
                g_.j2 * tsi / (ao * psisq) *
                    (-3.0 * con41_ * (1.0 - 2.0 * eeta + etasq * (1.5 - 0.5 * eeta)) +
                     0.75 * x1mth2_ * (2.0 * etasq - eeta * (1.0 + etasq)) * std::cos(2.0 * argpo_)));
        cc5_ = 2.0 * coef1 * ao * omeosq * (1.0 + 2.75 * (etasq + eeta) + eeta * etasq);
        const double cosio4 = cosio2 * cosio2;
        const double temp1 = 1.5 * g_.j2 * pinvsq * no_unkozai_;
        const double temp2 = 0.5 * temp1 * g_.j2 * pinvsq;
        const double temp3 = -0.46875 * g_.j4 * pinvsq * pinvsq * no_unkozai_;
        mdot_ = no_unkozai_ + 0.5 * temp1 * rteosq * con41_ +
                0.0625 * temp2 * rteosq * (13.0 - 78.0 * cosio2 + 137.0 * cosio4);
        argpdot_ = -0.5 * temp1 * con42 + 0.0625 * temp2 * (7.0 - 114.0 * cosio2 + 395.0 * cosio4) +
                   temp3 * (3.0 - 36.0 * cosio2 + 49.0 * cosio4);
        const double xhdot1 = -temp1 * cosio;
        nodedot_ = xhdot1 + (0.5 * temp2 * (4.0 - 19.0 * cosio2) + 2.0 * temp3 * (3.0 - 7.0 * cosio2)) * cosio;
        const double xpidot = argpdot_ + nodedot_;
        omgcof_ = bstar_ * cc3 * std::cos(argpo_);
        xmcof_ = 0.0;
        if (ecco_ > 1.0e-4) {
            xmcof_ = -x2o3 * coef * bstar_ / eeta;
        }
        nodecf_ = 3.5 * omeosq * xhdot1 * cc1_;
        t2cof_ = 1.5 * cc1_;
        if (std::fabs(cosio + 1.0) > 1.5e-12) {
            xlcof_ = -0.25 * g_.j3oj2 * sinio * (3.0 + 5.0 * cosio) / (1.0 + cosio);
        } else {
            xlcof_ = -0.25 * g_.j3oj2 * sinio * (3.0 + 5.0 * cosio) / 1.5e-12;
        }
        aycof_ = -0.5 * g_.j3oj2 * sinio;
        const double delmotemp = 1.0 + eta_ * std::cos(mo_);
        delmo_ = delmotemp * delmotemp * delmotemp;
        sinmao_ = std::sin(mo_);
        x7thm1_ = 7.0 * cosio2 - 1.0;

        if ((twopi / no_unkozai_) >= 225.0) {
            method_ = 'd';
            isimp_ = 1;
            const double tc = 0.0;

            // dscom
            Dscom c{};
            {
                constexpr double zes = 0.01675;
                constexpr double zel = 0.05490;
                constexpr double c1ss = 2.9864797e-6;
                constexpr double c1l = 4.7968065e-7;
                constexpr double zsinis = 0.39785416;
                constexpr double zcosis = 0.91744867;
                constexpr double zcosgs = 0.1945905;
                constexpr double zsings = -0.98088458;

                c.nm = no_unkozai_;
                c.em = ecco_;
                c.snodm = std::sin(nodeo_);
                c.cnodm = std::cos(nodeo_);
                c.sinomm = std::sin(argpo_);
                c.cosomm = std::cos(argpo_);
                c.sinim = std::sin(inclo_);
                c.cosim = std::cos(inclo_);
                c.emsq = c.em * c.em;
                const double betasq = 1.0 - c.emsq;
                c.rtemsq = std::sqrt(betasq);

                c.day = epoch_days_ + 18261.5 + tc / 1440.0;
                const double xnodce = std::fmod(4.5236020 - 9.2422029e-4 * c.day, twopi);
                const double stem = std::sin(xnodce);
                const double ctem = std::cos(xnodce);
                const double zcosil = 0.91375164 - 0.03568096 * ctem;
                const double zsinil = std::sqrt(1.0 - zcosil * zcosil);
                const double zsinhl = 0.089683511 * stem / zsinil;
                const double zcoshl = std::sqrt(1.0 - zsinhl * zsinhl);
                c.gam = 5.8351514 + 0.0019443680 * c.day;
                double zx = 0.39785416 * stem / zsinil;
                const double zy = zcoshl * ctem + 0.91744867 * zsinhl * stem;
                zx = std::atan2(zx, zy);
                zx = c.gam + zx - xnodce;
                const double zcosgl = std::cos(zx);
                const double zsingl = std::sin(zx);

                double zcosg = zcosgs;
                double zsing = zsings;
                double zcosi = zcosis;
                double zsini = zsinis;
                double zcosh = c.cnodm;
                double zsinh = c.snodm;
                double cc = c1ss;
                const double xnoi = 1.0 / c.nm;

                for (int lsflg = 1; lsflg <= 2; ++lsflg) {
                    const double a1 = zcosg * zcosh + zsing * zcosi * zsinh;
                    const double a3 = -zsing * zcosh + zcosg * zcosi * zsinh;
                    const double a7 = -zcosg * zsinh + zsing * zcosi * zcosh;
                    const double a8 = zsing * zsini;
                    const double a9 = zsing * zsinh + zcosg * zcosi * zcosh;
                    const double a10 = zcosg * zsini;
                    const double a2 = c.cosim * a7 + c.sinim * a8;
                    const double a4 = c.cosim * a9 + c.sinim * a10;
                    const double a5 = -c.sinim * a7 + c.cosim * a8;
                    const double a6 = -c.sinim * a9 + c.cosim * a10;

                    const double x1 = a1 * c.cosomm + a2 * c.sinomm;
                    const double x2 = a3 * c.cosomm + a4 * c.sinomm;
                    const double x3 = -a1 * c.sinomm + a2 * c.cosomm;
                    const double x4 = -a3 * c.sinomm + a4 * c.cosomm;
                    const double x5 = a5 * c.sinomm;
                    const double x6 = a6 * c.sinomm;
                    const double x7 = a5 * c.cosomm;
                    const double x8 = a6 * c.cosomm;

                    c.z31 = 12.0 * x1 * x1 - 3.0 * x3 * x3;
                    c.z32 = 24.0 * x1 * x2 - 6.0 * x3 * x4;
                    c.z33 = 12.0 * x2 * x2 - 3.0 * x4 * x4;
                    c.z1 = 3.0 * (a1 * a1 + a2 * a2) + c.z31 * c.emsq;
                    c.z2 = 6.0 * (a1 * a3 + a2 * a4) + c.z32 * c.emsq;
                    c.z3 = 3.0 * (a3 * a3 + a4 * a4) + c.z33 * c.emsq;
                    c.z11 = -6.0 * a1 * a5 + c.emsq * (-24.0 * x1 * x7 - 6.0 * x3 * x5);
                    c.z12 = -6.0 * (a1 * a6 + a3 * a5) +
                            c.emsq * (-24.0 * (x2 * x7 + x1 * x8) - 6.0 * (x3 * x6 + x4 * x5));
                    c.z13 = -6.0 * a3 * a6 + c.emsq * (-24.0 * x2 * x8 - 6.0 * x4 * x6);
                    c.z21 = 6.0 * a2 * a5 + c.emsq * (24.0 * x1 * x5 - 6.0 * x3 * x7);
                    c.z22 = 6.0 * (a4 * a5 + a2 * a6) +
                            c.emsq * (24.0 * (x2 * x5 + x1 * x6) - 6.0 * (x4 * x7 + x3 * x8));
                    c.z23 = 6.0 * a4 * a6 + c.emsq * (24.0 * x2 * x6 - 6.0 * x4 * x8);
                    c.z1 = c.z1 + c.z1 + betasq * c.z31;
                    c.z2 = c.z2 + c.z2 + betasq * c.z32;
                    c.z3 = c.z3 + c.z3 + betasq * c.z33;
                    c.s3 = cc * xnoi;
                    c.s2 = -0.5 * c.s3 / c.rtemsq;
                    c.s4 = c.s3 * c.rtemsq;
                    c.s1 = -15.0 * c.em * c.s4;
                    c.s5 = x1 * x3 + x2 * x4;
                    c.s6 = x2 * x3 + x1 * x4;
                    c.s7 = x2 * x4 - x1 * x3;

                    if (lsflg == 1) {
                        c.ss1 = c.s1;
                        c.ss2 = c.s2;
                        c.ss3 = c.s3;
                        c.ss4 = c.s4;
                        c.ss5 = c.s5;
                        c.ss6 = c.s6;
                        c.ss7 = c.s7;
                        c.sz1 = c.z1;
                        c.sz2 = c.z2;
                        c.sz3 = c.z3;
                        c.sz11 = c.z11;
                        c.sz12 = c.z12;
                        c.sz13 = c.z13;
                        c.sz21 = c.z21;
                        c.sz22 = c.z22;
                        c.sz23 = c.z23;
                        c.sz31 = c.z31;
                        c.sz32 = c.z32;
                        c.sz33 = c.z33;
                        zcosg = zcosgl;
                        zsing = zsingl;
                        zcosi = zcosil;
                        zsini = zsinil;
                        zcosh = zcoshl * c.cnodm + zsinhl * c.snodm;
                        zsinh = c.snodm * zcoshl - c.cnodm * zsinhl;
                        cc = c1l;
                    }
                }

                ds_.zmol = std::fmod(4.7199672 + 0.22997150 * c.day - c.gam, twopi);
                ds_.zmos = std::fmod(6.2565837 + 0.017201977 * c.day, twopi);

                ds_.se2 = 2.0 * c.ss1 * c.ss6;
                ds_.se3 = 2.0 * c.ss1 * c.ss7;
                ds_.si2 = 2.0 * c.ss2 * c.sz12;
                ds_.si3 = 2.0 * c.ss2 * (c.sz13 - c.sz11);
                ds_.sl2 = -2.0 * c.ss3 * c.sz2;
                ds_.sl3 = -2.0 * c.ss3 * (c.sz3 - c.sz1);
                ds_.sl4 = -2.0 * c.ss3 * (-21.0 - 9.0 * c.emsq) * zes;
                ds_.sgh2 = 2.0 * c.ss4 * c.sz32;
                ds_.sgh3 = 2.0 * c.ss4 * (c.sz33 - c.sz31);
                ds_.sgh4 = -18.0 * c.ss4 * zes;
                ds_.sh2 = -2.0 * c.ss2 * c.sz22;
                ds_.sh3 = -2.0 * c.ss2 * (c.sz23 - c.sz21);

                ds_.ee2 = 2.0 * c.s1 * c.s6;
                ds_.e3 = 2.0 * c.s1 * c.s7;
                ds_.xi2 = 2.0 * c.s2 * c.z12;
                ds_.xi3 = 2.0 * c.s2 * (c.z13 - c.z11);
                ds_.xl2 = -2.0 * c.s3 * c.z2;
                ds_.xl3 = -2.0 * c.s3 * (c.z3 - c.z1);
                ds_.xl4 = -2.0 * c.s3 * (-21.0 - 9.0 * c.emsq) * zel;
                ds_.xgh2 = 2.0 * c.s4 * c.z32;
                ds_.xgh3 = 2.0 * c.s4 * (c.z33 - c.z31);
                ds_.xgh4 = -18.0 * c.s4 * zel;
                ds_.xh2 = -2.0 * c.s2 * c.z22;
                ds_.xh3 = -2.0 * c.s2 * (c.z23 - c.z21);
            }

            // The init-time periodics call leaves the elements untouched in
            // this version of the model, so it is omitted.

            // dsinit
            {
                constexpr double q22 = 1.7891679e-6;
                constexpr double q31 = 2.1460748e-6;
                constexpr double q33 = 2.2123015e-7;
                constexpr double root22 = 1.7891679e-6;
                constexpr double root44 = 7.3636953e-9;
                constexpr double root54 = 2.1765803e-9;
                constexpr double rptim = 4.37526908801129966e-3;
                constexpr double root32 = 3.7393792e-7;
                constexpr double root52 = 1.1428639e-7;
                constexpr double znl = 1.5835218e-4;
                constexpr double zns = 1.19459e-5;

                double em = c.em;
                double emsq = c.emsq;
                const double inclm = inclo_;
                const double nm = c.nm;
                const double cosim = c.cosim;
                const double sinim = c.sinim;

                ds_.irez = 0;
                if (nm < 0.0052359877 && nm > 0.0034906585) {
                    ds_.irez = 1;
                }
                if (nm >= 8.26e-3 && nm <= 9.24e-3 && em >= 0.5) {
                    ds_.irez = 2;
                }

                const double ses = c.ss1 * zns * c.ss5;
                const double sis = c.ss2 * zns * (c.sz11 + c.sz13);
                const double sls = -zns * c.ss3 * (c.sz1 + c.sz3 - 14.0 - 6.0 * emsq);
                const double sghs = c.ss4 * zns * (c.sz31 + c.sz33 - 6.0);
                double shs = -zns * c.ss2 * (c.sz21 + c.sz23);
                if (inclm < 5.2359877e-2 || inclm > pi - 5.2359877e-2) {
                    shs = 0.0;
                }
                if (sinim != 0.0) {
                    shs = shs / sinim;
                }
                const double sgs = sghs - cosim * shs;

                ds_.dedt = ses + c.s1 * znl * c.s5;
                ds_.didt = sis + c.s2 * znl * (c.z11 + c.z13);
                ds_.dmdt = sls - znl * c.s3 * (c.z1 + c.z3 - 14.0 - 6.0 * emsq);
                const double sghl = c.s4 * znl * (c.z31 + c.z33 - 6.0);
                double shll = -znl * c.s2 * (c.z21 + c.z23);
                if (inclm < 5.2359877e-2 || inclm > pi - 5.2359877e-2) {
                    shll = 0.0;
                }
                ds_.domdt = sgs + sghl;
                ds_.dnodt = shs;
                if (sinim != 0.0) {
                    ds_.domdt = ds_.domdt - cosim / sinim * shll;
                    ds_.dnodt = ds_.dnodt + shll / sinim;
                }

                const double theta = std::fmod(gsto_ + tc * rptim, twopi);
                // At t = 0 the secular updates of em, inclm, ... are no-ops.

                if (ds_.irez != 0) {
                    const double aonv = std::pow(nm / g_.xke, x2o3);

                    if (ds_.irez == 2) {
                        const double cosisq = cosim * cosim;
                        const double emo = em;
                        em = ecco_;
                        const double emsqo = emsq;
                        emsq = eccsq;
                        const double eoc = em * emsq;
                        const double g201 = -0.306 - (em - 0.64) * 0.440;
                        double g211, g310, g322, g410, g422, g520, g521, g532, g533;
                        if (em <= 0.65) {
                            g211 = 3.616 - 13.2470 * em + 16.2900 * emsq;
                            g310 = -19.302 + 117.3900 * em - 228.4190 * emsq + 156.5910 * eoc;
                            g322 = -18.9068 + 109.7927 * em - 214.6334 * emsq + 146.5816 * eoc;
                            g410 = -41.122 + 242.6940 * em - 471.0940 * emsq + 313.9530 * eoc;
                            g422 = -146.407 + 841.8800 * em - 1629.014 * emsq + 1083.4350 * eoc;
                            g520 = -532.114 + 3017.977 * em - 5740.032 * emsq + 3708.2760 * eoc;
                        } else {
                            g211 = -72.099 + 331.819 * em - 508.738 * emsq + 266.724 * eoc;
                            g310 = -346.844 + 1582.851 * em - 2415.925 * emsq + 1246.113 * eoc;
                            g322 = -342.585 + 1554.908 * em - 2366.899 * emsq + 1215.972 * eoc;
                            g410 = -1052.797 + 4758.686 * em - 7193.992 * emsq + 3651.957 * eoc;
                            g422 = -3581.690 + 16178.110 * em - 24462.770 * emsq + 12422.520 * eoc;
                            if (em > 0.715) {
                                g520 = -5149.66 + 29936.92 * em - 54087.36 * emsq + 31324.56 * eoc;
                            } else {
                                g520 = 1464.74 - 4664.75 * em + 3763.64 * emsq;
                            }
                        }
                        if (em < 0.7) {
                            g533 = -919.22770 + 4988.6100 * em - 9064.7700 * emsq + 5542.21 * eoc;
                            g521 = -822.71072 + 4568.6173 * em - 8491.4146 * emsq + 5337.524 * eoc;
                            g532 = -853.66600 + 4690.2500 * em - 8624.7700 * emsq + 5341.4 * eoc;
                        } else {
                            g533 = -37995.780 + 161616.52 * em - 229838.20 * emsq + 109377.94 * eoc;
                            g521 = -51752.104 + 218913.95 * em - 309468.16 * emsq + 146349.42 * eoc;
                            g532 = -40023.880 + 170470.89 * em - 242699.48 * emsq + 115605.82 * eoc;
                        }

                        const double sini2 = sinim * sinim;
                        const double f220 = 0.75 * (1.0 + 2.0 * cosim + cosisq);
                        const double f221 = 1.5 * sini2;
                        const double f321 = 1.875 * sinim * (1.0 - 2.0 * cosim - 3.0 * cosisq);
                        const double f322 = -1.875 * sinim * (1.0 + 2.0 * cosim - 3.0 * cosisq);
                        const double f441 = 35.0 * sini2 * f220;
                        const double f442 = 39.3750 * sini2 * sini2;
                        const double f522 = 9.84375 * sinim *
                                            (sini2 * (1.0 - 2.0 * cosim - 5.0 * cosisq) +
                                             0.33333333 * (-2.0 + 4.0 * cosim + 6.0 * cosisq));
                        const double f523 = sinim * (4.92187512 * sini2 * (-2.0 - 4.0 * cosim + 10.0 * cosisq) +
                                                     6.56250012 * (1.0 + 2.0 * cosim - 3.0 * cosisq));
                        const double f542 = 29.53125 * sinim *
                                            (2.0 - 8.0 * cosim + cosisq * (-12.0 + 8.0 * cosim + 10.0 * cosisq));
                        const double f543 = 29.53125 * sinim *
                                            (-2.0 - 8.0 * cosim + cosisq * (12.0 + 8.0 * cosim - 10.0 * cosisq));
                        const double xno2 = nm * nm;
                        const double ainv2 = aonv * aonv;
                        double temp1 = 3.0 * xno2 * ainv2;
                        double temp = temp1 * root22;
                        ds_.d2201 = temp * f220 * g201;
                        ds_.d2211 = temp * f221 * g211;
                        temp1 = temp1 * aonv;
                        temp = temp1 * root32;
                        ds_.d3210 = temp * f321 * g310;
                        ds_.d3222 = temp * f322 * g322;
                        temp1 = temp1 * aonv;
                        temp = 2.0 * temp1 * root44;
                        ds_.d4410 = temp * f441 * g410;
                        ds_.d4422 = temp * f442 * g422;
                        temp1 = temp1 * aonv;
                        temp = temp1 * root52;
                        ds_.d5220 = temp * f522 * g520;
                        ds_.d5232 = temp * f523 * g532;
                        temp = 2.0 * temp1 * root54;
                        ds_.d5421 = temp * f542 * g521;
                        ds_.d5433 = temp * f543 * g533;
                        ds_.xlamo = std::fmod(mo_ + nodeo_ + nodeo_ - theta - theta, twopi);
                        ds_.xfact = mdot_ + ds_.dmdt + 2.0 * (nodedot_ + ds_.dnodt - rptim) - no_unkozai_;
                        em = emo;
                        emsq = emsqo;
                    }

                    if (ds_.irez == 1) {
                        const double g200 = 1.0 + emsq * (-2.5 + 0.8125 * emsq);
                        const double g310 = 1.0 + 2.0 * emsq;
                        const double g300 = 1.0 + emsq * (-6.0 + 6.60937 * emsq);
                        const double f220 = 0.75 * (1.0 + cosim) * (1.0 + cosim);
                        const double f311 = 0.9375 * sinim * sinim * (1.0 + 3.0 * cosim) - 0.75 * (1.0 + cosim);
                        double f330 = 1.0 + cosim;
                        f330 = 1.875 * f330 * f330 * f330;
                        ds_.del1 = 3.0 * nm * nm * aonv * aonv;
                        ds_.del2 = 2.0 * ds_.del1 * f220 * g200 * q22;
                        ds_.del3 = 3.0 * ds_.del1 * f330 * g300 * q33 * aonv;
                        ds_.del1 = ds_.del1 * f311 * g310 * q31 * aonv;
                        ds_.xlamo = std::fmod(mo_ + nodeo_ + argpo_ - theta, twopi);
                        ds_.xfact = mdot_ + xpidot - rptim + ds_.dmdt + ds_.domdt + ds_.dnodt - no_unkozai_;
                    }
                }
            }
        }

        if (isimp_ != 1) {
            const double cc1sq = cc1_ * cc1_;
            d2_ = 4.0 * ao * tsi * cc1sq;
            const double temp = d2_ * tsi * cc1_ / 3.0;
            d3_ = (17.0 * ao + sfour) * temp;
            d4_ = 0.5 * temp * ao * tsi * (221.0 * ao + 31.0 * sfour) * cc1_;
            t3cof_ = d2_ + 2.0 * cc1sq;
            t4cof_ = 0.25 * (3.0 * d3_ + cc1_ * (12.0 * d2_ + 10.0 * cc1sq));
            t5cof_ = 0.2 * (3.0 * d4_ + 12.0 * cc1_ * d3_ + 6.0 * d2_ * d2_ + 15.0 * cc1sq * (2.0 * d2_ + cc1sq));
        }
    }

    init_error_ = evaluate(0.0).error;
}

void Sgp4::dpper(double t, double& ep, double& inclp, double& nodep, double& argpp, double& mp) const {
    constexpr double zns = 1.19459e-5;
    constexpr double zes = 0.01675;
    constexpr double znl = 1.5835218e-4;
    constexpr double zel = 0.05490;
    const Deep& d = ds_;

    double zm = d.zmos + zns * t;
    double zf = zm + 2.0 * zes * std::sin(zm);
    double sinzf = std::sin(zf);
    double f2 = 0.5 * sinzf * sinzf - 0.25;
    double f3 = -0.5 * sinzf * std::cos(zf);
    const double ses = d.se2 * f2 + d.se3 * f3;
    const double sis = d.si2 * f2 + d.si3 * f3;
    const double sls = d.sl2 * f2 + d.sl3 * f3 + d.sl4 * sinzf;
    const double sghs = d.sgh2 * f2 + d.sgh3 * f3 + d.sgh4 * sinzf;
    const double shs = d.sh2 * f2 + d.sh3 * f3;

    zm = d.zmol + znl * t;
    zf = zm + 2.0 * zel * std::sin(zm);
    sinzf = std::sin(zf);
    f2 = 0.5 * sinzf * sinzf - 0.25;
    f3 = -0.5 * sinzf * std::cos(zf);
    const double sel = d.ee2 * f2 + d.e3 * f3;
    const double sil = d.xi2 * f2 + d.xi3 * f3;
    const double sll = d.xl2 * f2 + d.xl3 * f3 + d.xl4 * sinzf;
    const double sghl = d.xgh2 * f2 + d.xgh3 * f3 + d.xgh4 * sinzf;
    const double shll = d.xh2 * f2 + d.xh3 * f3;

    // The epoch offsets (peo, pinco, ...) are zero in this version of the model.
    const double pe = ses + sel;
    const double pinc = sis + sil;
    const double pl = sls + sll;
    double pgh = sghs + sghl;
    double ph = shs + shll;

    inclp = inclp + pinc;
    ep = ep + pe;
    const double sinip = std::sin(inclp);
    const double cosip = std::cos(inclp);

    if (inclp >= 0.2) {
        ph = ph / sinip;
        pgh = pgh - cosip * ph;
        argpp = argpp + pgh;
        nodep = nodep + ph;
        mp = mp + pl;
    } else {
        // Lyddane modification for low inclination
        const double sinop = std::sin(nodep);
        const double cosop = std::cos(nodep);
        double alfdp = sinip * sinop;
        double betdp = sinip * cosop;
        const double dalf = ph * cosop + pinc * cosip * sinop;
        const double dbet = -ph * sinop + pinc * cosip * cosop;
        alfdp = alfdp + dalf;
        betdp = betdp + dbet;
        nodep = std::fmod(nodep, twopi);
        double xls = mp + argpp + cosip * nodep;
        const double dls = pl + pgh - pinc * nodep * sinip;
        xls = xls + dls;
        const double xnoh = nodep;
        nodep = std::atan2(alfdp, betdp);
        if (std::fabs(xnoh - nodep) > pi) {
            if (nodep < xnoh) {
                nodep = nodep + twopi;
            } else {
                nodep = nodep - twopi;
            }
        }
        mp = mp + pl;
        argpp = xls - mp - cosip * nodep;
    }
}

void Sgp4::dspace(double t, double& em, double& argpm, double& inclm, double& mm, double& nodem,
                  double& nm) const {
    constexpr double fasx2 = 0.13130908;
    constexpr double fasx4 = 2.8843198;
    constexpr double fasx6 = 0.37448087;
    constexpr double g22 = 5.7686396;
    constexpr double g32 = 0.95240898;
    constexpr double g44 = 1.8014998;
    constexpr double g52 = 1.0508330;
    constexpr double g54 = 4.4108898;
    constexpr double rptim = 4.37526908801129966e-3;
    constexpr double stepp = 720.0;
    constexpr double stepn = -720.0;
    constexpr double step2 = 259200.0;
    const Deep& d = ds_;

    const double theta = std::fmod(gsto_ + t * rptim, twopi);
    em = em + d.dedt * t;
    inclm = inclm + d.didt * t;
    argpm = argpm + d.domdt * t;
    nodem = nodem + d.dnodt * t;
    mm = mm + d.dmdt * t;

    if (d.irez == 0) {
        return;
    }

    double atime = 0.0;
    double xni = no_unkozai_;
    double xli = d.xlamo;
    const double delt = t > 0.0 ? stepp : stepn;
    double ft = 0.0;
    double xndt = 0.0;
    double xldot = 0.0;
    double xnddt = 0.0;

    while (true) {
        if (d.irez != 2) {
            xndt = d.del1 * std::sin(xli - fasx2) + d.del2 * std::sin(2.0 * (xli - fasx4)) +
                   d.del3 * std::sin(3.0 * (xli - fasx6));
            xldot = xni + d.xfact;
            xnddt = d.del1 * std::cos(xli - fasx2) + 2.0 * d.del2 * std::cos(2.0 * (xli - fasx4)) +
                    3.0 * d.del3 * std::cos(3.0 * (xli - fasx6));
            xnddt = xnddt * xldot;
        } else {
            const double xomi = argpo_ + argpdot_ * atime;
            const double x2omi = xomi + xomi;
            const double x2li = xli + xli;
            xndt = d.d2201 * std::sin(x2omi + xli - g22) + d.d2211 * std::sin(xli - g22) +
                   d.d3210 * std::sin(xomi + xli - g32) + d.d3222 * std::sin(-xomi + xli - g32) +
                   d.d4410 * std::sin(x2omi + x2li - g44) + d.d4422 * std::sin(x2li - g44) +
                   d.d5220 * std::sin(xomi + xli - g52) + d.d5232 * std::sin(-xomi + xli - g52) +
                   d.d5421 * std::sin(xomi + x2li - g54) + d.d5433 * std::sin(-xomi + x2li - g54);
            xldot = xni + d.xfact;
            xnddt = d.d2201 * std::cos(x2omi + xli - g22) + d.d2211 * std::cos(xli - g22) +
                    d.d3210 * std::cos(xomi + xli - g32) + d.d3222 * std::cos(-xomi + xli - g32) +
                    d.d5220 * std::cos(xomi + xli - g52) + d.d5232 * std::cos(-xomi + xli - g52) +
                    2.0 * (d.d4410 * std::cos(x2omi + x2li - g44) + d.d4422 * std::cos(x2li - g44) +
                           d.d5421 * std::cos(xomi + x2li - g54) + d.d5433 * std::cos(-xomi + x2li - g54));
            xnddt = xnddt * xldot;
        }

        if (std::fabs(t - atime) >= stepp) {
            xli = xli + xldot * delt + xndt * step2;
            xni = xni + xndt * delt + xnddt * step2;
            atime = atime + delt;
        } else {
            ft = t - atime;
            break;
        }
    }

    nm = xni + xndt * ft + xnddt * ft * ft * 0.5;
    const double xl = xli + xldot * ft + xndt * ft * ft * 0.5;
    if (d.irez != 1) {
        mm = xl - 2.0 * nodem + 2.0 * theta;
    } else {
        mm = xl - nodem - argpm + theta;
    }
    const double dndt = nm - no_unkozai_;
    nm = no_unkozai_ + dndt;
}

Sgp4::Result Sgp4::evaluate(double t) const noexcept {
    Result out;
    if (init_error_ == 1 || init_error_ == 2) {
        out.error = init_error_;
        return out;
    }
    const double vkmpersec = g_.radius * g_.xke / 60.0;

    const double xmdf = mo_ + mdot_ * t;
    const double argpdf = argpo_ + argpdot_ * t;
    const double nodedf = nodeo_ + nodedot_ * t;
    double argpm = argpdf;
    double mm = xmdf;
    const double t2 = t * t;
    double nodem = nodedf + nodecf_ * t2;
    double tempa = 1.0 - cc1_ * t;
    double tempe = bstar_ * cc4_ * t;
    double templ = t2cof_ * t2;

    if (isimp_ != 1) {
        const double delomg = omgcof_ * t;
        const double delmtemp = 1.0 + eta_ * std::cos(xmdf);
        const double delm = xmcof_ * (delmtemp * delmtemp * delmtemp - delmo_);
        const double temp = delomg + delm;
        mm = xmdf + temp;
        argpm = argpdf - temp;
        const double t3 = t2 * t;
        const double t4 = t3 * t;
        tempa = tempa - d2_ * t2 - d3_ * t3 - d4_ * t4;
        tempe = tempe + bstar_ * cc5_ * (std::sin(mm) - sinmao_);
        templ = templ + t3cof_ * t3 + t4 * (t4cof_ + t * t5cof_);
    }

    double nm = no_unkozai_;
    double em = ecco_;
    double inclm = inclo_;
    if (method_ == 'd') {
        dspace(t, em, argpm, inclm, mm, nodem, nm);
    }

    if (nm <= 0.0) {
        out.error = 2;
        return out;
    }
    const double am = std::pow(g_.xke / nm, x2o3) * tempa * tempa;
    nm = g_.xke / std::pow(am, 1.5);
    em = em - tempe;

    if (em >= 1.0 || em < -0.001) {
        out.error = 1;
        return out;
    }
    if (em < 1.0e-6) {
        em = 1.0e-6;
    }
    mm = mm + no_unkozai_ * templ;
    double xlm = mm + argpm + nodem;
    nodem = std::fmod(nodem, twopi);
    argpm = std::fmod(argpm, twopi);
    xlm = std::fmod(xlm, twopi);
    mm = std::fmod(xlm - argpm - nodem, twopi);

    const double sinim = std::sin(inclm);
    const double cosim = std::cos(inclm);

    double ep = em;
    double xincp = inclm;
    double argpp = argpm;
    double nodep = nodem;
    double mp = mm;
    double sinip = sinim;
    double cosip = cosim;

    double aycof = aycof_;
    double xlcof = xlcof_;
    double con41 = con41_;
    double x1mth2 = x1mth2_;
    double x7thm1 = x7thm1_;

    if (method_ == 'd') {
        dpper(t, ep, xincp, nodep, argpp, mp);
        if (xincp < 0.0) {
            xincp = -xincp;
            nodep = nodep + pi;
            argpp = argpp - pi;
        }
        if (ep < 0.0 || ep > 1.0) {
            out.error = 3;
            return out;
        }

        sinip = std::sin(xincp);
        cosip = std::cos(xincp);
        aycof = -0.5 * g_.j3oj2 * sinip;
        if (std::fabs(cosip + 1.0) > 1.5e-12) {
            xlcof = -0.25 * g_.j3oj2 * sinip * (3.0 + 5.0 * cosip) / (1.0 + cosip);
        } else {
            xlcof = -0.25 * g_.j3oj2 * sinip * (3.0 + 5.0 * cosip) / 1.5e-12;
        }
    }

    // Kepler's equation in the long-period elements
    const double axnl = ep * std::cos(argpp);
    double temp = 1.0 / (am * (1.0 - ep * ep));
    const double aynl = ep * std::sin(argpp) + temp * aycof;
    const double xl = mp + argpp + nodep + temp * xlcof * axnl;

    const double u = std::fmod(xl - nodep, twopi);
    double eo1 = u;
    double tem5 = 9999.9;
    double sineo1 = 0.0;
    double coseo1 = 0.0;
    for (int ktr = 1; std::fabs(tem5) >= 1.0e-12 && ktr <= 10; ++ktr) {
        sineo1 = std::sin(eo1);
        coseo1 = std::cos(eo1);
        tem5 = 1.0 - coseo1 * axnl - sineo1 * aynl;
        tem5 = (u - aynl * coseo1 + axnl * sineo1 - eo1) / tem5;
        if (std::fabs(tem5) >= 0.95) {
            tem5 = tem5 > 0.0 ? 0.95 : -0.95;
        }
        eo1 = eo1 + tem5;
    }

    const double ecose = axnl * coseo1 + aynl * sineo1;
    const double esine = axnl * sineo1 - aynl * coseo1;
    const double el2 = axnl * axnl + aynl * aynl;
    const double pl = am * (1.0 - el2);
    if (pl < 0.0) {
        out.error = 4;
        return out;
    }

    const double rl = am * (1.0 - ecose);
    const double rdotl = std::sqrt(am) * esine / rl;
    const double rvdotl = std::sqrt(pl) / rl;
    const double betal = std::sqrt(1.0 - el2);
    temp = esine / (1.0 + betal);
    const double sinu = am / rl * (sineo1 - aynl - axnl * temp);
    const double cosu = am / rl * (coseo1 - axnl + aynl * temp);
    double su = std::atan2(sinu, cosu);
    const double sin2u = (cosu + cosu) * sinu;
    const double cos2u = 1.0 - 2.0 * sinu * sinu;
    temp = 1.0 / pl;
    const double temp1 = 0.5 * g_.j2 * temp;
    const double temp2 = temp1 * temp;

    if (method_ == 'd') {
        const double cosisq = cosip * cosip;
        con41 = 3.0 * cosisq - 1.0;
        x1mth2 = 1.0 - cosisq;
        x7thm1 = 7.0 * cosisq - 1.0;
    }
    const double mrt = rl * (1.0 - 1.5 * temp2 * betal * con41) + 0.5 * temp1 * x1mth2 * cos2u;
    su = su - 0.25 * temp2 * x7thm1 * sin2u;
    const double xnode = nodep + 1.5 * temp2 * cosip * sin2u;
    const double xinc = xincp + 1.5 * temp2 * cosip * sinip * cos2u;
    const double mvt = rdotl - nm * temp1 * x1mth2 * sin2u / g_.xke;
    const double rvdot = rvdotl + nm * temp1 * (x1mth2 * cos2u + 1.5 * con41) / g_.xke;

    const double sinsu = std::sin(su);
    const double cossu = std::cos(su);
    const double snod = std::sin(xnode);
    const double cnod = std::cos(xnode);
    const double sini = std::sin(xinc);
    const double cosi = std::cos(xinc);
    const double xmx = -snod * cosi;
    const double xmy = cnod * cosi;
    const double ux = xmx * sinsu + cnod * cossu;
    const double uy = xmy * sinsu + snod * cossu;
    const double uz = sini * sinsu;
    const double vx = xmx * cossu - cnod * sinsu;
    const double vy = xmy * cossu - snod * sinsu;
    const double vz = sini * cossu;

    out.position = {mrt * ux * g_.radius, mrt * uy * g_.radius, mrt * uz * g_.radius};
    out.velocity = {(mvt * ux + rvdot * vx) * vkmpersec, (mvt * uy + rvdot * vy) * vkmpersec,
                    (mvt * uz + rvdot * vz) * vkmpersec};

    if (mrt < 1.0) {
        out.error = 6;
    }
    return out;
}

double Sgp4::minutes_since_epoch(Instant t) const {
    return (t - epoch_).count() / 60.0;
}

EciState Sgp4::propagate_minutes(double minutes) const {
    const Result r = evaluate(minutes);
    if (r.error != 0) {
        static constexpr const char* kWhat[] = {"",
                                                "mean eccentricity out of range",
                                                "mean motion not positive",
                                                "perturbed eccentricity out of range",
                                                "semi-latus rectum negative",
                                                "",
                                                "satellite has decayed"};
        throw DecayError(r.error, fmt::format("SGP4 error {} for {} at {:.3f} min from epoch: {}", r.error,
                                              satellite_id(tle_), minutes, kWhat[r.error]));
    }
    return {epoch_ + std::chrono::duration<double>{minutes * 60.0}, r.position, r.velocity};
}

EciState Sgp4::propagate(Instant t) const {
    EciState s = propagate_minutes(minutes_since_epoch(t));
    s.t = t;
    return s;
}

EciState propagate_teme(const TleRecord& tle, Instant t) {
    return Sgp4(tle).propagate(t);
}

}  // namespace tsa
