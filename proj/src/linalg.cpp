#include <tsa/linalg.hpp>

#include <tsa/errors.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace tsa {

using cplx = std::complex<double>;

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows[0].size();
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) {
            throw DimensionError("ragged matrix rows");
        }
        for (std::size_t j = 0; j < c; ++j) {
            m(i, j) = rows[i][j];
        }
    }
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            t(j, i) = (*this)(i, j);
        }
    }
    return t;
}

double Matrix::trace() const {
    double s = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) {
        s += (*this)(i, i);
    }
    return s;
}

double Matrix::frobenius_norm() const {
    long double s = 0.0L;
    for (const double v : data_) {
        s += static_cast<long double>(v) * v;
    }
    return static_cast<double>(std::sqrt(s));
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError(fmt::format("cannot multiply {}x{} by {}x{}", a.rows(), a.cols(), b.rows(), b.cols()));
    }
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) {
                c(i, j) += aik * b(k, j);
            }
        }
    }
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("matrix size mismatch");
    }
    Matrix c = a;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            c(i, j) -= b(i, j);
        }
    }
    return c;
}

// ---------------------------------------------------------------------------
// Symmetric

namespace {

double off_diagonal_norm(const Matrix& a) {
    long double s = 0.0L;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (i != j) {
                s += static_cast<long double>(a(i, j)) * a(i, j);
            }
        }
    }
    return static_cast<double>(std::sqrt(s));
}

// Index of the largest-magnitude entry, first one on ties.
template <class T>
std::size_t dominant_index(const std::vector<T>& v) {
    std::size_t best = 0;
    double mag = -1.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double m = std::abs(v[i]);
        if (m > mag * (1.0 + 1e-12)) {
            mag = m;
            best = i;
        }
    }
    return best;
}

}  // namespace

SymmetricEigen jacobi_eigen(const Matrix& symmetric) {
    if (!symmetric.square()) {
        throw DimensionError(fmt::format("eigen decomposition needs a square matrix (got {}x{})", symmetric.rows(),
                                         symmetric.cols()));
    }
    const std::size_t n = symmetric.rows();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (symmetric(i, j) != symmetric(j, i)) {
                throw DimensionError("matrix is not symmetric");
            }
        }
    }
    Matrix a = symmetric;
    Matrix v = Matrix::identity(n);
    const double tol = 1e-12 * symmetric.frobenius_norm();

    int sweeps = 0;
    while (off_diagonal_norm(a) > tol) {
        if (sweeps == kJacobiMaxSweeps) {
            throw ConvergenceError(fmt::format("Jacobi eigensolver did not converge in {} sweeps", kJacobiMaxSweeps));
        }
        ++sweeps;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) {
                    continue;
                }
                const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::fabs(tau) + std::hypot(1.0, tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

    SymmetricEigen out;
    out.sweeps = sweeps;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        out.values[j] = a(src, src);
        std::vector<double> col(n);
        for (std::size_t k = 0; k < n; ++k) {
            col[k] = v(k, src);
        }
        const double sign = col[dominant_index(col)] < 0.0 ? -1.0 : 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            out.vectors(k, j) = sign * col[k];
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// General

std::vector<double> characteristic_polynomial(const Matrix& a) {
    const std::size_t n = a.rows();
    std::vector<double> c(n + 1, 0.0);
    c[n] = 1.0;
    Matrix m(n, n);  // M_0 = 0
    for (std::size_t k = 1; k <= n; ++k) {
        Matrix next = a * m;
        for (std::size_t i = 0; i < n; ++i) {
            next(i, i) += c[n - k + 1];
        }
        m = std::move(next);
        c[n - k] = -(a * m).trace() / static_cast<double>(k);
    }
    return c;
}

namespace {

// Roots of z^2 + b z + c with complex coefficients, cancellation-free.
std::pair<cplx, cplx> quadratic(cplx b, cplx c) {
    const cplx disc = std::sqrt(b * b - 4.0 * c);
    // pick the sign that avoids cancellation
    const cplx q = (std::real(std::conj(b) * disc) >= 0.0) ? -0.5 * (b + disc) : -0.5 * (b - disc);
    if (q == cplx{}) {
        return {cplx{}, cplx{}};
    }
    return {q, c / q};
}

std::vector<cplx> cubic(double a, double b, double c) {
    // t = x + a/3: t^3 + p t + q = 0
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    const double shift = -a / 3.0;
    const double disc = q * q / 4.0 + p * p * p / 27.0;
    if (disc < 0.0) {
        const double r = 2.0 * std::sqrt(-p / 3.0);
        const double phi = std::acos(std::clamp(3.0 * q / (p * r), -1.0, 1.0));
        return {cplx{r * std::cos(phi / 3.0) + shift}, cplx{r * std::cos((phi + 2.0 * M_PI) / 3.0) + shift},
                cplx{r * std::cos((phi + 4.0 * M_PI) / 3.0) + shift}};
    }
    const double sq = std::sqrt(disc);
    const double u = std::cbrt(-q / 2.0 + sq);
    const double v = std::cbrt(-q / 2.0 - sq);
    const double re = -(u + v) / 2.0 + shift;
    const double im = (u - v) * std::sqrt(3.0) / 2.0;
    return {cplx{u + v + shift}, cplx{re, im}, cplx{re, -im}};
}

std::vector<cplx> quartic(double a, double b, double c, double d) {
    // x = y - a/4: y^4 + p y^2 + q y + r = 0
    const double p = b - 3.0 * a * a / 8.0;
    const double q = a * a * a / 8.0 - a * b / 2.0 + c;
    const double r = -3.0 * a * a * a * a / 256.0 + a * a * b / 16.0 - a * c / 4.0 + d;
    const double shift = -a / 4.0;
    std::vector<cplx> y;
    const double scale = std::max({1.0, std::fabs(p), std::sqrt(std::fabs(r))});
    if (std::fabs(q) <= 1e-14 * scale * std::sqrt(scale)) {
        const auto [z1, z2] = quadratic(cplx{p}, cplx{r});
        for (const cplx z : {z1, z2}) {
            const cplx s = std::sqrt(z);
            y.push_back(s);
            y.push_back(-s);
        }
    } else {
        // resolvent m^3 + p m^2 + (p^2/4 - r) m - q^2/8 = 0 has a positive root
        double m = 0.0;
        for (const cplx z : cubic(p, p * p / 4.0 - r, -q * q / 8.0)) {
            if (std::fabs(z.imag()) <= 1e-9 * std::max(1.0, std::abs(z)) && z.real() > m) {
                m = z.real();
            }
        }
        const double s = std::sqrt(2.0 * m);
        const auto [a1, a2] = quadratic(cplx{s}, cplx{p / 2.0 + m - q / (2.0 * s)});
        const auto [b1, b2] = quadratic(cplx{-s}, cplx{p / 2.0 + m + q / (2.0 * s)});
        y = {a1, a2, b1, b2};
    }
    for (auto& z : y) {
        z += shift;
    }
    return y;
}

cplx horner(const std::vector<double>& c, cplx z, cplx* derivative) {
    cplx p = 0.0;
    cplx dp = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) {
        dp = dp * z + p;
        p = p * z + c[i];
    }
    *derivative = dp;
    return p;
}

}  // namespace

std::vector<cplx> polynomial_roots_closed_form(const std::vector<double>& c) {
    const std::size_t n = c.size() - 1;
    std::vector<cplx> roots;
    switch (n) {
        case 0:
            break;
        case 1:
            roots = {cplx{-c[0]}};
            break;
        case 2: {
            const auto [r1, r2] = quadratic(cplx{c[1]}, cplx{c[0]});
            roots = {r1, r2};
            break;
        }
        case 3:
            roots = cubic(c[2], c[1], c[0]);
            break;
        case 4:
            roots = quartic(c[3], c[2], c[1], c[0]);
            break;
        default:
            throw DimensionError(fmt::format("closed-form roots need degree <= 4 (got {})", n));
    }
    // Newton polish, keeping a step only when it reduces |p|
    for (auto& z : roots) {
        for (int it = 0; it < 8; ++it) {
            cplx dp;
            const cplx p = horner(c, z, &dp);
            if (p == cplx{} || dp == cplx{}) {
                break;
            }
            const cplx next = z - p / dp;
            cplx unused;
            if (std::abs(horner(c, next, &unused)) >= std::abs(p)) {
                break;
            }
            z = next;
        }
    }
    return roots;
}

std::vector<cplx> eigenvalues_qr(const Matrix& m) {
    const int n = static_cast<int>(m.rows());
    // 1-based working copy
    std::vector<std::vector<double>> a(static_cast<std::size_t>(n + 1), std::vector<double>(static_cast<std::size_t>(n + 1), 0.0));
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            a[i][j] = m(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
        }
    }

    // reduction to upper Hessenberg form by stabilized elementary similarity transforms
    for (int mm = 2; mm < n; ++mm) {
        double x = 0.0;
        int i = mm;
        for (int j = mm; j <= n; ++j) {
            if (std::fabs(a[j][mm - 1]) > std::fabs(x)) {
                x = a[j][mm - 1];
                i = j;
            }
        }
        if (i != mm) {
            for (int j = mm - 1; j <= n; ++j) {
                std::swap(a[i][j], a[mm][j]);
            }
            for (int j = 1; j <= n; ++j) {
                std::swap(a[j][i], a[j][mm]);
            }
        }
        if (x != 0.0) {
            for (i = mm + 1; i <= n; ++i) {
                double y = a[i][mm - 1];
                if (y != 0.0) {
                    y /= x;
                    a[i][mm - 1] = y;
                    for (int j = mm; j <= n; ++j) {
                        a[i][j] -= y * a[mm][j];
                    }
                    for (int j = 1; j <= n; ++j) {
                        a[j][mm] += y * a[j][i];
                    }
                }
            }
        }
    }
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j < i - 1; ++j) {
            a[i][j] = 0.0;
        }
    }

    std::vector<double> wr(static_cast<std::size_t>(n + 1), 0.0);
    std::vector<double> wi(static_cast<std::size_t>(n + 1), 0.0);
    double anorm = 0.0;
    for (int i = 1; i <= n; ++i) {
        for (int j = std::max(i - 1, 1); j <= n; ++j) {
            anorm += std::fabs(a[i][j]);
        }
    }
    const auto sign = [](double v, double s) { return s >= 0.0 ? std::fabs(v) : -std::fabs(v); };
    int nn = n;
    double t = 0.0;
    double p = 0.0, q = 0.0, r = 0.0, s = 0.0, w = 0.0, x = 0.0, y = 0.0, z = 0.0;
    while (nn >= 1) {
        int its = 0;
        int l = 0;
        do {
            for (l = nn; l >= 2; --l) {
                s = std::fabs(a[l - 1][l - 1]) + std::fabs(a[l][l]);
                if (s == 0.0) {
                    s = anorm;
                }
                if (std::fabs(a[l][l - 1]) + s == s) {
                    a[l][l - 1] = 0.0;
                    break;
                }
            }
            x = a[nn][nn];
            if (l == nn) {
                wr[nn] = x + t;
                wi[nn--] = 0.0;
            } else {
                y = a[nn - 1][nn - 1];
                w = a[nn][nn - 1] * a[nn - 1][nn];
                if (l == nn - 1) {
                    p = 0.5 * (y - x);
                    q = p * p + w;
                    z = std::sqrt(std::fabs(q));
                    x += t;
                    if (q >= 0.0) {
                        z = p + sign(z, p);
                        wr[nn - 1] = wr[nn] = x + z;
                        if (z != 0.0) {
                            wr[nn] = x - w / z;
                        }
                        wi[nn - 1] = wi[nn] = 0.0;
                    } else {
                        wr[nn - 1] = wr[nn] = x + p;
                        wi[nn - 1] = -(wi[nn] = z);
                    }
                    nn -= 2;
                } else {
                    if (its == 60) {
                        throw ConvergenceError("QR eigenvalue iteration did not converge");
                    }
                    if (its == 10 || its == 20 || its == 40) {
                        // exceptional shift
                        t += x;
                        for (int i = 1; i <= nn; ++i) {
                            a[i][i] -= x;
                        }
                        s = std::fabs(a[nn][nn - 1]) + std::fabs(a[nn - 1][nn - 2]);
                        y = x = 0.75 * s;
                        w = -0.4375 * s * s;
                    }
                    ++its;
                    int mm = nn - 2;
                    for (; mm >= l; --mm) {
                        z = a[mm][mm];
                        r = x - z;
                        s = y - z;
                        p = (r * s - w) / a[mm + 1][mm] + a[mm][mm + 1];
                        q = a[mm + 1][mm + 1] - z - r - s;
                        r = a[mm + 2][mm + 1];
                        s = std::fabs(p) + std::fabs(q) + std::fabs(r);
                        p /= s;
                        q /= s;
                        r /= s;
                        if (mm == l) {
                            break;
                        }
                        const double u = std::fabs(a[mm][mm - 1]) * (std::fabs(q) + std::fabs(r));
                        const double v = std::fabs(p) * (std::fabs(a[mm - 1][mm - 1]) + std::fabs(z) +
                                                         std::fabs(a[mm + 1][mm + 1]));
                        if (u + v == v) {
                            break;
                        }
                    }
                    for (int i = mm + 2; i <= nn; ++i) {
                        a[i][i - 2] = 0.0;
                        if (i != mm + 2) {
                            a[i][i - 3] = 0.0;
                        }
                    }
                    for (int k = mm; k <= nn - 1; ++k) {
                        if (k != mm) {
                            p = a[k][k - 1];
                            q = a[k + 1][k - 1];
                            r = 0.0;
                            if (k != nn - 1) {
                                r = a[k + 2][k - 1];
                            }
                            if ((x = std::fabs(p) + std::fabs(q) + std::fabs(r)) != 0.0) {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        if ((s = sign(std::sqrt(p * p + q * q + r * r), p)) != 0.0) {
                            if (k == mm) {
                                if (l != mm) {
                                    a[k][k - 1] = -a[k][k - 1];
                                }
                            } else {
                                a[k][k - 1] = -s * x;
                            }
                            p += s;
                            x = p / s;
                            y = q / s;
                            z = r / s;
                            q /= p;
                            r /= p;
                            for (int j = k; j <= nn; ++j) {
                                p = a[k][j] + q * a[k + 1][j];
                                if (k != nn - 1) {
                                    p += r * a[k + 2][j];
                                    a[k + 2][j] -= p * z;
                                }
                                a[k + 1][j] -= p * y;
                                a[k][j] -= p * x;
                            }
                            const int mmin = nn < k + 3 ? nn : k + 3;
                            for (int i = l; i <= mmin; ++i) {
                                p = x * a[i][k] + y * a[i][k + 1];
                                if (k != nn - 1) {
                                    p += z * a[i][k + 2];
                                    a[i][k + 2] -= p * r;
                                }
                                a[i][k + 1] -= p * q;
                                a[i][k] -= p;
                            }
                        }
                    }
                }
            }
        } while (l < nn - 1);
    }
    std::vector<cplx> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        out.emplace_back(wr[i], wi[i]);
    }
    return out;
}

namespace {

// Real matrix: eigenvalues are real or come in exact conjugate pairs.
std::vector<cplx> enforce_conjugate_pairs(std::vector<cplx> values, double scale) {
    const double tol = 1e-10 * scale;
    std::vector<cplx> upper;
    std::vector<cplx> lower;
    std::vector<cplx> out;
    for (const auto& z : values) {
        if (z.imag() > tol) {
            upper.push_back(z);
        } else if (z.imag() < -tol) {
            lower.push_back(z);
        } else {
            out.emplace_back(z.real(), 0.0);
        }
    }
    std::vector<bool> used(lower.size(), false);
    for (const auto& u : upper) {
        std::size_t best = lower.size();
        double dist = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < lower.size(); ++k) {
            if (!used[k] && std::abs(std::conj(lower[k]) - u) < dist) {
                dist = std::abs(std::conj(lower[k]) - u);
                best = k;
            }
        }
        if (best == lower.size()) {
            out.emplace_back(u.real(), 0.0);
            continue;
        }
        used[best] = true;
        const double re = 0.5 * (u.real() + lower[best].real());
        const double im = 0.5 * (u.imag() - lower[best].imag());
        out.emplace_back(re, im);
        out.emplace_back(re, -im);
    }
    for (std::size_t k = 0; k < lower.size(); ++k) {
        if (!used[k]) {
            out.emplace_back(lower[k].real(), 0.0);
        }
    }
    return out;
}

// Solves (A - gamma I) x = b in place by LU with partial pivoting; zero
// pivots are replaced by a tiny value so the solve amplifies the null space.
void shifted_solve(const Matrix& a, cplx gamma, std::vector<cplx>& b, double tiny) {
    const std::size_t n = a.rows();
    std::vector<std::vector<cplx>> m(n, std::vector<cplx>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m[i][j] = a(i, j);
        }
        m[i][i] -= gamma;
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(m[i][k]) > std::abs(m[piv][k])) {
                piv = i;
            }
        }
        std::swap(m[k], m[piv]);
        std::swap(b[k], b[piv]);
        if (std::abs(m[k][k]) < tiny) {
            m[k][k] = tiny;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx f = m[i][k] / m[k][k];
            if (f == cplx{}) {
                continue;
            }
            for (std::size_t j = k; j < n; ++j) {
                m[i][j] -= f * m[k][j];
            }
            b[i] -= f * b[k];
        }
    }
    for (std::size_t k = n; k-- > 0;) {
        cplx s = b[k];
        for (std::size_t j = k + 1; j < n; ++j) {
            s -= m[k][j] * b[j];
        }
        b[k] = s / m[k][k];
    }
}

void normalize_phase(std::vector<cplx>& v) {
    double nrm = 0.0;
    for (const auto& c : v) {
        nrm += std::norm(c);
    }
    nrm = std::sqrt(nrm);
    const cplx lead = v[dominant_index(v)];
    const cplx rot = std::conj(lead) / (std::abs(lead) * nrm);
    for (auto& c : v) {
        c *= rot;
    }
    v[dominant_index(v)].imag(0.0);
}

double residual(const Matrix& a, cplx gamma, const std::vector<cplx>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        cplx r = -gamma * v[i];
        for (std::size_t j = 0; j < a.cols(); ++j) {
            r += a(i, j) * v[j];
        }
        s += std::norm(r);
    }
    return std::sqrt(s);
}

std::vector<cplx> null_vector(const Matrix& a, cplx gamma, double scale) {
    const std::size_t n = a.rows();
    const double tiny = std::numeric_limits<double>::epsilon() * scale;
    std::vector<cplx> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = 1.0 + 0.1 * static_cast<double>(i);  // fixed start so results are reproducible
    }
    normalize_phase(v);
    for (int it = 0; it < 20; ++it) {
        shifted_solve(a, gamma, v, tiny);
        normalize_phase(v);
        if (it >= 1 && residual(a, gamma, v) <= 1e-12 * scale) {
            break;
        }
    }
    return v;
}

}  // namespace

GeneralEigen eigen_general(const Matrix& a) {
    if (!a.square()) {
        throw DimensionError(fmt::format("eigen decomposition needs a square matrix (got {}x{})", a.rows(), a.cols()));
    }
    for (const double v : a.data()) {
        if (!std::isfinite(v)) {
            throw DimensionError("matrix has non-finite entries");
        }
    }
    const std::size_t n = a.rows();
    GeneralEigen out;
    if (n == 0) {
        return out;
    }
    const double scale = std::max(a.frobenius_norm(), std::numeric_limits<double>::min());
    auto values = n <= 4 ? polynomial_roots_closed_form(characteristic_polynomial(a)) : eigenvalues_qr(a);
    values = enforce_conjugate_pairs(std::move(values), scale);
    std::sort(values.begin(), values.end(), [](const cplx& x, const cplx& y) {
        if (std::abs(x) != std::abs(y)) {
            return std::abs(x) > std::abs(y);
        }
        if (x.real() != y.real()) {
            return x.real() > y.real();
        }
        return x.imag() > y.imag();
    });
    out.values = values;
    out.vectors.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const cplx g = values[k];
        if (g.imag() < 0.0 && k > 0 && values[k - 1] == std::conj(g)) {
            out.vectors[k] = out.vectors[k - 1];
            for (auto& c : out.vectors[k]) {
                c = std::conj(c);
            }
            continue;
        }
        out.vectors[k] = null_vector(a, g, scale);
    }
    return out;
}

}  // namespace tsa
