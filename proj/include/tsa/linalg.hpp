#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace tsa {

// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }

    Matrix transpose() const;
    double trace() const;
    double frobenius_norm() const;

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);

struct SymmetricEigen {
    std::vector<double> values;  // descending
    Matrix vectors;              // orthonormal columns; largest-magnitude component positive
    int sweeps = 0;
};

// Cyclic Jacobi. Stops when the off-diagonal Frobenius norm drops to
// 1e-12 * ||A||_F; throws ConvergenceError after 100 sweeps and
// DimensionError for non-square or asymmetric input.
SymmetricEigen jacobi_eigen(const Matrix& symmetric);

inline constexpr int kJacobiMaxSweeps = 100;

struct GeneralEigen {
    // Sorted by |gamma| desc, then real part desc, then imaginary part desc;
    // conjugate pairs are exact and adjacent (+im first).
    std::vector<std::complex<double>> values;
    // Unit 2-norm; the largest-magnitude component is real and positive.
    std::vector<std::vector<std::complex<double>>> vectors;
};

// Eigenpairs of a real square matrix. n <= 4 uses the characteristic
// polynomial's closed-form roots polished by Newton steps, larger n a
// Hessenberg reduction with Francis double-shift QR. Eigenvectors come from
// the null space of (A - gamma I) by inverse iteration.
// Throws DimensionError, ConvergenceError.
GeneralEigen eigen_general(const Matrix& a);

// Coefficients c_0..c_n of det(lambda I - A) (c_n = 1), Faddeev-LeVerrier.
std::vector<double> characteristic_polynomial(const Matrix& a);

// Roots of a real monic polynomial of degree <= 4 in closed form.
std::vector<std::complex<double>> polynomial_roots_closed_form(const std::vector<double>& coefficients);

// Eigenvalues via Hessenberg + shifted QR (any n).
std::vector<std::complex<double>> eigenvalues_qr(const Matrix& a);

}  // namespace tsa
