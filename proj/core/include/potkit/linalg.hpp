#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace potkit {

/// Dense row-major matrix of doubles. Small and boring on purpose: the
/// toolkit works on node sets of at most a few thousand points, where
/// straightforward loops are both fast enough and easy to audit.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::span<const double> row(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }
    std::span<double> row(std::size_t i) {
        return {data_.data() + i * cols_, cols_};
    }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    /// max_{ij} |a_ij|
    double max_abs() const;
    bool is_symmetric(double tol) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transposed(const Matrix& a);
std::vector<double> matvec(const Matrix& a, std::span<const double> x);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

struct JacobiOptions {
    int max_sweeps = 64;
    double off_diag_tol_rel = 1e-12; // vs Frobenius norm of the input
};

/// Eigenvalues in descending order; column j of `vectors` is the unit
/// eigenvector for values[j]. Ties in value are broken by the ascending
/// index of the eigenvector's dominant entry, and each vector is signed
/// so that its dominant entry is positive, which keeps report output
/// stable between runs.
struct SymmetricEigen {
    std::vector<double> values;
    Matrix vectors;
    int sweeps = 0;
    double off_diag_norm = 0.0;
    double max_residual = 0.0; // max_j ||A v_j - lambda_j v_j||_2
};

/// Cyclic-by-row Jacobi rotations on a symmetric matrix. Throws
/// NumericalError if the off-diagonal mass has not dropped below
/// tol * ||A||_F after max_sweeps sweeps.
SymmetricEigen jacobi_eigensystem(Matrix a, const JacobiOptions& opts = {});

/// Gaussian elimination with partial pivoting. Throws NumericalError on a
/// numerically singular system.
std::vector<double> solve_linear(Matrix a, std::vector<double> b);

/// Columns form an orthonormal basis of the hyperplane orthogonal to the
/// all-ones vector (n x (n-1)), built from a single Householder reflection.
Matrix mean_zero_basis(std::size_t n);

} // namespace potkit
