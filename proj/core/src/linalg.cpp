#include "potkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "potkit/errors.hpp"

namespace potkit {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

double Matrix::max_abs() const {
    double best = 0.0;
    for (double v : data_) best = std::max(best, std::abs(v));
    return best;
}

bool Matrix::is_symmetric(double tol) const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
    return true;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

Matrix transposed(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

std::vector<double> matvec(const Matrix& a, std::span<const double> x) {
    std::vector<double> y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
    return y;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

namespace {

double off_diagonal_frobenius(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
}

double frobenius(const Matrix& a) {
    double s = 0.0;
    for (double v : a.data()) s += v * v;
    return std::sqrt(s);
}

} // namespace

SymmetricEigen jacobi_eigensystem(Matrix a, const JacobiOptions& opts) {
    const std::size_t n = a.rows();
    if (n != a.cols()) throw std::invalid_argument("jacobi_eigensystem: matrix must be square");

    const Matrix input = a; // kept for the residual check
    Matrix v = Matrix::identity(n);
    const double fro = frobenius(a);
    const double threshold = opts.off_diag_tol_rel * std::max(fro, 1e-300);

    int sweep = 0;
    double off = off_diagonal_frobenius(a);
    while (off > threshold) {
        if (sweep++ >= opts.max_sweeps)
            throw NumericalError("jacobi_eigensystem: no convergence after sweep limit");
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= 1e-300) {
                    a(p, q) = a(q, p) = 0.0;
                    continue;
                }
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                const double app = a(p, p), aqq = a(q, q);
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = a(q, p) = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r != p && r != q) {
                        const double arp = a(r, p), arq = a(r, q);
                        a(r, p) = a(p, r) = arp - s * (arq + tau * arp);
                        a(r, q) = a(q, r) = arq + s * (arp - tau * arq);
                    }
                    const double vrp = v(r, p), vrq = v(r, q);
                    v(r, p) = vrp - s * (vrq + tau * vrp);
                    v(r, q) = vrq + s * (vrp - tau * vrq);
                }
            }
        }
        off = off_diagonal_frobenius(a);
    }

    SymmetricEigen out;
    out.sweeps = sweep;
    out.off_diag_norm = off;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = a(i, i);

    // Sort descending by value; ties broken by ascending dominant-entry index.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto dominant = [&](std::size_t col) {
        std::size_t best = 0;
        double mag = -1.0;
        for (std::size_t r = 0; r < n; ++r) {
            if (std::abs(v(r, col)) > mag) {
                mag = std::abs(v(r, col));
                best = r;
            }
        }
        return best;
    };
    std::vector<std::size_t> dom(n);
    for (std::size_t i = 0; i < n; ++i) dom[i] = dominant(i);
    std::sort(order.begin(), order.end(), [&](std::size_t lhs, std::size_t rhs) {
        if (out.values[lhs] != out.values[rhs]) return out.values[lhs] > out.values[rhs];
        return dom[lhs] < dom[rhs];
    });

    SymmetricEigen sorted;
    sorted.sweeps = out.sweeps;
    sorted.off_diag_norm = out.off_diag_norm;
    sorted.values.resize(n);
    sorted.vectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        sorted.values[j] = out.values[src];
        const double sign = v(dom[src], src) < 0.0 ? -1.0 : 1.0;
        for (std::size_t r = 0; r < n; ++r) sorted.vectors(r, j) = sign * v(r, src);
    }

    // Residual ||A v - lambda v|| for every returned pair.
    double worst = 0.0;
    std::vector<double> col(n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t r = 0; r < n; ++r) col[r] = sorted.vectors(r, j);
        std::vector<double> av = matvec(input, col);
        for (std::size_t r = 0; r < n; ++r) av[r] -= sorted.values[j] * col[r];
        worst = std::max(worst, norm2(av));
    }
    sorted.max_residual = worst;
    return sorted;
}

std::vector<double> solve_linear(Matrix a, std::vector<double> b) {
    const std::size_t n = a.rows();
    if (n != a.cols() || b.size() != n)
        throw std::invalid_argument("solve_linear: dimension mismatch");

    const double scale = std::max(a.max_abs(), 1e-300);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
        if (std::abs(a(piv, k)) < 1e-13 * scale)
            throw NumericalError("solve_linear: matrix is numerically singular");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            std::swap(b[k], b[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = a(i, k) / a(k, k);
            if (f == 0.0) continue;
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
            b[i] -= f * b[k];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
        x[i] = s / a(i, i);
    }
    return x;
}

Matrix mean_zero_basis(std::size_t n) {
    if (n < 1) throw std::invalid_argument("mean_zero_basis: n must be >= 1");
    // Householder H maps e_0 to the normalized all-ones vector; columns
    // 1..n-1 of H then span its orthogonal complement.
    const double u0 = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<double> w(n, -u0);
    w[0] = 1.0 - u0;
    const double wn2 = dot(w, w);
    Matrix q(n, n == 1 ? 0 : n - 1);
    if (n == 1) return q;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 1; j < n; ++j) {
            const double h = (i == j ? 1.0 : 0.0) - 2.0 * w[i] * w[j] / wn2;
            q(i, j - 1) = h;
        }
    }
    return q;
}

} // namespace potkit
