#include "potkit/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "potkit/errors.hpp"

namespace potkit {

double MercerDecomposition::trace() const {
    double s = 0.0;
    for (double v : eigenvalues) s += v;
    return s;
}

MercerDecomposition mercer_decompose(const KernelSpec& kernel, const WeightedMeasure& mu,
                                     double rank_tol) {
    if (!mu.is_probability(1e-12))
        throw std::invalid_argument("mercer_decompose: mu must be a probability measure");

    const std::vector<std::size_t> support = mu.support();
    if (support.empty()) throw std::invalid_argument("mercer_decompose: empty support");
    for (std::size_t i : support)
        if (mu.weight(i) <= 0.0)
            throw std::invalid_argument("mercer_decompose: nonpositive weight on support");

    const auto g_ptr = kernel.gram(mu.space());
    const Matrix& g = *g_ptr;
    const std::size_t m = support.size();

    std::vector<double> w(m), sqw(m);
    for (std::size_t a = 0; a < m; ++a) {
        w[a] = mu.weight(support[a]);
        sqw[a] = std::sqrt(w[a]);
    }

    Matrix b(m, m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t c = 0; c < m; ++c) b(a, c) = sqw[a] * g(support[a], support[c]) * sqw[c];

    const SymmetricEigen eig = jacobi_eigensystem(b);

    MercerDecomposition d;
    d.eigenvalues = eig.values;
    d.support = support;
    d.support_weights = std::move(w);
    d.space_hash = mu.space().content_hash();
    d.eigen_residual = eig.max_residual;
    d.b_scale = b.max_abs();
    d.eigenfunctions = Matrix(m, m);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t a = 0; a < m; ++a) d.eigenfunctions(j, a) = eig.vectors(a, j) / sqw[a];

    d.rank_threshold = (rank_tol > 0.0 ? rank_tol : 1e-10) * std::max(d.b_scale, 1e-300);
    d.rank = 0;
    for (double v : d.eigenvalues)
        if (std::abs(v) > d.rank_threshold) ++d.rank;
    return d;
}

std::vector<double> hs_apply(const KernelSpec& kernel, const WeightedMeasure& mu,
                             std::span<const double> psi) {
    const DiscreteSpace& space = mu.space();
    if (psi.size() != space.size())
        throw std::invalid_argument("hs_apply: psi length does not match node count");
    const auto g_ptr = kernel.gram(space);
    const Matrix& g = *g_ptr;
    std::vector<double> out(space.size(), 0.0);
    for (std::size_t i = 0; i < space.size(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < space.size(); ++j) s += mu.weight(j) * g(i, j) * psi[j];
        out[i] = s;
    }
    return out;
}

std::vector<double> hs_apply(const MercerDecomposition& d, std::span<const double> psi) {
    const std::size_t m = d.support.size();
    if (psi.size() != m)
        throw std::invalid_argument("hs_apply: psi length does not match support size");
    // T psi = sum_j lambda_j <psi, phi_j>_mu phi_j
    std::vector<double> out(m, 0.0);
    for (std::size_t j = 0; j < d.eigenvalues.size(); ++j) {
        double coef = 0.0;
        for (std::size_t a = 0; a < m; ++a)
            coef += d.support_weights[a] * psi[a] * d.eigenfunctions(j, a);
        coef *= d.eigenvalues[j];
        for (std::size_t a = 0; a < m; ++a) out[a] += coef * d.eigenfunctions(j, a);
    }
    return out;
}

Matrix mercer_reconstruction(const MercerDecomposition& d) {
    const std::size_t m = d.support.size();
    Matrix g(m, m);
    for (std::size_t j = 0; j < d.eigenvalues.size(); ++j) {
        const double lam = d.eigenvalues[j];
        for (std::size_t a = 0; a < m; ++a) {
            const double fa = lam * d.eigenfunctions(j, a);
            if (fa == 0.0) continue;
            for (std::size_t c = 0; c < m; ++c) g(a, c) += fa * d.eigenfunctions(j, c);
        }
    }
    return g;
}

SqrtKernel convolution_sqrt(const MercerDecomposition& d, std::span<const int> signs,
                            double tol) {
    const std::size_t m = d.support.size();
    const double threshold = (tol > 0.0 ? tol : 1e-9 * std::max(d.b_scale, 1e-300));

    std::vector<int> sign_choice(d.eigenvalues.size(), 1);
    if (!signs.empty()) {
        if (signs.size() != d.eigenvalues.size())
            throw std::invalid_argument("convolution_sqrt: sign choice length mismatch");
        for (std::size_t j = 0; j < signs.size(); ++j) {
            if (signs[j] != 1 && signs[j] != -1)
                throw std::invalid_argument("convolution_sqrt: signs must be +-1");
            sign_choice[j] = signs[j];
        }
    }

    SqrtKernel k;
    k.support = d.support;
    k.support_weights = d.support_weights;
    k.space_hash = d.space_hash;
    k.sign_choice = sign_choice;
    k.table = Matrix(m, m);
    for (std::size_t j = 0; j < d.eigenvalues.size(); ++j) {
        const double lam = d.eigenvalues[j];
        if (lam < -threshold)
            throw NotPositiveDefiniteError(
                "convolution_sqrt: spectrum has an eigenvalue below tolerance", lam);
        // Clamp the whole [-tol, tol] band: the square root would amplify
        // eigen-noise near zero.
        if (lam <= threshold) continue;
        const double root = sign_choice[j] * std::sqrt(lam);
        for (std::size_t a = 0; a < m; ++a) {
            const double fa = root * d.eigenfunctions(j, a);
            if (fa == 0.0) continue;
            for (std::size_t c = 0; c < m; ++c) k.table(a, c) += fa * d.eigenfunctions(j, c);
        }
    }
    return k;
}

Matrix sqrt_composition(const SqrtKernel& k) {
    const std::size_t m = k.support.size();
    Matrix out(m, m);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t c = a; c < m; ++c) {
            double s = 0.0;
            for (std::size_t z = 0; z < m; ++z)
                s += k.support_weights[z] * k.table(a, z) * k.table(z, c);
            out(a, c) = out(c, a) = s;
        }
    }
    return out;
}

} // namespace potkit
