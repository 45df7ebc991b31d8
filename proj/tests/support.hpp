#pragma once

// Shared oracles and generators for the test suites. Everything here is
// independent of the implementation paths it checks: moments come from
// Gamma-function closed forms, energies from direct double loops, random
// draws from explicitly seeded engines.

#include <cmath>
#include <random>
#include <vector>

#include "potkit/domains.hpp"
#include "potkit/kernels.hpp"
#include "potkit/linalg.hpp"

namespace testsupport {

// int_{-1}^{1} t^k (1-t^2)^{lambda-1/2} dt
inline double gegenbauer_moment(int k, double lambda) {
    if (k % 2 == 1) return 0.0;
    const double m = k / 2.0;
    return std::tgamma(m + 0.5) * std::tgamma(lambda + 0.5) / std::tgamma(m + lambda + 1.0);
}

// Reference energy: direct double loop over all pairs, no Gram matrix.
inline double brute_energy(const potkit::KernelSpec& kernel, const potkit::WeightedMeasure& mu,
                           const potkit::WeightedMeasure& nu) {
    const potkit::DiscreteSpace& space = mu.space();
    double s = 0.0;
    for (std::size_t i = 0; i < space.size(); ++i)
        for (std::size_t j = 0; j < space.size(); ++j)
            s += mu.weight(i) * nu.weight(j) * kernel.evaluate(space.point(i), space.point(j));
    return s;
}

inline potkit::WeightedMeasure random_probability(const potkit::SpacePtr& space,
                                                  std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<double> w(space->size());
    double sum = 0.0;
    for (double& v : w) {
        v = uni(rng) + 1e-3;
        sum += v;
    }
    for (double& v : w) v /= sum;
    return {space, std::move(w)};
}

inline potkit::WeightedMeasure random_mass_one(const potkit::SpacePtr& space,
                                               std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> w(space->size());
    double mass = 0.0;
    for (double& v : w) {
        v = gauss(rng);
        mass += v;
    }
    const double adjust = (mass - 1.0) / static_cast<double>(w.size());
    for (double& v : w) v -= adjust;
    return {space, std::move(w)};
}

// Random symmetric matrix with the all-ones vector as an eigenvector:
// G = Q diag(spectrum) Q^T where Q's first column is 1/sqrt(n). The
// uniform measure is then invariant for the gram-table kernel of G.
inline potkit::Matrix ones_eigenvector_instance(std::size_t n, double constant_eig,
                                                const std::vector<double>& centered_spectrum,
                                                std::mt19937_64& rng) {
    using potkit::Matrix;
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix q(n, n);
    const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) q(i, 0) = inv_sqrt;
    for (std::size_t c = 1; c < n; ++c) {
        // draw, orthogonalize against previous columns, normalize
        std::vector<double> v(n);
        double nn = 0.0;
        do {
            for (double& x : v) x = gauss(rng);
            for (std::size_t p = 0; p < c; ++p) {
                double proj = 0.0;
                for (std::size_t i = 0; i < n; ++i) proj += v[i] * q(i, p);
                for (std::size_t i = 0; i < n; ++i) v[i] -= proj * q(i, p);
            }
            nn = potkit::norm2(v);
        } while (nn < 1e-8);
        for (std::size_t i = 0; i < n; ++i) q(i, c) = v[i] / nn;
    }
    Matrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = constant_eig * q(i, 0) * q(j, 0);
            for (std::size_t c = 1; c < n; ++c)
                s += centered_spectrum[c - 1] * q(i, c) * q(j, c);
            g(i, j) = s;
        }
    // symmetrize exactly
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = 0.5 * (g(i, j) + g(j, i));
            g(i, j) = g(j, i) = v;
        }
    return g;
}

inline potkit::SpacePtr shared_space(potkit::DiscreteSpace space) {
    return std::make_shared<potkit::DiscreteSpace>(std::move(space));
}

} // namespace testsupport
