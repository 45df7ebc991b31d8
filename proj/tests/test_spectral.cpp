#include <doctest.h>

#include <cmath>
#include <random>

#include "potkit/errors.hpp"
#include "potkit/spectral.hpp"
#include "support.hpp"

using namespace potkit;
using testsupport::shared_space;

TEST_CASE("constant kernel has a single rank-one mode") {
    auto space = shared_space(DiscreteSpace::interval_uniform(6));
    const auto mu = WeightedMeasure::uniform(space);
    const auto decomp = mercer_decompose(KernelSpec::constant(1.0), mu);
    CHECK(decomp.rank == 1);
    CHECK(decomp.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t a = 0; a < 6; ++a)
        CHECK(std::abs(decomp.eigenfunctions(0, a)) == doctest::Approx(1.0).epsilon(1e-10));
    for (std::size_t j = 1; j < 6; ++j)
        CHECK(std::abs(decomp.eigenvalues[j]) <= 1e-12);
}

TEST_CASE("inner-product kernel on the octahedron: three modes at 1/3") {
    auto space = make_octahedron();
    const auto mu = WeightedMeasure::uniform(space);
    const auto decomp = mercer_decompose(KernelSpec::inner_product_poly({0.0, 1.0}), mu);
    CHECK(decomp.rank == 3);
    for (int j = 0; j < 3; ++j)
        CHECK(decomp.eigenvalues[j] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    for (std::size_t j = 3; j < 6; ++j) CHECK(std::abs(decomp.eigenvalues[j]) <= 1e-12);
}

TEST_CASE("weighted orthonormality and reconstruction") {
    auto space = shared_space(DiscreteSpace::sphere_random(3, 9, 55));
    std::mt19937_64 rng(4);
    const auto mu = testsupport::random_probability(space, rng);
    const KernelSpec kernel = KernelSpec::inner_product_poly({0.3, -0.5, 1.1});
    const auto decomp = mercer_decompose(kernel, mu);

    const std::size_t m = decomp.support.size();
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = j; k < m; ++k) {
            double ip = 0.0;
            for (std::size_t a = 0; a < m; ++a)
                ip += decomp.support_weights[a] * decomp.eigenfunctions(j, a) *
                      decomp.eigenfunctions(k, a);
            CHECK(std::abs(ip - (j == k ? 1.0 : 0.0)) <= 1e-9);
        }

    const Matrix recon = mercer_reconstruction(decomp);
    const auto g_ptr = kernel.gram(*space);
    const Matrix& g = *g_ptr;
    double err = 0.0;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t c = 0; c < m; ++c)
            err = std::max(err, std::abs(recon(a, c) - g(decomp.support[a], decomp.support[c])));
    CHECK(err <= 1e-8 * std::max(1.0, g.max_abs()));
}

TEST_CASE("trace identity on random instances") {
    std::mt19937_64 rng(77);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
        auto space = shared_space(DiscreteSpace::sphere_random(3, 10, 1000 + trial));
        Matrix g(10, 10);
        for (std::size_t i = 0; i < 10; ++i)
            for (std::size_t j = i; j < 10; ++j) g(i, j) = g(j, i) = gauss(rng);
        const KernelSpec kernel = KernelSpec::gram_table(g, *space);
        const auto mu = testsupport::random_probability(space, rng);
        const auto decomp = mercer_decompose(kernel, mu);

        double diag = 0.0;
        for (std::size_t i = 0; i < 10; ++i) diag += mu.weight(i) * g(i, i);
        CHECK(decomp.trace() == doctest::Approx(diag).epsilon(1e-9));
    }
}

TEST_CASE("invariant measure puts the constant function in the spectrum") {
    auto space = make_octahedron();
    const auto mu = WeightedMeasure::uniform(space);
    const KernelSpec kernel = KernelSpec::neg_euclidean_distance();
    const double imu = energy(kernel, mu);
    const auto decomp = mercer_decompose(kernel, mu);

    // hs_apply of the constant vector returns I_K(mu) * 1
    const std::vector<double> ones(6, 1.0);
    const auto image = hs_apply(kernel, mu, ones);
    for (double v : image) CHECK(v == doctest::Approx(imu).epsilon(1e-12));

    // some eigenvalue equals I_K(mu) with a constant eigenfunction
    bool found = false;
    for (std::size_t j = 0; j < decomp.eigenvalues.size(); ++j) {
        if (std::abs(decomp.eigenvalues[j] - imu) < 1e-9) {
            double lo = 1e300, hi = -1e300;
            for (std::size_t a = 0; a < 6; ++a) {
                lo = std::min(lo, decomp.eigenfunctions(j, a));
                hi = std::max(hi, decomp.eigenfunctions(j, a));
            }
            if (hi - lo < 1e-8) found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("hs_apply eigen route agrees with the direct sum") {
    auto space = shared_space(DiscreteSpace::sphere_random(3, 8, 99));
    std::mt19937_64 rng(13);
    const auto mu = testsupport::random_probability(space, rng);
    const KernelSpec kernel = KernelSpec::inner_product_poly({1.0, 0.7, -0.2, 0.05});
    const auto decomp = mercer_decompose(kernel, mu);

    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> psi(8);
    for (double& v : psi) v = gauss(rng);

    const auto direct = hs_apply(kernel, mu, psi);
    const auto eigen_route = hs_apply(decomp, psi);
    for (std::size_t a = 0; a < 8; ++a)
        CHECK(eigen_route[a] == doctest::Approx(direct[decomp.support[a]]).epsilon(1e-9));

    // psi = phi_j maps to lambda_j phi_j
    std::vector<double> phi0(8);
    for (std::size_t a = 0; a < 8; ++a) phi0[a] = decomp.eigenfunctions(0, a);
    const auto image = hs_apply(decomp, phi0);
    for (std::size_t a = 0; a < 8; ++a)
        CHECK(image[a] == doctest::Approx(decomp.eigenvalues[0] * phi0[a]).epsilon(1e-9));
}

TEST_CASE("diagonal bound for psd kernels at every truncation rank") {
    auto space = shared_space(DiscreteSpace::sphere_random(3, 7, 3));
    std::mt19937_64 rng(21);
    const auto mu = testsupport::random_probability(space, rng);
    // F(t) = (0.4 + 0.6 t)^2 expanded: psd by construction
    const KernelSpec kernel = KernelSpec::inner_product_poly({0.16, 0.48, 0.36});
    const auto decomp = mercer_decompose(kernel, mu);
    const auto g_ptr = kernel.gram(*space);
    const Matrix& g = *g_ptr;

    const std::size_t m = decomp.support.size();
    for (std::size_t rank = 1; rank <= m; ++rank) {
        for (std::size_t a = 0; a < m; ++a) {
            double partial = 0.0;
            for (std::size_t j = 0; j < rank; ++j) {
                const double f = decomp.eigenfunctions(j, a);
                partial += decomp.eigenvalues[j] * f * f;
            }
            CHECK(partial <= g(decomp.support[a], decomp.support[a]) + 1e-9);
        }
    }
}

TEST_CASE("decomposition is restricted to the support") {
    auto space = shared_space(DiscreteSpace::interval_explicit({-1.0, 0.0, 1.0}));
    const WeightedMeasure mu(space, {0.5, 0.0, 0.5});
    const auto decomp = mercer_decompose(KernelSpec::euclidean_distance(), mu);
    CHECK(decomp.support == std::vector<std::size_t>{0, 2});
    CHECK(decomp.eigenvalues.size() == 2);
}

TEST_CASE("mercer rejects non-probability measures") {
    auto space = shared_space(DiscreteSpace::interval_uniform(3));
    const WeightedMeasure signed_mu(space, {1.5, -0.5, 0.0});
    CHECK_THROWS_AS(mercer_decompose(KernelSpec::constant(1.0), signed_mu),
                    std::invalid_argument);
}

TEST_CASE("convolution square root composes back to the gram matrix") {
    auto space = make_octahedron();
    const auto mu = WeightedMeasure::uniform(space);
    // <x,y>^2 plus a constant keeps the spectrum nonnegative
    const KernelSpec kernel = KernelSpec::inner_product_poly({0.5, 0.0, 1.0});
    const auto decomp = mercer_decompose(kernel, mu);
    const SqrtKernel root = convolution_sqrt(decomp);
    const Matrix composed = sqrt_composition(root);
    const auto g_ptr = kernel.gram(*space);
    const Matrix& g = *g_ptr;

    double err = 0.0;
    for (std::size_t a = 0; a < 6; ++a)
        for (std::size_t c = 0; c < 6; ++c) err = std::max(err, std::abs(composed(a, c) - g(a, c)));
    CHECK(err <= 1e-10 * g.max_abs());
}

TEST_CASE("any sign choice yields the same composition") {
    auto space = make_octahedron();
    const auto mu = WeightedMeasure::uniform(space);
    const KernelSpec kernel = KernelSpec::inner_product_poly({0.5, 0.3, 0.8});
    const auto decomp = mercer_decompose(kernel, mu);

    std::mt19937_64 rng(2);
    std::vector<int> signs_a(decomp.eigenvalues.size()), signs_b(decomp.eigenvalues.size());
    for (std::size_t j = 0; j < signs_a.size(); ++j) {
        signs_a[j] = (rng() & 1) ? 1 : -1;
        signs_b[j] = (rng() & 1) ? 1 : -1;
    }
    const Matrix comp_a = sqrt_composition(convolution_sqrt(decomp, signs_a));
    const Matrix comp_b = sqrt_composition(convolution_sqrt(decomp, signs_b));
    double diff = 0.0;
    for (std::size_t i = 0; i < comp_a.data().size(); ++i)
        diff = std::max(diff, std::abs(comp_a.data()[i] - comp_b.data()[i]));
    CHECK(diff <= 1e-12 * std::max(1.0, comp_a.max_abs()));
}

TEST_CASE("constant kernel square root is the constant one table") {
    auto space = shared_space(DiscreteSpace::interval_uniform(4));
    const auto mu = WeightedMeasure::uniform(space);
    const auto decomp = mercer_decompose(KernelSpec::constant(1.0), mu);
    const SqrtKernel root = convolution_sqrt(decomp);
    for (double v : root.table.data()) CHECK(std::abs(std::abs(v) - 1.0) <= 1e-9);
}

TEST_CASE("convolution sqrt refuses indefinite kernels") {
    auto space = make_octahedron();
    const auto mu = WeightedMeasure::uniform(space);
    const auto decomp = mercer_decompose(KernelSpec::neg_euclidean_distance(), mu);
    CHECK_THROWS_AS(convolution_sqrt(decomp), NotPositiveDefiniteError);
    try {
        convolution_sqrt(decomp);
    } catch (const NotPositiveDefiniteError& e) {
        CHECK(e.offending_eigenvalue < 0.0);
    }
}
