#include <doctest.h>

#include <cmath>
#include <random>

#include "potkit/optimize.hpp"
#include "support.hpp"

using namespace potkit;

namespace {

Matrix random_config(std::size_t n, int d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix pts(n, d);
    for (std::size_t i = 0; i < n; ++i) {
        double nn = 0.0;
        for (int k = 0; k < d; ++k) {
            pts(i, k) = gauss(rng);
            nn += pts(i, k) * pts(i, k);
        }
        nn = std::sqrt(nn);
        for (int k = 0; k < d; ++k) pts(i, k) /= nn;
    }
    return pts;
}

} // namespace

TEST_CASE("analytic gradients match finite differences") {
    const Matrix pts = random_config(6, 3, 11);
    CHECK(gradient_fd_error(KernelSpec::neg_euclidean_distance(), pts) <= 1e-6);
    CHECK(gradient_fd_error(KernelSpec::riesz(1.0), pts) <= 1e-6);
    CHECK(gradient_fd_error(KernelSpec::riesz(2.0), pts) <= 1e-6);
    CHECK(gradient_fd_error(KernelSpec::inner_product_poly({0.2, -0.7, 0.4, 0.9}), pts) <= 1e-6);
}

TEST_CASE("two points for neg-distance land antipodally at energy -1") {
    const auto trace = minimize_config(KernelSpec::neg_euclidean_distance(), 2, 3, 7);
    CHECK(trace.converged);
    CHECK(trace.energies.back() == doctest::Approx(-1.0).epsilon(1e-9));
    double ip = 0.0;
    for (std::size_t k = 0; k < 3; ++k) ip += trace.final_points(0, k) * trace.final_points(1, k);
    CHECK(ip == doctest::Approx(-1.0).epsilon(1e-7));
}

TEST_CASE("energies decrease monotonically along accepted steps") {
    const auto trace = minimize_config(KernelSpec::neg_euclidean_distance(), 7, 3, 3);
    for (std::size_t k = 1; k < trace.energies.size(); ++k)
        CHECK(trace.energies[k] <= trace.energies[k - 1] + 1e-14);
    // final points are unit
    for (std::size_t i = 0; i < trace.final_points.rows(); ++i)
        CHECK(norm2(trace.final_points.row(i)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("three points on the circle form an equilateral triangle") {
    const auto trace = minimize_config(KernelSpec::neg_euclidean_distance(), 3, 2, 5);
    // E = -(1/9) * 6 * sqrt(3)
    CHECK(trace.energies.back() == doctest::Approx(-2.0 * std::sqrt(3.0) / 3.0).epsilon(1e-7));
}

TEST_CASE("four points reach the tetrahedral optimum") {
    const auto trace = minimize_config(KernelSpec::neg_euclidean_distance(), 4, 3, 19);
    CHECK(trace.energies.back() == doctest::Approx(-std::sqrt(6.0) / 2.0).epsilon(1e-8));
}

TEST_CASE("riesz optimization avoids collisions and decreases energy") {
    OptimizeOptions opts;
    opts.max_iters = 400;
    const auto trace = minimize_config(KernelSpec::riesz(1.0), 6, 3, 42, opts);
    for (std::size_t k = 1; k < trace.energies.size(); ++k)
        CHECK(trace.energies[k] <= trace.energies[k - 1] + 1e-14);
    // 6 points under s=1 Riesz relax toward the octahedron energy
    // E = (1/36) * sum_{i != j} 1/r_ij; octahedron: 24 pairs at sqrt(2), 6 at 2
    const double octa = (24.0 / std::sqrt(2.0) + 6.0 / 2.0) / 36.0;
    CHECK(trace.energies.back() == doctest::Approx(octa).epsilon(1e-6));
}

TEST_CASE("optimizer rejects non-differentiable families") {
    CHECK_THROWS_AS(minimize_config(KernelSpec::constant(1.0), 4, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(minimize_config(KernelSpec::coordinate_sum(), 4, 3, 1),
                    std::invalid_argument);
}

TEST_CASE("gap versus continuum is nonnegative for cpd kernels") {
    const KernelSpec kernel = KernelSpec::neg_euclidean_distance();

    const double tetra_gap = gap_vs_continuum(kernel, *make_tetrahedron());
    CHECK(tetra_gap >= -1e-10);
    // E_tetra - I(sigma) = -sqrt(6)/2 + 4/3
    CHECK(tetra_gap == doctest::Approx(4.0 / 3.0 - std::sqrt(6.0) / 2.0).epsilon(1e-5));

    // random configurations do worse than the optimized one
    const auto optimized = minimize_config(kernel, 12, 3, 33);
    std::vector<std::vector<double>> pts;
    for (std::size_t i = 0; i < 12; ++i) {
        const auto row = optimized.final_points.row(i);
        pts.push_back({row[0], row[1], row[2]});
    }
    const double opt_gap = gap_vs_continuum(kernel, DiscreteSpace::sphere_explicit(3, pts));
    const double rnd_gap =
        gap_vs_continuum(kernel, DiscreteSpace::sphere_random(3, 12, 1000));
    CHECK(opt_gap >= -1e-10);
    CHECK(rnd_gap > opt_gap);

    // gap decreases along growing fibonacci sets
    double prev = 1e300;
    for (std::size_t n : {10UL, 20UL, 40UL, 80UL}) {
        const double gap = gap_vs_continuum(kernel, DiscreteSpace::sphere_fibonacci(3, n));
        CHECK(gap >= -1e-10);
        CHECK(gap < prev);
        prev = gap;
    }
}

TEST_CASE("gap versus continuum refuses non-cpd kernels") {
    CHECK_THROWS_AS(gap_vs_continuum(KernelSpec::inner_product_poly({0.0, -1.0}),
                                     *make_tetrahedron()),
                    std::invalid_argument);
    CHECK_THROWS_AS(gap_vs_continuum(KernelSpec::coordinate_sum(), *make_tetrahedron()),
                    std::invalid_argument);
}
