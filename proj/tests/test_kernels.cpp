#include <doctest.h>

#include <cmath>
#include <random>

#include "potkit/errors.hpp"
#include "potkit/kernels.hpp"
#include "support.hpp"

using namespace potkit;
using testsupport::shared_space;

namespace {

SpacePtr antipodal_pair() {
    // node 0 = -e1, node 1 = +e1 (the Example 2.5 layout)
    return shared_space(DiscreteSpace::sphere_explicit(3, {{-1, 0, 0}, {1, 0, 0}}));
}

} // namespace

TEST_CASE("constant kernel energy is c * mass^2") {
    auto space = shared_space(DiscreteSpace::interval_uniform(5));
    const auto mu = WeightedMeasure::uniform(space);
    CHECK(energy(KernelSpec::constant(3.5), mu) == doctest::Approx(3.5).epsilon(1e-14));

    const WeightedMeasure halves(space, {0.25, 0.25, 0.0, 0.0, 0.0});
    CHECK(energy(KernelSpec::constant(2.0), halves) == doctest::Approx(2.0 * 0.25));
}

TEST_CASE("coordinate-sum kernel reproduces the shifted signed-measure energy") {
    auto space = antipodal_pair();
    for (double c : {0.0, 1.0, 2.0, 5.0}) {
        const WeightedMeasure mu(space, {c + 1.0, -c});
        const KernelSpec kernel = KernelSpec::coordinate_sum().with_shift(c);
        CHECK(energy(kernel, mu) == doctest::Approx(-3.0 * c - 2.0).epsilon(1e-14));
    }
}

TEST_CASE("distance kernel on the endpoints of the interval") {
    auto space = shared_space(DiscreteSpace::interval_explicit({-1.0, 1.0}));
    const auto mu = WeightedMeasure::uniform(space);
    CHECK(energy(KernelSpec::euclidean_distance(), mu) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("potential of the symmetric two-point measure is constant") {
    auto space = shared_space(DiscreteSpace::interval_explicit({-1.0, 0.0, 1.0}));
    const WeightedMeasure mu(space, {0.5, 0.0, 0.5});
    const auto u = potential(KernelSpec::euclidean_distance(), mu);
    for (double v : u) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));

    const auto check = is_invariant(KernelSpec::euclidean_distance(), mu, 1e-14);
    CHECK(check.invariant);
    CHECK(check.spread <= 1e-14);
    CHECK(check.energy == doctest::Approx(1.0));
}

TEST_CASE("potential of a constant kernel is c * mass everywhere") {
    auto space = shared_space(DiscreteSpace::interval_uniform(4));
    const WeightedMeasure mu(space, {0.5, 0.25, 0.25, 0.5}); // mass 1.5
    for (double v : potential(KernelSpec::constant(2.0), mu))
        CHECK(v == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("delta at e1 is not invariant for the distance kernel") {
    auto space = antipodal_pair();
    const auto delta = WeightedMeasure::delta(space, 1);
    const auto check = is_invariant(KernelSpec::euclidean_distance(), delta, 1e-9);
    CHECK(!check.invariant);
    CHECK(check.spread == doctest::Approx(2.0)); // U(-e1)=2 vs I=0
}

TEST_CASE("mixed energy: bilinear, symmetric, diagonal equals energy") {
    auto space = shared_space(DiscreteSpace::sphere_fibonacci(3, 12));
    std::mt19937_64 rng(99);
    const KernelSpec kernel = KernelSpec::neg_euclidean_distance();

    const auto mu = testsupport::random_mass_one(space, rng);
    const auto nu = testsupport::random_mass_one(space, rng);
    CHECK(mixed_energy(kernel, mu, nu) == doctest::Approx(mixed_energy(kernel, nu, mu)));
    CHECK(mixed_energy(kernel, mu, mu) == doctest::Approx(energy(kernel, mu)).epsilon(1e-12));

    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    for (int trial = 0; trial < 8; ++trial) {
        const double a = uni(rng), b = uni(rng);
        const auto mu2 = testsupport::random_mass_one(space, rng);
        const auto combo = a * mu + b * mu2;
        const double lhs = mixed_energy(kernel, combo, nu);
        const double rhs = a * mixed_energy(kernel, mu, nu) + b * mixed_energy(kernel, mu2, nu);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("constant kernel mixed energy is a*b*c") {
    auto space = shared_space(DiscreteSpace::interval_uniform(3));
    const WeightedMeasure mu(space, {1.0, 0.5, 0.5});  // mass 2
    const WeightedMeasure nu(space, {0.25, 0.25, 0.0}); // mass 0.5
    CHECK(mixed_energy(KernelSpec::constant(3.0), mu, nu) == doctest::Approx(3.0));
}

TEST_CASE("additive shift law and mean-zero insensitivity") {
    auto space = shared_space(DiscreteSpace::sphere_fibonacci(3, 10));
    std::mt19937_64 rng(17);
    const KernelSpec base = KernelSpec::neg_euclidean_distance();
    const double c = 1.7;
    const KernelSpec shifted = base.with_shift(c);

    for (int trial = 0; trial < 10; ++trial) {
        const auto mu = testsupport::random_mass_one(space, rng);
        const double scale = std::max(1.0, std::abs(energy(base, mu)));
        CHECK(std::abs(energy(shifted, mu) - energy(base, mu) - c * mu.mass() * mu.mass()) <=
              1e-12 * scale);

        const auto nu = testsupport::random_mass_one(space, rng);
        const auto mean_zero = mu - nu;
        CHECK(std::abs(energy(shifted, mean_zero) - energy(base, mean_zero)) <= 1e-12 * scale);
    }
}

TEST_CASE("energy equals the brute-force double loop") {
    auto space = shared_space(DiscreteSpace::sphere_random(3, 50, 2024));
    std::mt19937_64 rng(31);
    const auto mu = testsupport::random_mass_one(space, rng);
    for (const KernelSpec& kernel :
         {KernelSpec::euclidean_distance(), KernelSpec::coordinate_sum(),
          KernelSpec::inner_product_poly({0.5, -1.0, 2.0})}) {
        const double direct = testsupport::brute_energy(kernel, mu, mu);
        CHECK(energy(kernel, mu) == doctest::Approx(direct).epsilon(1e-11));
    }
}

TEST_CASE("mixed energy of an invariant measure equals its energy") {
    auto space = shared_space(DiscreteSpace::interval_explicit({-1.0, -0.25, 0.5, 1.0}));
    const WeightedMeasure mu(space, {0.5, 0.0, 0.0, 0.5}); // invariant for |x-y|
    const KernelSpec kernel = KernelSpec::euclidean_distance();
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 5; ++trial) {
        const auto nu = testsupport::random_mass_one(space, rng);
        CHECK(mixed_energy(kernel, mu, nu) == doctest::Approx(energy(kernel, mu)).epsilon(1e-12));
    }
}

TEST_CASE("linearization gap vanishes at invariant measures") {
    auto space = shared_space(DiscreteSpace::interval_explicit({-1.0, -0.3, 0.2, 1.0}));
    const WeightedMeasure mu(space, {0.5, 0.0, 0.0, 0.5});
    const KernelSpec kernel = KernelSpec::euclidean_distance();
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const auto nu = testsupport::random_mass_one(space, rng);
        CHECK(std::abs(linearization_gap(kernel, mu, nu)) <= 1e-12);
    }
    // mu = nu is trivially zero
    CHECK(linearization_gap(kernel, mu, mu) == doctest::Approx(0.0));
}

TEST_CASE("linearization gap of the antipodal deltas is -4") {
    auto space = antipodal_pair();
    const auto mu = WeightedMeasure::delta(space, 1);  // e1
    const auto nu = WeightedMeasure::delta(space, 0);  // -e1
    // expand: I(nu-mu) - I(nu) + I(mu) = -2 I(mu,nu) + 2 I(mu) = -2*2 = -4
    CHECK(linearization_gap(KernelSpec::euclidean_distance(), mu, nu) ==
          doctest::Approx(-4.0).epsilon(1e-14));
}

TEST_CASE("linearization gap rejects wrong masses") {
    auto space = antipodal_pair();
    const auto mu = WeightedMeasure::uniform(space);
    const WeightedMeasure bad(space, {0.3, 0.3});
    CHECK_THROWS_AS(linearization_gap(KernelSpec::euclidean_distance(), mu, bad),
                    std::invalid_argument);
}

TEST_CASE("riesz kernel refuses coincident evaluations but allows cross terms") {
    auto space = shared_space(DiscreteSpace::sphere_explicit(
        3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
    const KernelSpec riesz = KernelSpec::riesz(1.0);

    const auto delta0 = WeightedMeasure::delta(space, 0);
    const auto delta1 = WeightedMeasure::delta(space, 1);
    CHECK(mixed_energy(riesz, delta0, delta1) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));

    CHECK_THROWS_AS(energy(riesz, delta0), std::domain_error);
    CHECK_THROWS_AS(potential(riesz, delta0), std::domain_error);
}

TEST_CASE("gram-table kernels are bound to one space") {
    auto space = shared_space(DiscreteSpace::interval_uniform(3));
    auto other = shared_space(DiscreteSpace::interval_uniform(4));
    Matrix g(3, 3);
    for (std::size_t i = 0; i < 3; ++i) g(i, i) = 1.0;
    const KernelSpec table = KernelSpec::gram_table(g, *space);
    CHECK(energy(table, WeightedMeasure::uniform(space)) == doctest::Approx(1.0 / 3.0));
    CHECK_THROWS_AS(energy(table, WeightedMeasure::uniform(other)), std::invalid_argument);

    Matrix asym(2, 2);
    asym(0, 1) = 1.0; // not symmetric
    CHECK_THROWS_AS(KernelSpec::gram_table(asym, *space), std::invalid_argument);
}

TEST_CASE("solve_invariant_measure finds the equilibrium weights") {
    auto space = make_octahedron();
    const KernelSpec kernel = KernelSpec::neg_euclidean_distance();
    const auto mu = solve_invariant_measure(kernel, space);
    REQUIRE(mu.has_value());
    CHECK(mu->is_probability(1e-10));
    const auto check = is_invariant(kernel, *mu, 1e-10);
    CHECK(check.invariant);
    for (std::size_t i = 0; i < 6; ++i)
        CHECK(mu->weight(i) == doctest::Approx(1.0 / 6.0).epsilon(1e-10));
}

TEST_CASE("energy report carries potential extremes") {
    auto space = antipodal_pair();
    const auto mu = WeightedMeasure::delta(space, 1);
    const EnergyReport report = energy_report(KernelSpec::euclidean_distance(), mu);
    CHECK(report.energy == doctest::Approx(0.0));
    CHECK(report.potential_min == doctest::Approx(0.0));
    CHECK(report.potential_max == doctest::Approx(2.0));
}
