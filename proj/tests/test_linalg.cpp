#include <doctest.h>

#include <random>

#include "potkit/errors.hpp"
#include "potkit/linalg.hpp"

using namespace potkit;

TEST_CASE("jacobi eigensystem on a hand-checked 2x2") {
    Matrix a(2, 2);
    a(0, 0) = 2.0;
    a(1, 1) = 2.0;
    a(0, 1) = a(1, 0) = 1.0;
    const SymmetricEigen e = jacobi_eigensystem(a);
    CHECK(e.values[0] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(e.values[1] == doctest::Approx(1.0).epsilon(1e-14));
    // eigenvector of 3 is (1,1)/sqrt(2)
    CHECK(std::abs(e.vectors(0, 0)) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(e.vectors(0, 0) == doctest::Approx(e.vectors(1, 0)));
}

TEST_CASE("jacobi reconstructs random symmetric matrices") {
    std::mt19937_64 rng(42);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 3 + trial;
        Matrix a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = gauss(rng);
        const SymmetricEigen e = jacobi_eigensystem(a);

        // residual bound: ||A v - lambda v|| small relative to ||A||
        CHECK(e.max_residual <= 1e-10 * std::max(1.0, a.max_abs()) * n);

        // V diag(w) V^T == A
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double s = 0.0;
                for (std::size_t k = 0; k < n; ++k)
                    s += e.values[k] * e.vectors(i, k) * e.vectors(j, k);
                err = std::max(err, std::abs(s - a(i, j)));
            }
        CHECK(err <= 1e-12 * std::max(1.0, a.max_abs()) * n);

        for (std::size_t k = 1; k < n; ++k) CHECK(e.values[k - 1] >= e.values[k]);
    }
}

TEST_CASE("solve_linear round trip and singular detection") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::size_t n = 6;
    Matrix a(n, n);
    for (double& v : a.data()) v = gauss(rng);
    std::vector<double> x_true(n);
    for (double& v : x_true) v = gauss(rng);
    const std::vector<double> b = matvec(a, x_true);
    const std::vector<double> x = solve_linear(a, b);
    for (std::size_t i = 0; i < n; ++i) CHECK(x[i] == doctest::Approx(x_true[i]).epsilon(1e-9));

    Matrix s(2, 2);
    s(0, 0) = 1.0;
    s(0, 1) = 2.0;
    s(1, 0) = 2.0;
    s(1, 1) = 4.0;
    CHECK_THROWS_AS(solve_linear(s, {1.0, 0.0}), NumericalError);
}

TEST_CASE("mean_zero_basis spans the orthogonal complement of ones") {
    for (std::size_t n : {2UL, 5UL, 9UL}) {
        const Matrix q = mean_zero_basis(n);
        REQUIRE(q.rows() == n);
        REQUIRE(q.cols() == n - 1);
        for (std::size_t c = 0; c < n - 1; ++c) {
            double col_sum = 0.0, col_norm = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                col_sum += q(i, c);
                col_norm += q(i, c) * q(i, c);
            }
            CHECK(std::abs(col_sum) <= 1e-12);
            CHECK(col_norm == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}
