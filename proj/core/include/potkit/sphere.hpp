#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "potkit/domains.hpp"

namespace potkit {

/// Gegenbauer polynomial C_n^lambda(t) by the three-term recurrence.
/// lambda = 0 (the circle) uses the Chebyshev limit convention
/// C_n^0 = (2/n) T_n for n >= 1.
double gegenbauer_eval(int degree, double lambda, double t);

/// Zonal basis function: ((n+lambda)/lambda) C_n^lambda(t), which the
/// expansion F = sum F^(n) * Z_n uses; at lambda = 0 this limits to
/// Z_0 = 1, Z_n = 2 T_n.
double zonal_eval(int degree, double lambda, double t);

double gegenbauer_value_at_one(int degree, double lambda);
double gegenbauer_norm_sq(int degree, double lambda);
double zonal_norm_sq(int degree, double lambda);

/// Expansion of a function on [-1,1] in the zonal Gegenbauer basis for
/// lambda = (d-2)/2. coeffs[n] is F^(n,lambda); the Funk-Hecke eigenvalue
/// of the associated kernel operator on S^{d-1}.
struct GegenbauerSeries {
    double lambda = 0.5;
    std::vector<double> coeffs;
    double truncation_error = 0.0;

    int max_degree() const { return static_cast<int>(coeffs.size()) - 1; }
    double reconstruct(double t) const;
};

/// Coefficients by Gauss-Gegenbauer quadrature; exact for polynomial F of
/// degree <= n_max when m_quad >= n_max + 1. m_quad = 0 selects the
/// default 2*(n_max+1).
GegenbauerSeries gegenbauer_coeffs(const std::function<double(double)>& f, double lambda,
                                   int n_max = 64, int m_quad = 0);

struct SchoenbergClass {
    bool pd = false;
    bool cpd = false;
};

/// Sign test on the coefficients: pd needs all of them >= -tol, cpd the
/// same for n >= 1. Throws std::domain_error when the truncation error
/// exceeds tol (inconclusive rather than guessed).
SchoenbergClass schoenberg_classify(const GegenbauerSeries& series, double tol);

/// dim of the degree-n spherical harmonic space on S^2.
int harmonic_dimension_s2(int degree);

/// Real spherical harmonic on S^2, unit L2 norm against the normalized
/// surface measure; degree <= 4, order in [-degree, degree].
double real_harmonic_s2(int degree, int order, std::span<const double> xyz);

/// Max over probe nodes of |quadrature LHS - coeff * Y(x)| for the
/// identity  (1/N) sum_j F(<x,z_j>) Y(z_j) = F^(n) Y(x)  on a dense
/// equal-weight sphere node set.
double funk_hecke_residual(const std::function<double(double)>& f, double coeff, int degree,
                           int order, const DiscreteSpace& sphere_nodes, int num_probes = 16);

/// Max over random unit pairs of |sum_m Y_{n,m}(x) Y_{n,m}(y) - Z_n(<x,y>)|.
double addition_formula_residual(int degree, std::uint64_t seed = 7, int pairs = 100);

/// Coefficient-wise square root f^(n) = sqrt(F^(n)); coefficients within
/// tol of zero are treated as zero, anything below -tol throws
/// NotPositiveDefiniteError.
GegenbauerSeries sphere_sqrt(const GegenbauerSeries& series, double tol);

/// Max over random unit pairs of
/// |(1/N) sum_z f(<x,z>) f(<z,y>) - F(<x,y>)| with z over the given nodes.
double sqrt_composition_residual(const GegenbauerSeries& f, const std::function<double(double)>& original,
                                 const DiscreteSpace& z_nodes, std::uint64_t seed = 11,
                                 int pairs = 32);

/// Power-basis coefficients of the reconstructed profile, so a series can
/// back an inner-product kernel. Practical for modest degree; the power
/// basis conditioning degrades past a few dozen.
std::vector<double> zonal_power_coefficients(const GegenbauerSeries& series);

} // namespace potkit
