#pragma once

#include <optional>
#include <span>
#include <vector>

#include "potkit/domains.hpp"
#include "potkit/kernels.hpp"
#include "potkit/spectral.hpp"

namespace potkit {

struct DiscrepancyReport {
    double d2 = 0.0;                // squared L2 discrepancy, >= 0
    double energy_gap = 0.0;        // I_K(nu) - I_K(mu)
    double identity_residual = 0.0; // d2 - energy_gap
    double shift_used = 0.0;        // the C that made K + C positive definite
    std::optional<double> cap_d2;
    std::optional<double> ratio_cd;
};

/// D^2_{L2,k,mu}(nu) = sum_z w^mu_z ( sum_x (nu-mu)_x k(x,z) )^2.
/// nu must be carried by the support nodes of k.
double l2_discrepancy(const SqrtKernel& k, const WeightedMeasure& mu, const WeightedMeasure& nu);

/// Checks the preconditions (mu K-invariant, K positive definite modulo a
/// constant on supp(mu)), builds the convolution square root of K + C and
/// reports both sides of the identity I_K(nu) - I_K(mu) = D^2. When mu
/// lacks full support, the identity is evaluated on supp(mu) and nu must
/// be carried by it.
DiscrepancyReport generalized_stolarsky(const KernelSpec& kernel, const WeightedMeasure& mu,
                                        const WeightedMeasure& nu, double tol = 1e-8);

struct CapDiscrepancyOptions {
    std::size_t center_nodes = 4096;    // Fibonacci nodes for the sphere integral
    std::size_t cap_measure_nodes = 32; // polar-angle quadrature for cap_measure
};

/// Spherical-cap L2 discrepancy of a point set against the uniform
/// measure (d = 2, 3). The empirical term is a step function of the cap
/// height, so the height integral is evaluated exactly from closed-form
/// antiderivatives of the cap measure; the center integral runs over an
/// equal-weight Fibonacci set.
double cap_discrepancy(const DiscreteSpace& points, const CapDiscrepancyOptions& opts = {});

/// Normalized cap measure sigma(C(x,h)) on S^{d-1}.
double cap_measure(double height, int ambient_dim, std::size_t quad_nodes = 32);

struct ClassicalRatioReport {
    std::vector<double> ratios;    // (mean-distance gap) / cap D^2, per set
    std::vector<double> cap_d2;
    std::vector<double> energy_gaps;
    double mean_ratio = 0.0;       // the measured c_d
    double spread_rel = 0.0;       // max relative deviation from the mean
    double sigma_mean_distance = 0.0;
};

/// The classical invariance check: across point sets on the same sphere,
/// (int int ||x-y|| dsigma dsigma - N^-2 sum ||z_i-z_j||) / D^2_cap is one
/// constant. The constant is reported, never assumed.
ClassicalRatioReport classical_ratio(std::span<const DiscreteSpace> sets,
                                     const CapDiscrepancyOptions& opts = {});

} // namespace potkit
