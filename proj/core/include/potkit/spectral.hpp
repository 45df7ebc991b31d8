#pragma once

#include <span>
#include <vector>

#include "potkit/domains.hpp"
#include "potkit/kernels.hpp"
#include "potkit/linalg.hpp"

namespace potkit {

/// Eigen-expansion of the integral operator T_{K,mu} at quadrature
/// resolution. Computed from B = D^{1/2} G D^{1/2} with D = diag(weights)
/// on the support of mu; eigenfunctions are mapped back by phi = D^{-1/2} v
/// and are orthonormal in L2(mu). Restricted to supp(mu): off-support
/// nodes carry no eigenfunction values.
struct MercerDecomposition {
    std::vector<double> eigenvalues;      // descending
    Matrix eigenfunctions;                // row j: phi_j at support nodes
    std::vector<std::size_t> support;     // node indices into the space
    std::vector<double> support_weights;  // mu-weights at support nodes
    std::uint64_t space_hash = 0;
    std::size_t rank = 0;                 // count of |lambda| > rank threshold
    double rank_threshold = 0.0;
    double eigen_residual = 0.0;          // max ||B v - lambda v||
    double b_scale = 0.0;                 // max_ij |B_ij|

    double trace() const;
};

/// rank_tol is relative to max|B|; pass 0 to use the default 1e-10.
MercerDecomposition mercer_decompose(const KernelSpec& kernel, const WeightedMeasure& mu,
                                     double rank_tol = 0.0);

/// (T psi)(x_i) = sum_j w_j K(x_i,x_j) psi(x_j) at every node of the
/// space; psi is sampled at all nodes.
std::vector<double> hs_apply(const KernelSpec& kernel, const WeightedMeasure& mu,
                             std::span<const double> psi);

/// Same operator through the eigen-expansion; psi and the result are
/// sampled at the support nodes of the decomposition.
std::vector<double> hs_apply(const MercerDecomposition& decomp, std::span<const double> psi);

/// Reconstruction sum_j lambda_j phi_j phi_j^T on the support nodes.
Matrix mercer_reconstruction(const MercerDecomposition& decomp);

/// Convolution square root: a symmetric table k with
/// sum_z w_z k(x,z) k(z,y) = K(x,y) on the support nodes.
struct SqrtKernel {
    Matrix table;                        // k(x_i, x_j) over support nodes
    std::vector<std::size_t> support;
    std::vector<double> support_weights;
    std::uint64_t space_hash = 0;
    std::vector<int> sign_choice;        // +-1 per eigenvalue
};

/// Builds k = sum_j s_j sqrt(lambda_j) phi_j phi_j^T. Eigenvalues in
/// [-tol, 0] are clamped to zero; anything below -tol throws
/// NotPositiveDefiniteError. Empty signs means all +1. tol <= 0 uses
/// 1e-9 * max|B|.
SqrtKernel convolution_sqrt(const MercerDecomposition& decomp,
                            std::span<const int> signs = {}, double tol = 0.0);

/// mu-weighted composition (k o k)(x_i, x_j); reproduces the Gram matrix
/// of the decomposed kernel up to the clamped spectrum.
Matrix sqrt_composition(const SqrtKernel& k);

} // namespace potkit
