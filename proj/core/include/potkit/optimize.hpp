#pragma once

#include <cstdint>
#include <vector>

#include "potkit/domains.hpp"
#include "potkit/kernels.hpp"
#include "potkit/linalg.hpp"

namespace potkit {

struct OptimizeOptions {
    std::size_t max_iters = 2000;
    /// Convergence on the tangential gradient norm; the effective
    /// threshold is gtol_per_point * N.
    double gtol_per_point = 1e-8;
    double armijo = 1e-4;
    double initial_step = 1.0;
};

struct OptimizationTrace {
    std::vector<double> energies;   // per accepted step, non-increasing
    std::vector<double> grad_norms;
    std::vector<double> step_sizes; // accepted step size per iteration
    Matrix final_points;            // rows = points, unit norm
    double grad_norm_final = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

/// E_K(omega) = N^-2 sum_{i,j} K(x_i,x_j) with self-pairs included.
/// The singular Riesz family omits its (infinite) diagonal.
double config_energy(const KernelSpec& kernel, const Matrix& points);

/// Euclidean gradient of config_energy with respect to every point.
Matrix config_gradient(const KernelSpec& kernel, const Matrix& points);

/// Max relative deviation between the analytic gradient and central
/// finite differences.
double gradient_fd_error(const KernelSpec& kernel, const Matrix& points, double h = 1e-5);

/// Projected gradient descent on (S^{d-1})^N with backtracking line
/// search; differentiable families only (neg-distance, riesz,
/// inner-product polynomial). Deterministic given the seed.
OptimizationTrace minimize_config(const KernelSpec& kernel, std::size_t n_points, int dim,
                                  std::uint64_t seed, const OptimizeOptions& opts = {});

/// E_K(omega) - I_K(sigma) for a rotation-invariant cpd kernel; the
/// continuum value is the degree-zero Gegenbauer coefficient. Refuses
/// kernels whose Schoenberg classification is not cpd (the gap sign is
/// then not guaranteed).
double gap_vs_continuum(const KernelSpec& kernel, const DiscreteSpace& config,
                        double schoenberg_tol = 1e-3);

} // namespace potkit
