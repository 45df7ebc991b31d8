#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "potkit/domains.hpp"
#include "potkit/linalg.hpp"

namespace potkit {

struct ConstantKernel { double value = 0.0; };
struct EuclideanDistanceKernel {};
struct NegEuclideanDistanceKernel {};
/// ||x-y||^{-s}; only defined where the points are distinct, so any
/// evaluation at (near-)coincident arguments throws.
struct RieszKernel { double exponent = 1.0; };
/// F(<x,y>) with F a polynomial in the power basis: coeffs[k] * t^k.
struct InnerProductPolyKernel { std::vector<double> coeffs; };
/// K(x,y) = x_1 + y_1.
struct CoordinateSumKernel {};
/// Tabulated symmetric Gram matrix bound to one specific space.
struct GramTableKernel {
    Matrix table;
    std::uint64_t space_hash = 0;
};

/// Symmetric kernel description: a family plus an additive shift. Values
/// are cheap to copy; Gram matrices are memoized per space behind a
/// mutex, shared across copies of the same spec.
class KernelSpec {
public:
    using Family = std::variant<ConstantKernel, EuclideanDistanceKernel,
                                NegEuclideanDistanceKernel, RieszKernel,
                                InnerProductPolyKernel, CoordinateSumKernel, GramTableKernel>;

    static KernelSpec constant(double value);
    static KernelSpec euclidean_distance();
    static KernelSpec neg_euclidean_distance();
    static KernelSpec riesz(double exponent);
    static KernelSpec inner_product_poly(std::vector<double> coeffs);
    static KernelSpec coordinate_sum();
    static KernelSpec gram_table(Matrix table, const DiscreteSpace& bound_space);
    static KernelSpec gram_table(Matrix table, std::uint64_t space_hash);

    /// Same family with the additive constant replaced.
    KernelSpec with_shift(double shift) const;
    double shift() const { return shift_; }

    const Family& family() const { return family_; }
    std::string family_name() const;

    bool is_gram_table() const;
    /// True when K(x,y) depends only on <x,y> (constant, inner-product
    /// polynomial, and the distance families on the sphere).
    bool is_rotation_invariant() const;
    /// Profile F with K(x,y) = F(<x,y>) for unit vectors, shift included.
    /// Throws std::invalid_argument for families without one.
    std::function<double(double)> zonal_profile() const;

    /// Pointwise evaluation for analytic families (GramTable throws).
    double evaluate(std::span<const double> x, std::span<const double> y) const;

    /// Symmetric Gram matrix on the nodes of `space` (memoized; the
    /// returned pointer stays valid after the spec goes away).
    /// Riesz throws here: its diagonal is singular.
    std::shared_ptr<const Matrix> gram(const DiscreteSpace& space) const;

    /// max_ij |K(x_i,x_j)|, the scale used by relative tolerances.
    double scale_on(const DiscreteSpace& space) const;

private:
    KernelSpec(Family family, double shift);

    Family family_;
    double shift_ = 0.0;

    struct GramCache;
    std::shared_ptr<GramCache> cache_;
};

/// I_K(mu) = sum_ij w_i w_j K(x_i,x_j), self-pairs included.
double energy(const KernelSpec& kernel, const WeightedMeasure& mu);

/// I_K(mu,nu); bilinear and symmetric.
double mixed_energy(const KernelSpec& kernel, const WeightedMeasure& mu, const WeightedMeasure& nu);

/// U_K^mu at every node of the space (not only the support of mu).
std::vector<double> potential(const KernelSpec& kernel, const WeightedMeasure& mu);

struct InvarianceCheck {
    bool invariant = false;
    double spread = 0.0; // max_i |U(x_i) - I_K(mu)|
    double energy = 0.0;
};

/// K-invariance test: U_K^mu constant (= I_K(mu)) across all nodes.
InvarianceCheck is_invariant(const KernelSpec& kernel, const WeightedMeasure& mu, double tol);

/// I_K(nu - mu) - (I_K(nu) - I_K(mu)); identically zero when mu is
/// K-invariant and nu has mass one.
double linearization_gap(const KernelSpec& kernel, const WeightedMeasure& mu,
                         const WeightedMeasure& nu);

/// Solves for the measure with constant potential and mass one (the
/// discrete equilibrium candidate): G w = c 1, sum w = 1. Returns nullopt
/// if the stationarity system is singular.
std::optional<WeightedMeasure> solve_invariant_measure(const KernelSpec& kernel,
                                                       const SpacePtr& space);

struct EnergyReport {
    double energy = 0.0;
    std::optional<double> mixed;
    std::vector<double> potential;
    double potential_min = 0.0;
    double potential_max = 0.0;
};

EnergyReport energy_report(const KernelSpec& kernel, const WeightedMeasure& mu,
                           const std::optional<WeightedMeasure>& nu = std::nullopt);

} // namespace potkit
