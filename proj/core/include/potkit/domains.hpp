#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace potkit {

enum class DomainTag { Sphere, Interval, Hamming, Generic };

const char* to_string(DomainTag tag);

/// Node tolerance shared by all construction-time checks: points closer
/// than this are considered duplicates, and sphere points must have unit
/// norm within it.
inline constexpr double kNodeTolerance = 1e-12;

/// A finite node set standing in for a compact space. Immutable after
/// construction; all pairwise geometry is Euclidean on the stored
/// coordinates (Hamming nodes are stored as +-1 vectors so inner-product
/// kernels work unchanged).
class DiscreteSpace {
public:
    // sphere(d, ...): points on S^{d-1} embedded in R^d
    static DiscreteSpace sphere_explicit(int ambient_dim, std::vector<std::vector<double>> points);
    static DiscreteSpace sphere_fibonacci(int ambient_dim, std::size_t count);
    static DiscreteSpace sphere_random(int ambient_dim, std::size_t count, std::uint64_t seed);
    static DiscreteSpace interval_uniform(std::size_t count);
    static DiscreteSpace interval_explicit(std::vector<double> points);
    static DiscreteSpace hamming(int bits);
    static DiscreteSpace generic(std::vector<std::vector<double>> points);

    DomainTag tag() const { return tag_; }
    /// Ambient coordinate dimension (d for S^{d-1}, 1 for the interval,
    /// bit count for the Hamming cube).
    int dimension() const { return dim_; }
    std::size_t size() const { return count_; }

    std::span<const double> point(std::size_t i) const {
        return {coords_.data() + i * static_cast<std::size_t>(dim_),
                static_cast<std::size_t>(dim_)};
    }

    double distance(std::size_t i, std::size_t j) const;
    double inner(std::size_t i, std::size_t j) const;

    /// FNV-1a over tag, dimension and coordinate bytes. Used to bind
    /// tabulated kernels to the space they were sampled on.
    std::uint64_t content_hash() const { return hash_; }

    bool same_as(const DiscreteSpace& other) const { return hash_ == other.hash_; }

private:
    DiscreteSpace(DomainTag tag, int dim, std::vector<double> coords);

    DomainTag tag_ = DomainTag::Generic;
    int dim_ = 0;
    std::size_t count_ = 0;
    std::vector<double> coords_; // row-major, count_ x dim_
    std::uint64_t hash_ = 0;
};

using SpacePtr = std::shared_ptr<const DiscreteSpace>;

// Small named configurations used throughout tests and the CLI.
SpacePtr make_octahedron();
SpacePtr make_tetrahedron();
SpacePtr make_icosahedron();
SpacePtr make_cube_vertices();

/// Signed atomic measure on a DiscreteSpace: one real weight per node
/// (zero allowed), with the total mass cached at construction.
class WeightedMeasure {
public:
    WeightedMeasure(SpacePtr space, std::vector<double> weights);

    static WeightedMeasure uniform(SpacePtr space);
    static WeightedMeasure delta(SpacePtr space, std::size_t node);

    const DiscreteSpace& space() const { return *space_; }
    const SpacePtr& space_ptr() const { return space_; }

    std::span<const double> weights() const { return weights_; }
    double weight(std::size_t i) const { return weights_[i]; }
    std::size_t size() const { return weights_.size(); }
    double mass() const { return mass_; }

    bool is_probability(double tol = 1e-12) const;
    bool is_mass_one(double tol = 1e-12) const;
    bool is_mean_zero(double tol = 1e-12) const;

    /// Indices of nodes carrying nonzero weight.
    std::vector<std::size_t> support() const;

    /// Restriction to a node subset: weights outside `nodes` are zeroed.
    WeightedMeasure restricted_to(std::span<const std::size_t> nodes) const;

    WeightedMeasure& operator+=(const WeightedMeasure& other);
    WeightedMeasure& operator-=(const WeightedMeasure& other);
    WeightedMeasure& operator*=(double scalar);

    friend WeightedMeasure operator+(WeightedMeasure a, const WeightedMeasure& b) { return a += b; }
    friend WeightedMeasure operator-(WeightedMeasure a, const WeightedMeasure& b) { return a -= b; }
    friend WeightedMeasure operator*(double s, WeightedMeasure m) { return m *= s; }

private:
    SpacePtr space_;
    std::vector<double> weights_;
    double mass_ = 0.0;
};

void require_same_space(const WeightedMeasure& a, const WeightedMeasure& b, const char* where);

/// Gauss rule for the Gegenbauer weight (1-t^2)^{lambda-1/2} on [-1,1],
/// built from the three-term recurrence via the Golub-Welsch eigenproblem.
/// Exact for polynomials of degree <= 2*size-1.
struct Quadrature1D {
    std::vector<double> nodes;   // strictly increasing, in (-1,1)
    std::vector<double> weights; // positive
    double lambda = 0.5;

    std::size_t size() const { return nodes.size(); }
    double integrate(const std::function<double(double)>& f) const;
    /// Total weight = integral of the weight function.
    double total_weight() const;
};

Quadrature1D gauss_gegenbauer(std::size_t points, double lambda);

/// Integral of the Gegenbauer weight itself: sqrt(pi)*Gamma(l+1/2)/Gamma(l+1).
double gegenbauer_weight_mass(double lambda);

} // namespace potkit
