#include "potkit/domains.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <random>
#include <stdexcept>

#include "potkit/errors.hpp"
#include "potkit/linalg.hpp"

namespace potkit {

const char* to_string(DomainTag tag) {
    switch (tag) {
        case DomainTag::Sphere: return "sphere";
        case DomainTag::Interval: return "interval";
        case DomainTag::Hamming: return "hamming";
        case DomainTag::Generic: return "generic";
    }
    return "unknown";
}

namespace {

std::uint64_t fnv1a(const void* data, std::size_t bytes, std::uint64_t h) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < bytes; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

std::vector<double> flatten(int dim, const std::vector<std::vector<double>>& pts) {
    std::vector<double> flat;
    flat.reserve(pts.size() * static_cast<std::size_t>(dim));
    for (const auto& p : pts) {
        if (static_cast<int>(p.size()) != dim)
            throw std::invalid_argument("DiscreteSpace: point dimension mismatch");
        flat.insert(flat.end(), p.begin(), p.end());
    }
    return flat;
}

} // namespace

DiscreteSpace::DiscreteSpace(DomainTag tag, int dim, std::vector<double> coords)
    : tag_(tag), dim_(dim), coords_(std::move(coords)) {
    if (dim_ < 1) throw std::invalid_argument("DiscreteSpace: dimension must be >= 1");
    if (coords_.empty() || coords_.size() % static_cast<std::size_t>(dim_) != 0)
        throw std::invalid_argument("DiscreteSpace: need at least one point");
    count_ = coords_.size() / static_cast<std::size_t>(dim_);

    for (double c : coords_)
        if (!std::isfinite(c)) throw std::invalid_argument("DiscreteSpace: non-finite coordinate");

    if (tag_ == DomainTag::Sphere) {
        for (std::size_t i = 0; i < count_; ++i) {
            const double n = norm2(point(i));
            if (std::abs(n - 1.0) > kNodeTolerance)
                throw std::invalid_argument("DiscreteSpace: sphere point is not unit norm");
        }
    }
    if (tag_ == DomainTag::Interval) {
        for (double c : coords_)
            if (c < -1.0 - kNodeTolerance || c > 1.0 + kNodeTolerance)
                throw std::invalid_argument("DiscreteSpace: interval point outside [-1,1]");
    }

    // Hamming nodes are distinct bit patterns by construction.
    if (tag_ != DomainTag::Hamming) {
        for (std::size_t i = 0; i < count_; ++i)
            for (std::size_t j = i + 1; j < count_; ++j)
                if (distance(i, j) <= kNodeTolerance)
                    throw std::invalid_argument("DiscreteSpace: duplicate points rejected");
    }

    std::uint64_t h = 1469598103934665603ULL;
    const int tag_int = static_cast<int>(tag_);
    h = fnv1a(&tag_int, sizeof(tag_int), h);
    h = fnv1a(&dim_, sizeof(dim_), h);
    h = fnv1a(coords_.data(), coords_.size() * sizeof(double), h);
    hash_ = h;
}

double DiscreteSpace::distance(std::size_t i, std::size_t j) const {
    const auto a = point(i);
    const auto b = point(j);
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        s += d * d;
    }
    return std::sqrt(s);
}

double DiscreteSpace::inner(std::size_t i, std::size_t j) const {
    return dot(point(i), point(j));
}

DiscreteSpace DiscreteSpace::sphere_explicit(int ambient_dim, std::vector<std::vector<double>> points) {
    if (ambient_dim < 2) throw std::invalid_argument("sphere: ambient dimension must be >= 2");
    return DiscreteSpace(DomainTag::Sphere, ambient_dim, flatten(ambient_dim, points));
}

DiscreteSpace DiscreteSpace::sphere_fibonacci(int ambient_dim, std::size_t count) {
    if (count < 1) throw std::invalid_argument("sphere_fibonacci: need at least one point");
    std::vector<double> flat;
    if (ambient_dim == 3) {
        // Golden-spiral lattice; z offset by half a step keeps the poles free.
        flat.reserve(count * 3);
        const double dz = 2.0 / static_cast<double>(count);
        const double dtheta = std::numbers::pi * (1.0 + std::sqrt(5.0));
        double z = -1.0 + 0.5 * dz;
        double theta = 0.0;
        for (std::size_t i = 0; i < count; ++i) {
            const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            flat.push_back(r * std::cos(theta));
            flat.push_back(r * std::sin(theta));
            flat.push_back(z);
            // renormalize against rounding in r
            const std::size_t base = flat.size() - 3;
            const double n = std::sqrt(flat[base] * flat[base] + flat[base + 1] * flat[base + 1] +
                                       flat[base + 2] * flat[base + 2]);
            for (int k = 0; k < 3; ++k) flat[base + k] /= n;
            z += dz;
            theta += dtheta;
        }
    } else if (ambient_dim == 2) {
        // Kronecker sequence with the golden ratio: the circle analogue.
        flat.reserve(count * 2);
        const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
        for (std::size_t i = 0; i < count; ++i) {
            const double frac = std::fmod(static_cast<double>(i) * golden, 1.0);
            const double theta = 2.0 * std::numbers::pi * frac;
            flat.push_back(std::cos(theta));
            flat.push_back(std::sin(theta));
        }
    } else {
        throw std::invalid_argument("sphere_fibonacci: implemented for ambient dimension 2 and 3");
    }
    return DiscreteSpace(DomainTag::Sphere, ambient_dim, std::move(flat));
}

DiscreteSpace DiscreteSpace::sphere_random(int ambient_dim, std::size_t count, std::uint64_t seed) {
    if (ambient_dim < 2) throw std::invalid_argument("sphere: ambient dimension must be >= 2");
    if (count < 1) throw std::invalid_argument("sphere_random: need at least one point");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> flat(count * static_cast<std::size_t>(ambient_dim));
    for (std::size_t i = 0; i < count; ++i) {
        double n = 0.0;
        do {
            n = 0.0;
            for (int k = 0; k < ambient_dim; ++k) {
                const double g = gauss(rng);
                flat[i * ambient_dim + k] = g;
                n += g * g;
            }
            n = std::sqrt(n);
        } while (n < 1e-8);
        for (int k = 0; k < ambient_dim; ++k) flat[i * ambient_dim + k] /= n;
    }
    return DiscreteSpace(DomainTag::Sphere, ambient_dim, std::move(flat));
}

DiscreteSpace DiscreteSpace::interval_uniform(std::size_t count) {
    if (count < 1) throw std::invalid_argument("interval: need at least one point");
    std::vector<double> flat(count);
    if (count == 1) {
        flat[0] = 0.0;
    } else {
        for (std::size_t i = 0; i < count; ++i)
            flat[i] = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    return DiscreteSpace(DomainTag::Interval, 1, std::move(flat));
}

DiscreteSpace DiscreteSpace::interval_explicit(std::vector<double> points) {
    return DiscreteSpace(DomainTag::Interval, 1, std::move(points));
}

DiscreteSpace DiscreteSpace::hamming(int bits) {
    if (bits < 1 || bits > 16) throw std::invalid_argument("hamming: bits must be in [1,16]");
    const std::size_t count = std::size_t{1} << bits;
    std::vector<double> flat(count * static_cast<std::size_t>(bits));
    for (std::size_t v = 0; v < count; ++v)
        for (int k = 0; k < bits; ++k)
            flat[v * bits + k] = (v >> k) & 1 ? 1.0 : -1.0;
    return DiscreteSpace(DomainTag::Hamming, bits, std::move(flat));
}

DiscreteSpace DiscreteSpace::generic(std::vector<std::vector<double>> points) {
    if (points.empty()) throw std::invalid_argument("generic: need at least one point");
    const int dim = static_cast<int>(points.front().size());
    return DiscreteSpace(DomainTag::Generic, dim, flatten(dim, points));
}

SpacePtr make_octahedron() {
    std::vector<std::vector<double>> pts;
    for (int axis = 0; axis < 3; ++axis)
        for (double s : {1.0, -1.0}) {
            std::vector<double> p(3, 0.0);
            p[axis] = s;
            pts.push_back(p);
        }
    return std::make_shared<DiscreteSpace>(DiscreteSpace::sphere_explicit(3, std::move(pts)));
}

SpacePtr make_tetrahedron() {
    const double s = 1.0 / std::sqrt(3.0);
    std::vector<std::vector<double>> pts = {
        {s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
    return std::make_shared<DiscreteSpace>(DiscreteSpace::sphere_explicit(3, std::move(pts)));
}

SpacePtr make_icosahedron() {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    const double n = std::sqrt(1.0 + phi * phi);
    std::vector<std::vector<double>> pts;
    for (double a : {1.0, -1.0})
        for (double b : {phi, -phi}) {
            pts.push_back({0.0, a / n, b / n});
            pts.push_back({a / n, b / n, 0.0});
            pts.push_back({b / n, 0.0, a / n});
        }
    return std::make_shared<DiscreteSpace>(DiscreteSpace::sphere_explicit(3, std::move(pts)));
}

SpacePtr make_cube_vertices() {
    const double s = 1.0 / std::sqrt(3.0);
    std::vector<std::vector<double>> pts;
    for (double x : {s, -s})
        for (double y : {s, -s})
            for (double z : {s, -s}) pts.push_back({x, y, z});
    return std::make_shared<DiscreteSpace>(DiscreteSpace::sphere_explicit(3, std::move(pts)));
}

WeightedMeasure::WeightedMeasure(SpacePtr space, std::vector<double> weights)
    : space_(std::move(space)), weights_(std::move(weights)) {
    if (!space_) throw std::invalid_argument("WeightedMeasure: null space");
    if (weights_.size() != space_->size())
        throw std::invalid_argument("WeightedMeasure: weight count does not match node count");
    double m = 0.0;
    for (double w : weights_) {
        if (!std::isfinite(w)) throw std::invalid_argument("WeightedMeasure: non-finite weight");
        m += w;
    }
    mass_ = m;
}

WeightedMeasure WeightedMeasure::uniform(SpacePtr space) {
    if (!space) throw std::invalid_argument("WeightedMeasure: null space");
    const std::size_t n = space->size();
    return WeightedMeasure(std::move(space), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

WeightedMeasure WeightedMeasure::delta(SpacePtr space, std::size_t node) {
    if (!space) throw std::invalid_argument("WeightedMeasure: null space");
    if (node >= space->size()) throw std::invalid_argument("WeightedMeasure: node out of range");
    std::vector<double> w(space->size(), 0.0);
    w[node] = 1.0;
    return WeightedMeasure(std::move(space), std::move(w));
}

bool WeightedMeasure::is_probability(double tol) const {
    if (!is_mass_one(tol)) return false;
    for (double w : weights_)
        if (w < -tol) return false;
    return true;
}

bool WeightedMeasure::is_mass_one(double tol) const { return std::abs(mass_ - 1.0) <= tol; }

bool WeightedMeasure::is_mean_zero(double tol) const {
    double scale = 0.0;
    for (double w : weights_) scale += std::abs(w);
    return std::abs(mass_) <= tol * std::max(1.0, scale);
}

std::vector<std::size_t> WeightedMeasure::support() const {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < weights_.size(); ++i)
        if (weights_[i] != 0.0) s.push_back(i);
    return s;
}

WeightedMeasure WeightedMeasure::restricted_to(std::span<const std::size_t> nodes) const {
    std::vector<double> w(weights_.size(), 0.0);
    for (std::size_t i : nodes) {
        if (i >= weights_.size()) throw std::invalid_argument("restricted_to: node out of range");
        w[i] = weights_[i];
    }
    return WeightedMeasure(space_, std::move(w));
}

WeightedMeasure& WeightedMeasure::operator+=(const WeightedMeasure& other) {
    require_same_space(*this, other, "measure addition");
    for (std::size_t i = 0; i < weights_.size(); ++i) weights_[i] += other.weights_[i];
    mass_ += other.mass_;
    return *this;
}

WeightedMeasure& WeightedMeasure::operator-=(const WeightedMeasure& other) {
    require_same_space(*this, other, "measure subtraction");
    for (std::size_t i = 0; i < weights_.size(); ++i) weights_[i] -= other.weights_[i];
    mass_ -= other.mass_;
    return *this;
}

WeightedMeasure& WeightedMeasure::operator*=(double scalar) {
    for (double& w : weights_) w *= scalar;
    mass_ *= scalar;
    return *this;
}

void require_same_space(const WeightedMeasure& a, const WeightedMeasure& b, const char* where) {
    if (!a.space().same_as(b.space())) {
        throw std::invalid_argument(std::string(where) + ": measures live on different spaces");
    }
}

double Quadrature1D::integrate(const std::function<double(double)>& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
}

double Quadrature1D::total_weight() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

double gegenbauer_weight_mass(double lambda) {
    return std::sqrt(std::numbers::pi) * std::tgamma(lambda + 0.5) / std::tgamma(lambda + 1.0);
}

Quadrature1D gauss_gegenbauer(std::size_t points, double lambda) {
    if (points < 1) throw std::invalid_argument("gauss_gegenbauer: need at least one point");
    if (lambda <= -0.5) throw std::invalid_argument("gauss_gegenbauer: lambda must exceed -1/2");

    // Monic recurrence for the weight (1-t^2)^(lambda-1/2): a_k = 0 and
    //   b_1 = 1/(2(lambda+1)),  b_k = k(k+2l-1)/(4(k+l)(k+l-1))  (k >= 2).
    const std::size_t m = points;
    Matrix jac(m, m, 0.0);
    for (std::size_t k = 1; k < m; ++k) {
        const double kk = static_cast<double>(k);
        const double beta = (k == 1)
                                ? 1.0 / (2.0 * (lambda + 1.0))
                                : kk * (kk + 2.0 * lambda - 1.0) /
                                      (4.0 * (kk + lambda) * (kk + lambda - 1.0));
        const double off = std::sqrt(beta);
        jac(k - 1, k) = off;
        jac(k, k - 1) = off;
    }

    const SymmetricEigen eig = jacobi_eigensystem(jac);
    const double mass = gegenbauer_weight_mass(lambda);

    std::vector<std::pair<double, double>> rule(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double first = eig.vectors(0, j);
        rule[j] = {eig.values[j], mass * first * first};
    }
    std::sort(rule.begin(), rule.end());

    Quadrature1D q;
    q.lambda = lambda;
    q.nodes.resize(m);
    q.weights.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        q.nodes[j] = rule[j].first;
        q.weights[j] = rule[j].second;
        if (q.weights[j] <= 0.0)
            throw NumericalError("gauss_gegenbauer: nonpositive weight from eigen solve");
        if (j > 0 && q.nodes[j] <= q.nodes[j - 1])
            throw NumericalError("gauss_gegenbauer: nodes are not strictly increasing");
    }
    // A symmetric weight gives nodes symmetric about zero; snap the middle
    // node of an odd rule to exactly 0 to keep odd moments exact.
    if (m % 2 == 1 && std::abs(q.nodes[m / 2]) < 1e-13) q.nodes[m / 2] = 0.0;
    return q;
}

} // namespace potkit
