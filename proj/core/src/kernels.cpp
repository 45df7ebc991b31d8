#include "potkit/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "potkit/errors.hpp"

namespace potkit {

struct KernelSpec::GramCache {
    std::mutex mutex;
    std::map<std::uint64_t, std::shared_ptr<const Matrix>> by_space;
};

KernelSpec::KernelSpec(Family family, double shift)
    : family_(std::move(family)), shift_(shift), cache_(std::make_shared<GramCache>()) {}

KernelSpec KernelSpec::constant(double value) { return {ConstantKernel{value}, 0.0}; }
KernelSpec KernelSpec::euclidean_distance() { return {EuclideanDistanceKernel{}, 0.0}; }
KernelSpec KernelSpec::neg_euclidean_distance() { return {NegEuclideanDistanceKernel{}, 0.0}; }

KernelSpec KernelSpec::riesz(double exponent) {
    if (exponent <= 0.0) throw std::invalid_argument("riesz: exponent must be positive");
    return {RieszKernel{exponent}, 0.0};
}

KernelSpec KernelSpec::inner_product_poly(std::vector<double> coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("inner_product_poly: empty coefficient list");
    for (double c : coeffs)
        if (!std::isfinite(c)) throw std::invalid_argument("inner_product_poly: non-finite coefficient");
    return {InnerProductPolyKernel{std::move(coeffs)}, 0.0};
}

KernelSpec KernelSpec::coordinate_sum() { return {CoordinateSumKernel{}, 0.0}; }

KernelSpec KernelSpec::gram_table(Matrix table, const DiscreteSpace& bound_space) {
    return gram_table(std::move(table), bound_space.content_hash());
}

KernelSpec KernelSpec::gram_table(Matrix table, std::uint64_t space_hash) {
    if (table.rows() != table.cols())
        throw std::invalid_argument("gram_table: matrix must be square");
    if (!table.is_symmetric(1e-12 * std::max(1.0, table.max_abs())))
        throw std::invalid_argument("gram_table: matrix must be symmetric");
    // store exactly symmetric values
    for (std::size_t i = 0; i < table.rows(); ++i)
        for (std::size_t j = i + 1; j < table.cols(); ++j) {
            const double v = 0.5 * (table(i, j) + table(j, i));
            table(i, j) = table(j, i) = v;
        }
    return {GramTableKernel{std::move(table), space_hash}, 0.0};
}

KernelSpec KernelSpec::with_shift(double shift) const { return {family_, shift}; }

std::string KernelSpec::family_name() const {
    struct Visitor {
        std::string operator()(const ConstantKernel&) const { return "constant"; }
        std::string operator()(const EuclideanDistanceKernel&) const { return "distance"; }
        std::string operator()(const NegEuclideanDistanceKernel&) const { return "neg-distance"; }
        std::string operator()(const RieszKernel&) const { return "riesz"; }
        std::string operator()(const InnerProductPolyKernel&) const { return "poly"; }
        std::string operator()(const CoordinateSumKernel&) const { return "coordinate-sum"; }
        std::string operator()(const GramTableKernel&) const { return "gram-table"; }
    };
    return std::visit(Visitor{}, family_);
}

bool KernelSpec::is_gram_table() const {
    return std::holds_alternative<GramTableKernel>(family_);
}

bool KernelSpec::is_rotation_invariant() const {
    return !std::holds_alternative<CoordinateSumKernel>(family_) &&
           !std::holds_alternative<GramTableKernel>(family_);
}

std::function<double(double)> KernelSpec::zonal_profile() const {
    const double c = shift_;
    if (const auto* k = std::get_if<ConstantKernel>(&family_)) {
        const double v = k->value + c;
        return [v](double) { return v; };
    }
    if (std::holds_alternative<EuclideanDistanceKernel>(family_)) {
        return [c](double t) { return std::sqrt(std::max(0.0, 2.0 - 2.0 * t)) + c; };
    }
    if (std::holds_alternative<NegEuclideanDistanceKernel>(family_)) {
        return [c](double t) { return -std::sqrt(std::max(0.0, 2.0 - 2.0 * t)) + c; };
    }
    if (const auto* k = std::get_if<RieszKernel>(&family_)) {
        const double s = k->exponent;
        return [c, s](double t) {
            const double r2 = std::max(0.0, 2.0 - 2.0 * t);
            if (r2 <= kNodeTolerance * kNodeTolerance)
                throw std::domain_error("riesz profile: coincident arguments");
            return std::pow(r2, -0.5 * s) + c;
        };
    }
    if (const auto* k = std::get_if<InnerProductPolyKernel>(&family_)) {
        const std::vector<double> coeffs = k->coeffs;
        return [c, coeffs](double t) {
            double v = 0.0;
            for (std::size_t i = coeffs.size(); i-- > 0;) v = v * t + coeffs[i];
            return v + c;
        };
    }
    throw std::invalid_argument("zonal_profile: kernel family is not rotation invariant");
}

double KernelSpec::evaluate(std::span<const double> x, std::span<const double> y) const {
    if (x.size() != y.size())
        throw std::invalid_argument("KernelSpec::evaluate: dimension mismatch");
    struct Visitor {
        std::span<const double> x, y;
        double operator()(const ConstantKernel& k) const { return k.value; }
        double operator()(const EuclideanDistanceKernel&) const { return dist(); }
        double operator()(const NegEuclideanDistanceKernel&) const { return -dist(); }
        double operator()(const RieszKernel& k) const {
            const double r = dist();
            if (r <= kNodeTolerance)
                throw std::domain_error("riesz kernel: coincident nodes");
            return std::pow(r, -k.exponent);
        }
        double operator()(const InnerProductPolyKernel& k) const {
            const double t = dot(x, y);
            double v = 0.0;
            for (std::size_t i = k.coeffs.size(); i-- > 0;) v = v * t + k.coeffs[i];
            return v;
        }
        double operator()(const CoordinateSumKernel&) const { return x[0] + y[0]; }
        double operator()(const GramTableKernel&) const {
            throw std::invalid_argument("gram-table kernel: no off-node evaluation");
        }
        double dist() const {
            double s = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double d = x[i] - y[i];
                s += d * d;
            }
            return std::sqrt(s);
        }
    };
    return std::visit(Visitor{x, y}, family_) + shift_;
}

std::shared_ptr<const Matrix> KernelSpec::gram(const DiscreteSpace& space) const {
    {
        std::lock_guard lock(cache_->mutex);
        auto it = cache_->by_space.find(space.content_hash());
        if (it != cache_->by_space.end()) return it->second;
    }

    const std::size_t n = space.size();
    auto fresh = std::make_shared<Matrix>(n, n);
    if (const auto* table = std::get_if<GramTableKernel>(&family_)) {
        if (table->space_hash != space.content_hash())
            throw std::invalid_argument("gram-table kernel is bound to a different space");
        if (table->table.rows() != n)
            throw std::invalid_argument("gram-table kernel: size does not match space");
        *fresh = table->table;
        for (double& v : fresh->data()) v += shift_;
    } else if (std::holds_alternative<RieszKernel>(family_)) {
        throw std::domain_error("riesz kernel: Gram diagonal needs coincident nodes");
    } else {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                (*fresh)(i, j) = (*fresh)(j, i) = evaluate(space.point(i), space.point(j));
    }

    std::lock_guard lock(cache_->mutex);
    auto [it, inserted] = cache_->by_space.emplace(space.content_hash(), std::move(fresh));
    return it->second;
}

double KernelSpec::scale_on(const DiscreteSpace& space) const {
    if (std::holds_alternative<RieszKernel>(family_)) {
        double m = 0.0;
        for (std::size_t i = 0; i < space.size(); ++i)
            for (std::size_t j = i + 1; j < space.size(); ++j)
                m = std::max(m, std::abs(evaluate(space.point(i), space.point(j))));
        return m;
    }
    return gram(space)->max_abs();
}

namespace {

bool is_riesz(const KernelSpec& k) {
    return std::holds_alternative<RieszKernel>(k.family());
}

// Pairwise accumulation that touches only pairs with nonzero coefficient,
// so the singular Riesz diagonal trips only when it actually contributes.
double bilinear_direct(const KernelSpec& kernel, const WeightedMeasure& mu,
                       const WeightedMeasure& nu) {
    const DiscreteSpace& space = mu.space();
    double s = 0.0;
    for (std::size_t i = 0; i < space.size(); ++i) {
        const double wi = mu.weight(i);
        if (wi == 0.0) continue;
        for (std::size_t j = 0; j < space.size(); ++j) {
            const double vj = nu.weight(j);
            if (vj == 0.0) continue;
            if (i == j && is_riesz(kernel))
                throw std::domain_error("riesz kernel: coincident nodes in energy sum");
            s += wi * vj * kernel.evaluate(space.point(i), space.point(j));
        }
    }
    return s;
}

} // namespace

double energy(const KernelSpec& kernel, const WeightedMeasure& mu) {
    return mixed_energy(kernel, mu, mu);
}

double mixed_energy(const KernelSpec& kernel, const WeightedMeasure& mu,
                    const WeightedMeasure& nu) {
    require_same_space(mu, nu, "mixed_energy");
    if (is_riesz(kernel)) return bilinear_direct(kernel, mu, nu);
    const auto g_ptr = kernel.gram(mu.space());
    const Matrix& g = *g_ptr;
    const auto gw = matvec(g, nu.weights());
    return dot(mu.weights(), gw);
}

std::vector<double> potential(const KernelSpec& kernel, const WeightedMeasure& mu) {
    const DiscreteSpace& space = mu.space();
    if (is_riesz(kernel)) {
        std::vector<double> u(space.size(), 0.0);
        for (std::size_t i = 0; i < space.size(); ++i) {
            for (std::size_t j = 0; j < space.size(); ++j) {
                const double wj = mu.weight(j);
                if (wj == 0.0) continue;
                if (i == j)
                    throw std::domain_error("riesz kernel: potential at a support node");
                u[i] += wj * kernel.evaluate(space.point(i), space.point(j));
            }
        }
        return u;
    }
    return matvec(*kernel.gram(space), mu.weights());
}

InvarianceCheck is_invariant(const KernelSpec& kernel, const WeightedMeasure& mu, double tol) {
    const std::vector<double> u = potential(kernel, mu);
    const double e = dot(mu.weights(), u);
    double spread = 0.0;
    for (double ui : u) spread = std::max(spread, std::abs(ui - e));
    return {spread <= tol, spread, e};
}

double linearization_gap(const KernelSpec& kernel, const WeightedMeasure& mu,
                         const WeightedMeasure& nu) {
    require_same_space(mu, nu, "linearization_gap");
    if (!nu.is_mass_one(1e-12))
        throw std::invalid_argument("linearization_gap: nu must have total mass one");
    if (!mu.is_mass_one(1e-12))
        throw std::invalid_argument("linearization_gap: mu must have total mass one");
    const double imu = energy(kernel, mu);
    const double inu = energy(kernel, nu);
    const double idiff = energy(kernel, nu - mu);
    return idiff - (inu - imu);
}

std::optional<WeightedMeasure> solve_invariant_measure(const KernelSpec& kernel,
                                                       const SpacePtr& space) {
    const std::size_t n = space->size();
    const auto g_ptr = kernel.gram(*space);
    const Matrix& g = *g_ptr;
    // [ G  -1 ] [w]   [0]
    // [ 1'  0 ] [c] = [1]
    Matrix a(n + 1, n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a(i, j) = g(i, j);
        a(i, n) = -1.0;
        a(n, i) = 1.0;
    }
    std::vector<double> rhs(n + 1, 0.0);
    rhs[n] = 1.0;
    std::vector<double> sol;
    try {
        sol = solve_linear(std::move(a), std::move(rhs));
    } catch (const NumericalError&) {
        return std::nullopt;
    }
    sol.resize(n);
    return WeightedMeasure(space, std::move(sol));
}

EnergyReport energy_report(const KernelSpec& kernel, const WeightedMeasure& mu,
                           const std::optional<WeightedMeasure>& nu) {
    EnergyReport report;
    report.potential = potential(kernel, mu);
    report.energy = dot(mu.weights(), report.potential);
    if (nu) report.mixed = mixed_energy(kernel, mu, *nu);
    auto [lo, hi] = std::minmax_element(report.potential.begin(), report.potential.end());
    report.potential_min = *lo;
    report.potential_max = *hi;
    return report;
}

} // namespace potkit
