#include "potkit/stolarsky.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "potkit/errors.hpp"
#include "potkit/linalg.hpp"

namespace potkit {

double l2_discrepancy(const SqrtKernel& k, const WeightedMeasure& mu, const WeightedMeasure& nu) {
    require_same_space(mu, nu, "l2_discrepancy");
    if (mu.space().content_hash() != k.space_hash)
        throw std::invalid_argument("l2_discrepancy: square root table bound to a different space");
    if (!mu.is_probability(1e-9))
        throw std::invalid_argument("l2_discrepancy: mu must be a probability measure");
    if (!nu.is_mass_one(1e-9))
        throw std::invalid_argument("l2_discrepancy: nu must have total mass one");

    const std::size_t m = k.support.size();
    std::vector<char> on_support(mu.size(), 0);
    for (std::size_t node : k.support) on_support[node] = 1;
    for (std::size_t i = 0; i < nu.size(); ++i)
        if (!on_support[i] && nu.weight(i) != 0.0)
            throw std::invalid_argument("l2_discrepancy: nu is not carried by the support of k");

    std::vector<double> diff(m);
    for (std::size_t a = 0; a < m; ++a)
        diff[a] = nu.weight(k.support[a]) - mu.weight(k.support[a]);

    double d2 = 0.0;
    for (std::size_t z = 0; z < m; ++z) {
        double inner = 0.0;
        for (std::size_t a = 0; a < m; ++a) inner += diff[a] * k.table(a, z);
        d2 += k.support_weights[z] * inner * inner;
    }
    return d2;
}

DiscrepancyReport generalized_stolarsky(const KernelSpec& kernel, const WeightedMeasure& mu,
                                        const WeightedMeasure& nu, double tol) {
    require_same_space(mu, nu, "generalized_stolarsky");
    if (!mu.is_probability(1e-9))
        throw std::invalid_argument("generalized_stolarsky: mu must be a probability measure");
    if (!nu.is_mass_one(1e-9))
        throw std::invalid_argument("generalized_stolarsky: nu must have total mass one");

    const std::vector<std::size_t> support = mu.support();
    const bool full_support = support.size() == mu.size();

    // With partial support the identity lives on supp(mu): nu must be
    // carried by it.
    if (!full_support) {
        std::vector<char> on_support(mu.size(), 0);
        for (std::size_t node : support) on_support[node] = 1;
        for (std::size_t i = 0; i < nu.size(); ++i)
            if (!on_support[i] && nu.weight(i) != 0.0)
                throw std::invalid_argument(
                    "generalized_stolarsky: nu must be carried by the support of mu");
    }

    const auto g_ptr = kernel.gram(mu.space());
    const Matrix& g = *g_ptr;
    const double scale = std::max(g.max_abs(), 1e-300);

    // Precondition: constant potential on supp(mu), U >= I elsewhere.
    const std::vector<double> u = potential(kernel, mu);
    const double imu = dot(mu.weights(), u);
    double spread_on_support = 0.0;
    for (std::size_t node : support)
        spread_on_support = std::max(spread_on_support, std::abs(u[node] - imu));
    if (spread_on_support > 10.0 * tol * scale)
        throw std::invalid_argument(
            "generalized_stolarsky: mu is not K-invariant on its support (spread " +
            std::to_string(spread_on_support) + ")");

    // Precondition: K positive definite modulo a constant on supp(mu).
    Matrix g_supp(support.size(), support.size());
    for (std::size_t a = 0; a < support.size(); ++a)
        for (std::size_t c = 0; c < support.size(); ++c)
            g_supp(a, c) = g(support[a], support[c]);

    // Any certified shift works here (no minimality needed, unlike the
    // classify report), so a doubling search keeps the eigencheck count
    // small for repeated calls.
    double extra_shift = 0.0;
    {
        const std::size_t m = support.size();
        auto min_eig_shift = [&](double c) {
            Matrix s = g_supp;
            for (double& v : s.data()) v += c;
            return jacobi_eigensystem(s).values.back();
        };
        const double eig_tol = 1e-9 * scale;
        const double base_min = min_eig_shift(0.0);
        if (base_min < -eig_tol) {
            const double hi = static_cast<double>(m) * static_cast<double>(m) * scale;
            double candidate = std::max(2.0 * (-base_min), eig_tol);
            bool found = false;
            while (candidate <= hi) {
                if (min_eig_shift(candidate) >= -eig_tol) {
                    found = true;
                    break;
                }
                candidate *= 4.0;
            }
            if (!found && min_eig_shift(hi) >= -eig_tol) {
                candidate = hi;
                found = true;
            }
            if (!found)
                throw std::invalid_argument(
                    "generalized_stolarsky: kernel is not positive definite modulo a constant "
                    "on the support of mu");
            extra_shift = candidate;
        }
    }

    // mercer_decompose restricts itself to supp(mu), so the shifted
    // original kernel can be decomposed directly.
    const KernelSpec shifted = kernel.with_shift(kernel.shift() + extra_shift);
    const MercerDecomposition decomp = mercer_decompose(shifted, mu);
    const SqrtKernel k = convolution_sqrt(decomp, {}, tol * std::max(decomp.b_scale, 1e-300));

    DiscrepancyReport report;
    report.shift_used = extra_shift;
    report.d2 = l2_discrepancy(k, mu, nu);
    report.energy_gap = energy(kernel, nu) - imu;
    report.identity_residual = report.d2 - report.energy_gap;
    return report;
}

namespace {

// int_0^alpha sin^{d-2}(theta) dtheta by Gauss-Legendre mapped to [0,alpha].
double polar_slice(double alpha, int ambient_dim, const Quadrature1D& gl) {
    double s = 0.0;
    for (std::size_t q = 0; q < gl.size(); ++q) {
        const double theta = 0.5 * alpha * (gl.nodes[q] + 1.0);
        s += gl.weights[q] * std::pow(std::sin(theta), ambient_dim - 2);
    }
    return 0.5 * alpha * s;
}

} // namespace

double cap_measure(double height, int ambient_dim, std::size_t quad_nodes) {
    if (ambient_dim < 2) throw std::invalid_argument("cap_measure: ambient dimension >= 2");
    if (height <= -1.0) return 1.0;
    if (height >= 1.0) return 0.0;
    const Quadrature1D gl = gauss_gegenbauer(quad_nodes, 0.5);
    const double alpha = std::acos(height);
    return polar_slice(alpha, ambient_dim, gl) / polar_slice(std::numbers::pi, ambient_dim, gl);
}

namespace {

// Antiderivatives of the normalized cap measure and its square on [-1,1].
// The empirical term is a step function of the height, so with these the
// height integral is evaluated exactly segment by segment and the only
// quadrature error left is the center integral.
struct CapAntiderivatives {
    int dim;

    double cap(double h) const {
        if (dim == 3) return 0.5 * (1.0 - h);
        return std::acos(h) / std::numbers::pi;
    }
    double first(double h) const { // int cap dh
        if (dim == 3) return 0.5 * h - 0.25 * h * h;
        const double s = std::sqrt(std::max(0.0, 1.0 - h * h));
        return (h * std::acos(h) - s) / std::numbers::pi;
    }
    double second(double h) const { // int cap^2 dh
        if (dim == 3) {
            const double omh = 1.0 - h;
            return -omh * omh * omh / 12.0;
        }
        const double a = std::acos(h);
        const double s = std::sqrt(std::max(0.0, 1.0 - h * h));
        return (h * a * a - 2.0 * s * a - 2.0 * h) / (std::numbers::pi * std::numbers::pi);
    }
};

} // namespace

double cap_discrepancy(const DiscreteSpace& points, const CapDiscrepancyOptions& opts) {
    if (points.tag() != DomainTag::Sphere)
        throw std::invalid_argument("cap_discrepancy: points must lie on a sphere");
    const int d = points.dimension();
    if (d != 2 && d != 3)
        throw std::invalid_argument("cap_discrepancy: center quadrature exists for d = 2, 3 only");
    const std::size_t n = points.size();

    const CapAntiderivatives anti{d};
    const DiscreteSpace centers = DiscreteSpace::sphere_fibonacci(d, opts.center_nodes);

    // Per center: the empirical cap count is constant between consecutive
    // sorted inner products, so the height integral splits into exact
    // segment contributions  e^2 dh - 2 e int(cap) + int(cap^2).
    double total = 0.0;
    std::vector<double> t(n);
    for (std::size_t c = 0; c < centers.size(); ++c) {
        const auto x = centers.point(c);
        for (std::size_t i = 0; i < n; ++i)
            t[i] = std::clamp(dot(x, points.point(i)), -1.0, 1.0);
        std::sort(t.begin(), t.end());

        double local = 0.0;
        double lo = -1.0;
        for (std::size_t k = 0; k <= n; ++k) {
            const double hi = (k == n) ? 1.0 : t[k];
            if (hi > lo) {
                const double emp = static_cast<double>(n - k) / static_cast<double>(n);
                local += emp * emp * (hi - lo) - 2.0 * emp * (anti.first(hi) - anti.first(lo)) +
                         (anti.second(hi) - anti.second(lo));
            }
            lo = hi;
        }
        total += local;
    }
    return total / static_cast<double>(centers.size());
}

ClassicalRatioReport classical_ratio(std::span<const DiscreteSpace> sets,
                                     const CapDiscrepancyOptions& opts) {
    if (sets.size() < 2)
        throw std::invalid_argument("classical_ratio: need at least two point sets");
    const int d = sets.front().dimension();
    for (const DiscreteSpace& s : sets) {
        if (s.tag() != DomainTag::Sphere || s.dimension() != d)
            throw std::invalid_argument("classical_ratio: all sets must lie on the same sphere");
    }

    // Mean distance over sigma x sigma: the inner-product density on the
    // sphere is exactly the Gegenbauer weight with lambda = (d-2)/2.
    const double lambda = 0.5 * (d - 2);
    const Quadrature1D quad = gauss_gegenbauer(200, lambda);
    double mean_dist = 0.0;
    for (std::size_t q = 0; q < quad.size(); ++q)
        mean_dist += quad.weights[q] * std::sqrt(std::max(0.0, 2.0 - 2.0 * quad.nodes[q]));
    mean_dist /= quad.total_weight();

    ClassicalRatioReport report;
    report.sigma_mean_distance = mean_dist;
    for (const DiscreteSpace& s : sets) {
        const std::size_t n = s.size();
        double e = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) e += s.distance(i, j);
        e /= static_cast<double>(n) * static_cast<double>(n);
        const double gap = mean_dist - e;
        const double d2 = cap_discrepancy(s, opts);
        if (d2 < 1e-14)
            throw std::invalid_argument("classical_ratio: degenerate set with vanishing discrepancy");
        report.energy_gaps.push_back(gap);
        report.cap_d2.push_back(d2);
        report.ratios.push_back(gap / d2);
    }

    double mean = 0.0;
    for (double r : report.ratios) mean += r;
    mean /= static_cast<double>(report.ratios.size());
    report.mean_ratio = mean;
    double spread = 0.0;
    for (double r : report.ratios) spread = std::max(spread, std::abs(r - mean));
    report.spread_rel = spread / std::max(std::abs(mean), 1e-300);
    return report;
}

} // namespace potkit
