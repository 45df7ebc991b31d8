#include "potkit/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "potkit/errors.hpp"
#include "potkit/linalg.hpp"

namespace potkit {

namespace {

void check_args(int degree, double lambda, double t) {
    if (degree < 0) throw std::invalid_argument("gegenbauer: degree must be >= 0");
    if (lambda < 0.0) throw std::invalid_argument("gegenbauer: lambda must be >= 0");
    if (t < -1.0 - 1e-12 || t > 1.0 + 1e-12)
        throw std::domain_error("gegenbauer: argument outside [-1,1]");
}

double chebyshev_t(int n, double t) {
    if (n == 0) return 1.0;
    double prev = 1.0, cur = t;
    for (int k = 2; k <= n; ++k) {
        const double next = 2.0 * t * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

} // namespace

double gegenbauer_eval(int degree, double lambda, double t) {
    check_args(degree, lambda, t);
    if (lambda == 0.0) {
        if (degree == 0) return 1.0;
        return 2.0 / static_cast<double>(degree) * chebyshev_t(degree, t);
    }
    if (degree == 0) return 1.0;
    double prev = 1.0;
    double cur = 2.0 * lambda * t;
    for (int n = 2; n <= degree; ++n) {
        const double next =
            (2.0 * (n + lambda - 1.0) * t * cur - (n + 2.0 * lambda - 2.0) * prev) / n;
        prev = cur;
        cur = next;
    }
    return cur;
}

double zonal_eval(int degree, double lambda, double t) {
    check_args(degree, lambda, t);
    if (lambda == 0.0) {
        if (degree == 0) return 1.0;
        return 2.0 * chebyshev_t(degree, t);
    }
    return (degree + lambda) / lambda * gegenbauer_eval(degree, lambda, t);
}

double gegenbauer_value_at_one(int degree, double lambda) {
    if (degree < 0) throw std::invalid_argument("gegenbauer: degree must be >= 0");
    if (lambda == 0.0) return degree == 0 ? 1.0 : 2.0 / static_cast<double>(degree);
    // binom(n + 2l - 1, n)
    return std::exp(std::lgamma(degree + 2.0 * lambda) - std::lgamma(2.0 * lambda) -
                    std::lgamma(degree + 1.0));
}

double gegenbauer_norm_sq(int degree, double lambda) {
    if (degree < 0) throw std::invalid_argument("gegenbauer: degree must be >= 0");
    if (lambda == 0.0) {
        if (degree == 0) return std::numbers::pi;
        return 2.0 * std::numbers::pi / (static_cast<double>(degree) * degree);
    }
    const double log_h = std::log(std::numbers::pi) + (1.0 - 2.0 * lambda) * std::numbers::ln2 +
                         std::lgamma(degree + 2.0 * lambda) - std::lgamma(degree + 1.0) -
                         std::log(degree + lambda) - 2.0 * std::lgamma(lambda);
    return std::exp(log_h);
}

double zonal_norm_sq(int degree, double lambda) {
    if (lambda == 0.0) return degree == 0 ? std::numbers::pi : 2.0 * std::numbers::pi;
    const double factor = (degree + lambda) / lambda;
    return factor * factor * gegenbauer_norm_sq(degree, lambda);
}

double GegenbauerSeries::reconstruct(double t) const {
    double s = 0.0;
    for (int n = 0; n <= max_degree(); ++n) s += coeffs[n] * zonal_eval(n, lambda, t);
    return s;
}

namespace {

// Largest zonal term near the end of the expansion, a conservative proxy
// for the uniform tail error. The window is the trailing 8 coefficients
// at the default depth and shrinks with n_max so that genuine low-degree
// coefficients never land in it.
double zonal_tail_estimate(const std::vector<double>& coeffs, double lambda) {
    const int n_max = static_cast<int>(coeffs.size()) - 1;
    const int window = std::min(8, std::max(1, (n_max + 1) / 4));
    double err = 0.0;
    for (int n = n_max + 1 - window; n <= n_max; ++n)
        err = std::max(err, std::abs(coeffs[n] * zonal_eval(n, lambda, 1.0)));
    return err;
}

} // namespace

GegenbauerSeries gegenbauer_coeffs(const std::function<double(double)>& f, double lambda,
                                   int n_max, int m_quad) {
    if (n_max < 0) throw std::invalid_argument("gegenbauer_coeffs: n_max must be >= 0");
    if (m_quad == 0) m_quad = 2 * (n_max + 1);
    if (m_quad < n_max + 1)
        throw std::invalid_argument("gegenbauer_coeffs: quadrature too small for requested degree");

    const Quadrature1D quad = gauss_gegenbauer(static_cast<std::size_t>(m_quad), lambda);

    GegenbauerSeries series;
    series.lambda = lambda;
    series.coeffs.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
    for (std::size_t q = 0; q < quad.size(); ++q) {
        const double t = quad.nodes[q];
        const double fw = f(t) * quad.weights[q];
        for (int n = 0; n <= n_max; ++n)
            series.coeffs[n] += fw * zonal_eval(n, lambda, t);
    }
    for (int n = 0; n <= n_max; ++n) series.coeffs[n] /= zonal_norm_sq(n, lambda);

    series.truncation_error = zonal_tail_estimate(series.coeffs, lambda);
    return series;
}

SchoenbergClass schoenberg_classify(const GegenbauerSeries& series, double tol) {
    if (series.truncation_error > tol)
        throw std::domain_error(
            "schoenberg_classify: truncation error exceeds tolerance, classification inconclusive");
    SchoenbergClass cls{true, true};
    for (std::size_t n = 0; n < series.coeffs.size(); ++n) {
        if (series.coeffs[n] < -tol) {
            cls.pd = false;
            if (n >= 1) cls.cpd = false;
        }
    }
    return cls;
}

int harmonic_dimension_s2(int degree) {
    if (degree < 0) throw std::invalid_argument("harmonic_dimension_s2: degree must be >= 0");
    return 2 * degree + 1;
}

namespace {

// Associated Legendre P_l^m without Condon-Shortley phase, l <= 4.
double assoc_legendre(int l, int m, double x, double sx) {
    switch (l * 10 + m) {
        case 0: return 1.0;
        case 10: return x;
        case 11: return sx;
        case 20: return 0.5 * (3.0 * x * x - 1.0);
        case 21: return 3.0 * x * sx;
        case 22: return 3.0 * sx * sx;
        case 30: return 0.5 * x * (5.0 * x * x - 3.0);
        case 31: return 1.5 * (5.0 * x * x - 1.0) * sx;
        case 32: return 15.0 * x * sx * sx;
        case 33: return 15.0 * sx * sx * sx;
        case 40: return 0.125 * (35.0 * x * x * x * x - 30.0 * x * x + 3.0);
        case 41: return 2.5 * x * (7.0 * x * x - 3.0) * sx;
        case 42: return 7.5 * (7.0 * x * x - 1.0) * sx * sx;
        case 43: return 105.0 * x * sx * sx * sx;
        case 44: return 105.0 * sx * sx * sx * sx;
    }
    throw std::invalid_argument("real_harmonic_s2: degree above the implemented limit");
}

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

} // namespace

double real_harmonic_s2(int degree, int order, std::span<const double> xyz) {
    if (degree < 0 || degree > 4)
        throw std::invalid_argument("real_harmonic_s2: degrees 0..4 are implemented");
    if (order < -degree || order > degree)
        throw std::invalid_argument("real_harmonic_s2: order out of range");
    if (xyz.size() != 3) throw std::invalid_argument("real_harmonic_s2: need a 3-vector");

    const double z = xyz[2];
    const double sx = std::sqrt(std::max(0.0, 1.0 - z * z));
    const int m = std::abs(order);
    const double p = assoc_legendre(degree, m, z, sx);
    if (m == 0) return std::sqrt(2.0 * degree + 1.0) * p;

    const double phi = std::atan2(xyz[1], xyz[0]);
    const double norm = std::sqrt(2.0 * (2.0 * degree + 1.0) * factorial(degree - m) /
                                  factorial(degree + m));
    return norm * p * (order > 0 ? std::cos(m * phi) : std::sin(m * phi));
}

double funk_hecke_residual(const std::function<double(double)>& f, double coeff, int degree,
                           int order, const DiscreteSpace& sphere_nodes, int num_probes) {
    if (sphere_nodes.tag() != DomainTag::Sphere || sphere_nodes.dimension() != 3)
        throw std::invalid_argument("funk_hecke_residual: need nodes on S^2");
    const std::size_t n = sphere_nodes.size();
    std::vector<double> y_at(n);
    for (std::size_t j = 0; j < n; ++j)
        y_at[j] = real_harmonic_s2(degree, order, sphere_nodes.point(j));

    const std::size_t stride = std::max<std::size_t>(1, n / static_cast<std::size_t>(num_probes));
    double worst = 0.0;
    for (std::size_t p = 0; p < n; p += stride) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double t = std::clamp(dot(sphere_nodes.point(p), sphere_nodes.point(j)), -1.0, 1.0);
            lhs += f(t) * y_at[j];
        }
        lhs /= static_cast<double>(n);
        worst = std::max(worst, std::abs(lhs - coeff * y_at[p]));
    }
    return worst;
}

namespace {

std::vector<double> random_unit3(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> v(3);
    double n = 0.0;
    do {
        n = 0.0;
        for (double& x : v) {
            x = gauss(rng);
            n += x * x;
        }
        n = std::sqrt(n);
    } while (n < 1e-8);
    for (double& x : v) x /= n;
    return v;
}

} // namespace

double addition_formula_residual(int degree, std::uint64_t seed, int pairs) {
    if (degree < 0 || degree > 4)
        throw std::invalid_argument("addition_formula_residual: degrees 0..4 are implemented");
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int p = 0; p < pairs; ++p) {
        const std::vector<double> x = random_unit3(rng);
        const std::vector<double> y = random_unit3(rng);
        double sum = 0.0;
        for (int m = -degree; m <= degree; ++m)
            sum += real_harmonic_s2(degree, m, x) * real_harmonic_s2(degree, m, y);
        const double t = std::clamp(dot(std::span<const double>(x), std::span<const double>(y)),
                                    -1.0, 1.0);
        worst = std::max(worst, std::abs(sum - zonal_eval(degree, 0.5, t)));
    }
    return worst;
}

GegenbauerSeries sphere_sqrt(const GegenbauerSeries& series, double tol) {
    GegenbauerSeries root;
    root.lambda = series.lambda;
    root.coeffs.resize(series.coeffs.size(), 0.0);
    for (std::size_t n = 0; n < series.coeffs.size(); ++n) {
        const double c = series.coeffs[n];
        if (c < -tol)
            throw NotPositiveDefiniteError("sphere_sqrt: negative Gegenbauer coefficient", c);
        root.coeffs[n] = c <= tol ? 0.0 : std::sqrt(c);
    }
    root.truncation_error = zonal_tail_estimate(root.coeffs, root.lambda);
    return root;
}

std::vector<double> zonal_power_coefficients(const GegenbauerSeries& series) {
    const int n_max = series.max_degree();
    std::vector<double> out(static_cast<std::size_t>(n_max) + 1, 0.0);
    // power-basis coefficients of C_{n-1} and C_n, advanced by the
    // three-term recurrence
    std::vector<double> prev{1.0};
    std::vector<double> cur;
    const double lambda = series.lambda;
    if (n_max >= 1) cur = {0.0, lambda == 0.0 ? 2.0 : 2.0 * lambda};
    // at lambda = 0 track 2*T_n directly (the zonal limit convention)
    for (int n = 0; n <= n_max; ++n) {
        std::vector<double> zonal;
        if (n == 0) {
            zonal = {1.0};
        } else if (lambda == 0.0) {
            zonal = cur; // already 2 T_n
        } else {
            zonal = cur;
            const double factor = (n + lambda) / lambda;
            for (double& c : zonal) c *= factor;
        }
        for (std::size_t k = 0; k < zonal.size(); ++k) out[k] += series.coeffs[n] * zonal[k];

        if (n + 1 <= n_max && n >= 1) {
            std::vector<double> next(static_cast<std::size_t>(n) + 2, 0.0);
            if (lambda == 0.0) {
                // Z_{n+1} = 2t Z_n - Z_{n-1}, except Z_0 = T_0 carries no
                // factor 2, so the first step subtracts 2 Z_0.
                for (std::size_t k = 0; k < cur.size(); ++k) next[k + 1] += 2.0 * cur[k];
                for (std::size_t k = 0; k < prev.size(); ++k)
                    next[k] -= (n == 1 ? 2.0 : 1.0) * prev[k];
            } else {
                const double a = 2.0 * (n + lambda) / (n + 1.0);
                const double b = (n + 2.0 * lambda - 1.0) / (n + 1.0);
                for (std::size_t k = 0; k < cur.size(); ++k) next[k + 1] += a * cur[k];
                for (std::size_t k = 0; k < prev.size(); ++k) next[k] -= b * prev[k];
            }
            prev = cur;
            cur = std::move(next);
        }
    }
    return out;
}

double sqrt_composition_residual(const GegenbauerSeries& f,
                                 const std::function<double(double)>& original,
                                 const DiscreteSpace& z_nodes, std::uint64_t seed, int pairs) {
    if (z_nodes.tag() != DomainTag::Sphere || z_nodes.dimension() != 3)
        throw std::invalid_argument("sqrt_composition_residual: z nodes must lie on S^2");
    std::mt19937_64 rng(seed);
    const std::size_t n = z_nodes.size();
    double worst = 0.0;
    for (int p = 0; p < pairs; ++p) {
        const std::vector<double> x = random_unit3(rng);
        const std::vector<double> y = random_unit3(rng);
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const auto zj = z_nodes.point(j);
            const double tx = std::clamp(dot(std::span<const double>(x), zj), -1.0, 1.0);
            const double ty = std::clamp(dot(zj, std::span<const double>(y)), -1.0, 1.0);
            acc += f.reconstruct(tx) * f.reconstruct(ty);
        }
        acc /= static_cast<double>(n);
        const double t = std::clamp(dot(std::span<const double>(x), std::span<const double>(y)),
                                    -1.0, 1.0);
        worst = std::max(worst, std::abs(acc - original(t)));
    }
    return worst;
}

} // namespace potkit
