#include "potkit/optimize.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <variant>

#include "potkit/errors.hpp"
#include "potkit/sphere.hpp"

namespace potkit {

namespace {

enum class DiffFamily { NegDistance, Riesz, Poly };

DiffFamily differentiable_family(const KernelSpec& kernel) {
    if (std::holds_alternative<NegEuclideanDistanceKernel>(kernel.family()))
        return DiffFamily::NegDistance;
    if (std::holds_alternative<RieszKernel>(kernel.family())) return DiffFamily::Riesz;
    if (std::holds_alternative<InnerProductPolyKernel>(kernel.family())) return DiffFamily::Poly;
    throw std::invalid_argument("optimize: kernel family has no analytic gradient");
}

double pair_value(const KernelSpec& kernel, DiffFamily fam, std::span<const double> x,
                  std::span<const double> y) {
    return kernel.evaluate(x, y);
}

// d/dx K(x,y) for the differentiable families.
void add_pair_gradient(const KernelSpec& kernel, DiffFamily fam, std::span<const double> x,
                       std::span<const double> y, double factor, std::span<double> out) {
    const std::size_t d = x.size();
    switch (fam) {
        case DiffFamily::NegDistance: {
            double r2 = 0.0;
            for (std::size_t k = 0; k < d; ++k) r2 += (x[k] - y[k]) * (x[k] - y[k]);
            const double r = std::sqrt(r2);
            if (r <= kNodeTolerance)
                throw NumericalError("optimize: colliding points in neg-distance gradient");
            for (std::size_t k = 0; k < d; ++k) out[k] += factor * (-(x[k] - y[k]) / r);
            return;
        }
        case DiffFamily::Riesz: {
            const double s = std::get<RieszKernel>(kernel.family()).exponent;
            double r2 = 0.0;
            for (std::size_t k = 0; k < d; ++k) r2 += (x[k] - y[k]) * (x[k] - y[k]);
            const double r = std::sqrt(r2);
            if (r <= kNodeTolerance)
                throw NumericalError("optimize: colliding points in riesz gradient");
            const double coeff = -s * std::pow(r, -s - 2.0);
            for (std::size_t k = 0; k < d; ++k) out[k] += factor * coeff * (x[k] - y[k]);
            return;
        }
        case DiffFamily::Poly: {
            const auto& coeffs = std::get<InnerProductPolyKernel>(kernel.family()).coeffs;
            double t = 0.0;
            for (std::size_t k = 0; k < d; ++k) t += x[k] * y[k];
            double deriv = 0.0; // F'(t) by Horner on the derivative
            for (std::size_t i = coeffs.size(); i-- > 1;)
                deriv = deriv * t + coeffs[i] * static_cast<double>(i);
            for (std::size_t k = 0; k < d; ++k) out[k] += factor * deriv * y[k];
            return;
        }
    }
}

bool include_diagonal(DiffFamily fam) { return fam != DiffFamily::Riesz; }

double energy_impl(const KernelSpec& kernel, DiffFamily fam, const Matrix& pts) {
    const std::size_t n = pts.rows();
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j)
            e += 2.0 * pair_value(kernel, fam, pts.row(i), pts.row(j));
        if (include_diagonal(fam)) e += pair_value(kernel, fam, pts.row(i), pts.row(i));
    }
    return e / (static_cast<double>(n) * static_cast<double>(n));
}

Matrix gradient_impl(const KernelSpec& kernel, DiffFamily fam, const Matrix& pts) {
    const std::size_t n = pts.rows();
    Matrix grad(n, pts.cols(), 0.0);
    const double norm = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            add_pair_gradient(kernel, fam, pts.row(i), pts.row(j), 2.0 * norm, grad.row(i));
        }
        if (fam == DiffFamily::Poly) {
            // diagonal term F(<x,x>): constant on the sphere but not in
            // ambient coordinates, and the finite-difference oracle (and
            // the retraction path) sees ambient moves
            const auto& coeffs = std::get<InnerProductPolyKernel>(kernel.family()).coeffs;
            const double t = dot(pts.row(i), pts.row(i));
            double deriv = 0.0;
            for (std::size_t c = coeffs.size(); c-- > 1;)
                deriv = deriv * t + coeffs[c] * static_cast<double>(c);
            for (std::size_t k = 0; k < pts.cols(); ++k)
                grad(i, k) += norm * 2.0 * deriv * pts(i, k);
        }
    }
    return grad;
}

void renormalize_rows(Matrix& pts) {
    for (std::size_t i = 0; i < pts.rows(); ++i) {
        const double n = norm2(pts.row(i));
        if (n < 1e-14) throw NumericalError("optimize: point collapsed to the origin");
        for (double& v : pts.row(i)) v /= n;
    }
}

double tangential_norm(const Matrix& pts, const Matrix& grad, Matrix& tangent) {
    double sum = 0.0;
    for (std::size_t i = 0; i < pts.rows(); ++i) {
        const double radial = dot(grad.row(i), pts.row(i));
        for (std::size_t k = 0; k < pts.cols(); ++k) {
            const double g = grad(i, k) - radial * pts(i, k);
            tangent(i, k) = g;
            sum += g * g;
        }
    }
    return std::sqrt(sum);
}

} // namespace

double config_energy(const KernelSpec& kernel, const Matrix& points) {
    return energy_impl(kernel, differentiable_family(kernel), points);
}

Matrix config_gradient(const KernelSpec& kernel, const Matrix& points) {
    return gradient_impl(kernel, differentiable_family(kernel), points);
}

double gradient_fd_error(const KernelSpec& kernel, const Matrix& points, double h) {
    const DiffFamily fam = differentiable_family(kernel);
    const Matrix grad = gradient_impl(kernel, fam, points);
    double worst = 0.0;
    double scale = grad.max_abs();
    Matrix work = points;
    for (std::size_t i = 0; i < points.rows(); ++i) {
        for (std::size_t k = 0; k < points.cols(); ++k) {
            work(i, k) = points(i, k) + h;
            const double up = energy_impl(kernel, fam, work);
            work(i, k) = points(i, k) - h;
            const double dn = energy_impl(kernel, fam, work);
            work(i, k) = points(i, k);
            const double fd = (up - dn) / (2.0 * h);
            worst = std::max(worst, std::abs(fd - grad(i, k)));
        }
    }
    return worst / std::max(scale, 1e-300);
}

OptimizationTrace minimize_config(const KernelSpec& kernel, std::size_t n_points, int dim,
                                  std::uint64_t seed, const OptimizeOptions& opts) {
    if (n_points < 2) throw std::invalid_argument("minimize_config: need at least two points");
    if (dim < 2) throw std::invalid_argument("minimize_config: dimension must be >= 2");
    const DiffFamily fam = differentiable_family(kernel);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix pts(n_points, dim);
    for (double& v : pts.data()) v = gauss(rng);
    renormalize_rows(pts);

    const double gtol = opts.gtol_per_point * static_cast<double>(n_points);

    OptimizationTrace trace;
    double e = energy_impl(kernel, fam, pts);
    trace.energies.push_back(e);

    Matrix tangent(n_points, dim);
    double step = opts.initial_step;
    for (std::size_t it = 0; it < opts.max_iters; ++it) {
        const Matrix grad = gradient_impl(kernel, fam, pts);
        const double gnorm = tangential_norm(pts, grad, tangent);
        trace.grad_norms.push_back(gnorm);
        trace.grad_norm_final = gnorm;
        if (gnorm <= gtol) {
            trace.converged = true;
            break;
        }

        // Backtracking with tangential step and retraction by
        // normalization; a rejected step (including one that collides
        // Riesz points) halves the step size.
        bool accepted = false;
        while (step > 1e-16) {
            Matrix candidate = pts;
            for (std::size_t i = 0; i < n_points; ++i)
                for (int k = 0; k < dim; ++k)
                    candidate(i, static_cast<std::size_t>(k)) -=
                        step * tangent(i, static_cast<std::size_t>(k));
            try {
                renormalize_rows(candidate);
                const double trial = energy_impl(kernel, fam, candidate);
                if (trial <= e - opts.armijo * step * gnorm * gnorm) {
                    pts = std::move(candidate);
                    e = trial;
                    accepted = true;
                    break;
                }
            } catch (const NumericalError&) {
                // collision: treat as rejected step
            }
            step *= 0.5;
        }
        if (!accepted) {
            trace.converged = trace.grad_norm_final <= gtol;
            break;
        }
        trace.energies.push_back(e);
        trace.step_sizes.push_back(step);
        trace.iterations = it + 1;
        step = std::min(step * 2.0, opts.initial_step);
    }

    trace.final_points = std::move(pts);
    return trace;
}

double gap_vs_continuum(const KernelSpec& kernel, const DiscreteSpace& config,
                        double schoenberg_tol) {
    if (config.tag() != DomainTag::Sphere)
        throw std::invalid_argument("gap_vs_continuum: configuration must lie on a sphere");
    if (!kernel.is_rotation_invariant())
        throw std::invalid_argument("gap_vs_continuum: kernel must be rotation invariant");

    const double lambda = 0.5 * (config.dimension() - 2);
    const GegenbauerSeries series = gegenbauer_coeffs(kernel.zonal_profile(), lambda, 64);
    const SchoenbergClass cls = schoenberg_classify(series, schoenberg_tol);
    if (!cls.cpd)
        throw std::invalid_argument("gap_vs_continuum: kernel is not cpd on the sphere");

    const double continuum = series.coeffs[0]; // I_K(sigma)

    const auto profile = kernel.zonal_profile();
    const std::size_t n = config.size();
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        e += profile(1.0);
        for (std::size_t j = i + 1; j < n; ++j) e += 2.0 * profile(config.inner(i, j));
    }
    e /= static_cast<double>(n) * static_cast<double>(n);
    return e - continuum;
}

} // namespace potkit
