#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "potkit/domains.hpp"
#include "potkit/kernels.hpp"

namespace potkit {

/// Five-way definiteness classification of a kernel on a finite space,
/// realized as spectral tests on the Gram matrix and on its restriction
/// to the mean-zero hyperplane. A witness measure (negative quadratic
/// form, unit Euclidean weight norm) is attached when pd fails, and a
/// certifying shift constant when pd_mod_constant holds.
struct DefinitenessReport {
    bool pd = false;
    bool cpd = false;
    bool strict_pd = false;
    bool strict_cpd = false;
    bool pd_mod_constant = false;
    std::optional<WeightedMeasure> witness_violation;
    std::optional<double> shift_constant;
    double min_eig_full = 0.0;
    double min_eig_centered = 0.0;
    double tolerance = 0.0; // absolute eigenvalue threshold used
};

DefinitenessReport classify(const KernelSpec& kernel, const SpacePtr& space,
                            double tol_rel = 1e-9);

/// (I(mu1)+I(mu2))/2 - I(mu1,mu2); equals I_K(mu1-mu2)/2 identically.
/// Both measures must have total mass one.
double am_inequality_gap(const KernelSpec& kernel, const WeightedMeasure& mu1,
                         const WeightedMeasure& mu2);

/// sqrt(I(mu1) I(mu2)) - I(mu1,mu2). Throws std::domain_error when a
/// self-energy is below -tol (which already certifies "not pd").
double gm_inequality_gap(const KernelSpec& kernel, const WeightedMeasure& mu1,
                         const WeightedMeasure& mu2, double tol = 0.0);

struct ConvexityScan {
    double min_chord_gap = 0.0; // min over the grid of (1-t)f(0)+t f(1)-f(t)
    double argmin_t = 0.0;
    double quadratic_coeff = 0.0; // = I_K(nu - mu)
};

ConvexityScan convexity_scan(const KernelSpec& kernel, const WeightedMeasure& mu,
                             const WeightedMeasure& nu, std::span<const double> t_grid);

enum class PotentialStatus { InvariantFullSupport, ConstOnSuppGeqElsewhere, Fails };

const char* to_string(PotentialStatus status);

/// Classification keys on potential values: if U equals I_K(mu) at every
/// node (within tol) the report says InvariantFullSupport even when some
/// weights vanish.
struct PotentialCondition {
    PotentialStatus status = PotentialStatus::Fails;
    double energy = 0.0;
    double max_dev_on_support = 0.0;
    double min_slack_off_support = 0.0; // min over off-support of U - I
    std::size_t worst_node = 0;
};

PotentialCondition potential_condition(const KernelSpec& kernel, const WeightedMeasure& mu,
                                       double tol);

/// Directional local-minimum test. Energy along the segment toward each
/// probe is an exact quadratic, so only the slope at zero and the
/// curvature are consulted: a direction fails when f'(0) < -tol, or when
/// |f'(0)| <= tol and the curvature is below -tol (scaled by the squared
/// direction norm). A probe equal to mu is degenerate and passes.
struct LocalMinTest {
    bool passed = true;
    std::optional<std::size_t> worst_probe;
    double worst_slope = 0.0;
    double worst_curvature = 0.0;
};

LocalMinTest directional_local_min_test(const KernelSpec& kernel, const WeightedMeasure& mu,
                                        std::span<const WeightedMeasure> probes, double tol);

enum class HarnessMode { Cpd, Pd, Cspd };

const char* to_string(HarnessMode mode);

struct ConsistencyReport {
    HarnessMode mode = HarnessMode::Cpd;
    std::vector<std::pair<std::string, bool>> conditions;
    bool all_agree = false;
    bool expected = false; // the common value when all_agree
    double tolerance = 0.0;
};

/// Evaluates the equivalent characterizations of (conditional / strict
/// conditional) positive definiteness as independent boolean checks and
/// reports whether they agree. Requires mu to be K-invariant with full
/// support; throws std::invalid_argument otherwise.
ConsistencyReport equivalence_harness(const KernelSpec& kernel, const SpacePtr& space,
                                      const WeightedMeasure& mu, HarnessMode mode = HarnessMode::Cpd,
                                      double tol_rel = 1e-9, std::uint64_t probe_seed = 20240901);

} // namespace potkit
