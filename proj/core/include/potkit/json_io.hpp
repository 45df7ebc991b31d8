#pragma once

#include <string>
#include <utility>

#include "potkit/domains.hpp"
#include "potkit/kernels.hpp"
#include "potkit/spectral.hpp"
#include "potkit/sphere.hpp"

namespace potkit {

// Interchange formats. All writers emit deterministic, insertion-ordered
// JSON so repeated runs produce byte-identical files.

/// {tag, params, points: [[...]], weights: [...]}; weights omitted for a
/// bare space.
std::string space_to_json(const DiscreteSpace& space, int indent = 2);
std::string measure_to_json(const WeightedMeasure& measure, int indent = 2);
SpacePtr space_from_json(const std::string& text);
WeightedMeasure measure_from_json(const std::string& text);

/// {family, params, shift}; gram tables embed the matrix row-major plus
/// the content hash of the space they are bound to.
std::string kernel_to_json(const KernelSpec& kernel, int indent = 2);
KernelSpec kernel_from_json(const std::string& text);

/// {eigenvalues, phi (row-major), weights, rank, residual}
std::string decomposition_to_json(const MercerDecomposition& decomp, int indent = 2);

/// {lambda, coeffs, truncation_error}
std::string series_to_json(const GegenbauerSeries& series, int indent = 2);
GegenbauerSeries series_from_json(const std::string& text);

} // namespace potkit
