#include "potkit/json_io.hpp"

#include <stdexcept>

#include <json.hpp>

namespace potkit {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json points_array(const DiscreteSpace& space) {
    ordered_json pts = ordered_json::array();
    for (std::size_t i = 0; i < space.size(); ++i) {
        ordered_json row = ordered_json::array();
        for (double c : space.point(i)) row.push_back(c);
        pts.push_back(std::move(row));
    }
    return pts;
}

ordered_json space_json(const DiscreteSpace& space) {
    ordered_json j;
    j["tag"] = to_string(space.tag());
    j["params"] = {{"dimension", space.dimension()}, {"count", space.size()}};
    j["points"] = points_array(space);
    return j;
}

SpacePtr space_from(const ordered_json& j) {
    const std::string tag = j.at("tag").get<std::string>();
    const int dim = j.at("params").at("dimension").get<int>();
    std::vector<std::vector<double>> pts;
    for (const auto& row : j.at("points")) pts.push_back(row.get<std::vector<double>>());

    if (tag == "sphere")
        return std::make_shared<DiscreteSpace>(DiscreteSpace::sphere_explicit(dim, std::move(pts)));
    if (tag == "interval") {
        std::vector<double> flat;
        for (const auto& p : pts) flat.push_back(p.at(0));
        return std::make_shared<DiscreteSpace>(DiscreteSpace::interval_explicit(std::move(flat)));
    }
    if (tag == "hamming" || tag == "generic")
        return std::make_shared<DiscreteSpace>(DiscreteSpace::generic(std::move(pts)));
    throw std::invalid_argument("space_from_json: unknown tag '" + tag + "'");
}

} // namespace

std::string space_to_json(const DiscreteSpace& space, int indent) {
    return space_json(space).dump(indent);
}

std::string measure_to_json(const WeightedMeasure& measure, int indent) {
    ordered_json j = space_json(measure.space());
    j["weights"] = std::vector<double>(measure.weights().begin(), measure.weights().end());
    return j.dump(indent);
}

SpacePtr space_from_json(const std::string& text) {
    return space_from(ordered_json::parse(text));
}

WeightedMeasure measure_from_json(const std::string& text) {
    const ordered_json j = ordered_json::parse(text);
    SpacePtr space = space_from(j);
    return WeightedMeasure(std::move(space), j.at("weights").get<std::vector<double>>());
}

std::string kernel_to_json(const KernelSpec& kernel, int indent) {
    ordered_json j;
    j["family"] = kernel.family_name();
    ordered_json params = ordered_json::object();
    if (const auto* k = std::get_if<ConstantKernel>(&kernel.family())) {
        params["value"] = k->value;
    } else if (const auto* k = std::get_if<RieszKernel>(&kernel.family())) {
        params["exponent"] = k->exponent;
    } else if (const auto* k = std::get_if<InnerProductPolyKernel>(&kernel.family())) {
        params["coeffs"] = k->coeffs;
    } else if (const auto* k = std::get_if<GramTableKernel>(&kernel.family())) {
        params["size"] = k->table.rows();
        params["matrix"] = k->table.data();
        params["space_hash"] = k->space_hash;
    }
    j["params"] = std::move(params);
    j["shift"] = kernel.shift();
    return j.dump(indent);
}

KernelSpec kernel_from_json(const std::string& text) {
    const ordered_json j = ordered_json::parse(text);
    const std::string family = j.at("family").get<std::string>();
    const double shift = j.value("shift", 0.0);
    const ordered_json params = j.value("params", ordered_json::object());

    auto finish = [&](KernelSpec k) { return k.with_shift(shift); };
    if (family == "constant") return finish(KernelSpec::constant(params.at("value").get<double>()));
    if (family == "distance") return finish(KernelSpec::euclidean_distance());
    if (family == "neg-distance") return finish(KernelSpec::neg_euclidean_distance());
    if (family == "riesz") return finish(KernelSpec::riesz(params.at("exponent").get<double>()));
    if (family == "poly")
        return finish(KernelSpec::inner_product_poly(params.at("coeffs").get<std::vector<double>>()));
    if (family == "coordinate-sum") return finish(KernelSpec::coordinate_sum());
    if (family == "gram-table") {
        const auto size = params.at("size").get<std::size_t>();
        const auto values = params.at("matrix").get<std::vector<double>>();
        if (values.size() != size * size)
            throw std::invalid_argument("kernel_from_json: gram table size mismatch");
        Matrix m(size, size);
        m.data() = values;
        return finish(KernelSpec::gram_table(std::move(m), params.at("space_hash").get<std::uint64_t>()));
    }
    throw std::invalid_argument("kernel_from_json: unknown family '" + family + "'");
}

std::string decomposition_to_json(const MercerDecomposition& decomp, int indent) {
    ordered_json j;
    j["eigenvalues"] = decomp.eigenvalues;
    j["phi"] = decomp.eigenfunctions.data(); // row-major, row j = phi_j at support nodes
    j["weights"] = decomp.support_weights;
    j["support"] = decomp.support;
    j["rank"] = decomp.rank;
    j["residual"] = decomp.eigen_residual;
    return j.dump(indent);
}

std::string series_to_json(const GegenbauerSeries& series, int indent) {
    ordered_json j;
    j["lambda"] = series.lambda;
    j["coeffs"] = series.coeffs;
    j["truncation_error"] = series.truncation_error;
    return j.dump(indent);
}

GegenbauerSeries series_from_json(const std::string& text) {
    const ordered_json j = ordered_json::parse(text);
    GegenbauerSeries s;
    s.lambda = j.at("lambda").get<double>();
    s.coeffs = j.at("coeffs").get<std::vector<double>>();
    s.truncation_error = j.value("truncation_error", 0.0);
    return s;
}

} // namespace potkit
