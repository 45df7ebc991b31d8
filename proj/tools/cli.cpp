#include "cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "potkit/definiteness.hpp"
#include "potkit/domains.hpp"
#include "potkit/errors.hpp"
#include "potkit/json_io.hpp"
#include "potkit/kernels.hpp"
#include "potkit/optimize.hpp"
#include "potkit/spectral.hpp"
#include "potkit/sphere.hpp"
#include "potkit/stolarsky.hpp"

namespace potkit::cli {

using ordered_json = nlohmann::ordered_json;

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

std::vector<double> parse_doubles(const std::string& text) {
    std::vector<double> out;
    for (const std::string& item : split(text, ',')) {
        if (item.empty()) throw std::invalid_argument("empty number in list: '" + text + "'");
        out.push_back(std::stod(item));
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// --space grammar: sphere:D:fib:N | sphere:D:random:N | interval:N |
// hamming:B | octahedron | tetrahedron | icosahedron | cube | file:PATH
SpacePtr parse_space(const std::string& text, std::uint64_t seed) {
    if (text == "octahedron") return make_octahedron();
    if (text == "tetrahedron") return make_tetrahedron();
    if (text == "icosahedron") return make_icosahedron();
    if (text == "cube") return make_cube_vertices();

    const auto parts = split(text, ':');
    const std::string& tag = parts[0];
    auto need = [&](std::size_t n) {
        if (parts.size() != n)
            throw std::invalid_argument("space '" + text + "': wrong number of parameters");
    };
    if (tag == "file") {
        need(2);
        return space_from_json(read_file(parts[1]));
    }
    if (tag == "sphere") {
        need(4);
        const int dim = std::stoi(parts[1]);
        const auto count = static_cast<std::size_t>(std::stoul(parts[3]));
        if (parts[2] == "fib")
            return std::make_shared<DiscreteSpace>(DiscreteSpace::sphere_fibonacci(dim, count));
        if (parts[2] == "random")
            return std::make_shared<DiscreteSpace>(DiscreteSpace::sphere_random(dim, count, seed));
        throw std::invalid_argument("space '" + text + "': unknown generator '" + parts[2] + "'");
    }
    if (tag == "interval") {
        need(2);
        return std::make_shared<DiscreteSpace>(
            DiscreteSpace::interval_uniform(std::stoul(parts[1])));
    }
    if (tag == "hamming") {
        need(2);
        return std::make_shared<DiscreteSpace>(DiscreteSpace::hamming(std::stoi(parts[1])));
    }
    throw std::invalid_argument("space '" + text + "': unknown tag '" + tag + "'");
}

// --kernel grammar: constant:C | distance | neg-distance | riesz:S |
// poly:c0,c1,... | coordinate-sum | file:PATH
KernelSpec parse_kernel(const std::string& text, double shift) {
    const auto parts = split(text, ':');
    const std::string& family = parts[0];
    auto kernel = [&]() -> KernelSpec {
        if (family == "file" && parts.size() == 2) return kernel_from_json(read_file(parts[1]));
        if (family == "constant" && parts.size() == 2)
            return KernelSpec::constant(std::stod(parts[1]));
        if (family == "distance") return KernelSpec::euclidean_distance();
        if (family == "neg-distance") return KernelSpec::neg_euclidean_distance();
        if (family == "riesz" && parts.size() == 2) return KernelSpec::riesz(std::stod(parts[1]));
        if (family == "poly" && parts.size() == 2)
            return KernelSpec::inner_product_poly(parse_doubles(parts[1]));
        if (family == "coordinate-sum") return KernelSpec::coordinate_sum();
        throw std::invalid_argument("kernel '" + text + "' is not recognized");
    }();
    return shift != 0.0 ? kernel.with_shift(kernel.shift() + shift) : kernel;
}

WeightedMeasure parse_measure(const SpacePtr& space, const std::string& weights_csv) {
    if (weights_csv.empty()) return WeightedMeasure::uniform(space);
    return {space, parse_doubles(weights_csv)};
}

struct Sink {
    std::ostream& fallback;
    std::string path;

    void write(const std::string& text) const {
        if (path.empty()) {
            fallback << text << '\n';
            return;
        }
        std::ofstream out(path);
        if (!out) throw std::invalid_argument("cannot write output file: " + path);
        out << text << '\n';
    }
};

ordered_json envelope(const std::string& command, ordered_json config, ordered_json report) {
    ordered_json j;
    j["command"] = command;
    j["config"] = std::move(config);
    j["report"] = std::move(report);
    return j;
}

ordered_json measure_summary(const WeightedMeasure& m) {
    ordered_json j;
    j["mass"] = m.mass();
    j["is_probability"] = m.is_probability();
    j["support_size"] = m.support().size();
    return j;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"potkit: energies, definiteness, spectra and discrepancy on discrete compact spaces"};
    app.require_subcommand(1);

    std::string space_arg, kernel_arg, weights_arg, nu_arg, points_arg, function_arg;
    std::string out_path, format = "json", mode = "generalized", signs_arg, config_path;
    double shift = 0.0, tol_rel = 1e-9, lambda = 0.5, gtol = 1e-8;
    std::uint64_t seed = 0;
    std::size_t n_points = 0, max_iters = 2000, h_nodes = 48, x_nodes = 2048;
    int dim = 3, n_max = 64, m_quad = 0, harmonic_degree = 1, harmonic_order = 0;
    bool equilibrium = false;

    // --kernel/--space presence is validated after the --config merge, so
    // none of them are CLI11-required.
    auto add_common = [&](CLI::App* cmd, bool needs_kernel, bool needs_space) {
        if (needs_kernel) cmd->add_option("--kernel", kernel_arg, "kernel family:params");
        if (needs_space) cmd->add_option("--space", space_arg, "space tag:params");
        cmd->add_option("--shift", shift, "additive kernel constant");
        cmd->add_option("--seed", seed, "64-bit seed for all randomized pieces");
        cmd->add_option("--out", out_path, "write the report to this file instead of stdout");
        cmd->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--config", config_path, "JSON file with {space?, kernel?, weights?, nu?}");
    };

    CLI::App* classify_cmd = app.add_subcommand("classify", "definiteness classification");
    add_common(classify_cmd, true, true);
    classify_cmd->add_option("--tol", tol_rel, "relative eigenvalue tolerance");

    CLI::App* energy_cmd = app.add_subcommand("energy", "energy, potential and invariance");
    add_common(energy_cmd, true, true);
    energy_cmd->add_option("--weights", weights_arg, "measure weights (csv), default uniform");
    energy_cmd->add_option("--nu", nu_arg, "second measure weights for the mixed energy");

    CLI::App* mercer_cmd = app.add_subcommand("mercer", "Mercer decomposition");
    add_common(mercer_cmd, true, true);
    mercer_cmd->add_option("--weights", weights_arg, "probability weights, default uniform");

    CLI::App* sqrt_cmd = app.add_subcommand("sqrt", "convolution square root table");
    add_common(sqrt_cmd, true, true);
    sqrt_cmd->add_option("--weights", weights_arg, "probability weights, default uniform");
    sqrt_cmd->add_option("--signs", signs_arg, "sign choice, e.g. +-+ (default all +)");

    CLI::App* stol_cmd = app.add_subcommand("stolarsky", "generalized / classical invariance");
    stol_cmd->add_option("--mode", mode, "generalized or classical")
        ->check(CLI::IsMember({"generalized", "classical"}));
    stol_cmd->add_option("--kernel", kernel_arg, "kernel (generalized mode)");
    stol_cmd->add_option("--space", space_arg, "space (generalized mode)");
    stol_cmd->add_option("--weights", weights_arg, "mu weights, default uniform");
    stol_cmd->add_option("--nu", nu_arg, "nu weights (generalized mode)");
    stol_cmd->add_flag("--equilibrium", equilibrium, "solve for the invariant mu first");
    stol_cmd->add_option("--points", points_arg,
                         "point sets for classical mode, ';'-separated space specs");
    stol_cmd->add_option("--h-nodes", h_nodes, "polar-angle quadrature nodes for cap_measure");
    stol_cmd->add_option("--x-nodes", x_nodes, "sphere quadrature nodes");
    stol_cmd->add_option("--shift", shift, "additive kernel constant");
    stol_cmd->add_option("--seed", seed, "seed");
    stol_cmd->add_option("--out", out_path, "output file");
    stol_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    stol_cmd->add_option("--config", config_path, "JSON config file");

    CLI::App* cap_cmd = app.add_subcommand("cap-disc", "spherical cap L2 discrepancy");
    cap_cmd->add_option("--points", points_arg, "point set (space spec)")->required();
    cap_cmd->add_option("--h-nodes", h_nodes, "polar-angle quadrature nodes for cap_measure");
    cap_cmd->add_option("--x-nodes", x_nodes, "sphere quadrature nodes");
    cap_cmd->add_option("--seed", seed, "seed");
    cap_cmd->add_option("--out", out_path, "output file");
    cap_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

    CLI::App* gegen_cmd = app.add_subcommand("gegenbauer", "zonal expansion and Schoenberg test");
    gegen_cmd->add_option("--function", function_arg, "rotation-invariant kernel spec")->required();
    gegen_cmd->add_option("--lambda", lambda, "Gegenbauer parameter (d-2)/2");
    gegen_cmd->add_option("--nmax", n_max, "expansion depth");
    gegen_cmd->add_option("--mquad", m_quad, "quadrature nodes (default 2*(nmax+1))");
    gegen_cmd->add_option("--shift", shift, "additive constant");
    gegen_cmd->add_option("--tol", tol_rel, "Schoenberg sign tolerance");
    gegen_cmd->add_option("--out", out_path, "output file");
    gegen_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

    CLI::App* opt_cmd = app.add_subcommand("optimize", "energy descent on the sphere");
    opt_cmd->add_option("--kernel", kernel_arg, "differentiable kernel")->required();
    opt_cmd->add_option("--n", n_points, "number of points")->required();
    opt_cmd->add_option("--dim", dim, "ambient dimension");
    opt_cmd->add_option("--iters", max_iters, "iteration cap");
    opt_cmd->add_option("--gtol", gtol, "gradient tolerance per point");
    opt_cmd->add_option("--shift", shift, "additive kernel constant");
    opt_cmd->add_option("--seed", seed, "seed");
    opt_cmd->add_option("--out", out_path, "output file");
    opt_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

    CLI::App* harness_cmd = app.add_subcommand("harness", "equivalence harness");
    add_common(harness_cmd, true, true);
    harness_cmd->add_option("--mode", mode, "cpd, pd or cspd")
        ->check(CLI::IsMember({"cpd", "pd", "cspd", "generalized"}));
    harness_cmd->add_option("--weights", weights_arg, "invariant measure weights, default uniform");
    harness_cmd->add_flag("--equilibrium", equilibrium, "solve for the invariant mu first");
    harness_cmd->add_option("--tol", tol_rel, "relative tolerance");

    std::vector<std::string> argv_copy = args;
    std::vector<char*> argv;
    argv.reserve(argv_copy.size() + 1);
    static char name[] = "potkit";
    argv.push_back(name);
    for (std::string& a : argv_copy) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "argument error: " << e.what() << '\n';
        return 2;
    }

    const Sink sink{out, out_path};

    try {
        // The --config escape hatch: file values fill any flag left empty.
        if (!config_path.empty()) {
            const ordered_json cfg = ordered_json::parse(read_file(config_path));
            if (space_arg.empty() && cfg.contains("space")) space_arg = cfg["space"].get<std::string>();
            if (kernel_arg.empty() && cfg.contains("kernel"))
                kernel_arg = cfg["kernel"].get<std::string>();
            if (weights_arg.empty() && cfg.contains("weights")) {
                const auto w = cfg["weights"].get<std::vector<double>>();
                std::ostringstream csv;
                for (std::size_t i = 0; i < w.size(); ++i) csv << (i ? "," : "") << w[i];
                weights_arg = csv.str();
            }
            if (nu_arg.empty() && cfg.contains("nu")) {
                const auto w = cfg["nu"].get<std::vector<double>>();
                std::ostringstream csv;
                for (std::size_t i = 0; i < w.size(); ++i) csv << (i ? "," : "") << w[i];
                nu_arg = csv.str();
            }
        }

        auto require_arg = [](const std::string& value, const char* flag) {
            if (value.empty())
                throw std::invalid_argument(std::string(flag) + " is required (flag or --config)");
        };
        const bool needs_kernel_space =
            app.got_subcommand(classify_cmd) || app.got_subcommand(energy_cmd) ||
            app.got_subcommand(mercer_cmd) || app.got_subcommand(sqrt_cmd) ||
            app.got_subcommand(harness_cmd);
        if (needs_kernel_space) {
            require_arg(kernel_arg, "--kernel");
            require_arg(space_arg, "--space");
        }

        ordered_json config;
        config["seed"] = seed;
        config["format"] = format;

        if (app.got_subcommand(classify_cmd)) {
            const SpacePtr space = parse_space(space_arg, seed);
            const KernelSpec kernel = parse_kernel(kernel_arg, shift);
            config["space"] = space_arg;
            config["kernel"] = kernel_arg;
            config["shift"] = shift;
            config["tol"] = tol_rel;
            const DefinitenessReport r = classify(kernel, space, tol_rel);
            ordered_json report;
            report["pd"] = r.pd;
            report["cpd"] = r.cpd;
            report["strict_pd"] = r.strict_pd;
            report["strict_cpd"] = r.strict_cpd;
            report["pd_mod_constant"] = r.pd_mod_constant;
            report["min_eig_full"] = r.min_eig_full;
            report["min_eig_centered"] = r.min_eig_centered;
            report["tolerance"] = r.tolerance;
            if (r.shift_constant) report["shift_constant"] = *r.shift_constant;
            if (r.witness_violation) {
                report["witness_weights"] = std::vector<double>(
                    r.witness_violation->weights().begin(), r.witness_violation->weights().end());
            }
            sink.write(envelope("classify", config, report).dump(2));
            return 0;
        }

        if (app.got_subcommand(energy_cmd)) {
            const SpacePtr space = parse_space(space_arg, seed);
            const KernelSpec kernel = parse_kernel(kernel_arg, shift);
            const WeightedMeasure mu = parse_measure(space, weights_arg);
            std::optional<WeightedMeasure> nu;
            if (!nu_arg.empty()) nu = parse_measure(space, nu_arg);
            config["space"] = space_arg;
            config["kernel"] = kernel_arg;
            config["shift"] = shift;
            config["weights"] = weights_arg.empty() ? "uniform" : weights_arg;

            const EnergyReport r = energy_report(kernel, mu, nu);
            const InvarianceCheck inv = is_invariant(kernel, mu, 1e-9 * kernel.scale_on(*space));
            ordered_json report;
            report["energy"] = r.energy;
            if (r.mixed) report["mixed"] = *r.mixed;
            report["potential"] = r.potential;
            report["potential_min"] = r.potential_min;
            report["potential_max"] = r.potential_max;
            report["invariant"] = inv.invariant;
            report["invariance_spread"] = inv.spread;
            report["mu"] = measure_summary(mu);
            sink.write(envelope("energy", config, report).dump(2));
            return 0;
        }

        if (app.got_subcommand(mercer_cmd)) {
            const SpacePtr space = parse_space(space_arg, seed);
            const KernelSpec kernel = parse_kernel(kernel_arg, shift);
            const WeightedMeasure mu = parse_measure(space, weights_arg);
            config["space"] = space_arg;
            config["kernel"] = kernel_arg;
            config["shift"] = shift;
            const MercerDecomposition d = mercer_decompose(kernel, mu);
            sink.write(envelope("mercer", config, ordered_json::parse(decomposition_to_json(d)))
                           .dump(2));
            return 0;
        }

        if (app.got_subcommand(sqrt_cmd)) {
            const SpacePtr space = parse_space(space_arg, seed);
            const KernelSpec kernel = parse_kernel(kernel_arg, shift);
            const WeightedMeasure mu = parse_measure(space, weights_arg);
            config["space"] = space_arg;
            config["kernel"] = kernel_arg;
            config["shift"] = shift;
            config["signs"] = signs_arg.empty() ? "+" : signs_arg;

            const MercerDecomposition d = mercer_decompose(kernel, mu);
            std::vector<int> signs;
            if (!signs_arg.empty()) {
                for (char c : signs_arg) {
                    if (c == '+') signs.push_back(1);
                    else if (c == '-') signs.push_back(-1);
                    else throw std::invalid_argument("--signs must be a +- string");
                }
                signs.resize(d.eigenvalues.size(), 1);
            }
            const SqrtKernel k = convolution_sqrt(d, signs);
            const Matrix composed = sqrt_composition(k);
            const auto g_ptr = kernel.gram(*space);
            double resid = 0.0;
            for (std::size_t a = 0; a < k.support.size(); ++a)
                for (std::size_t c = 0; c < k.support.size(); ++c)
                    resid = std::max(resid, std::abs(composed(a, c) -
                                                     (*g_ptr)(k.support[a], k.support[c])));
            ordered_json report;
            report["support"] = k.support;
            report["sign_choice"] = k.sign_choice;
            report["table"] = k.table.data();
            report["composition_residual"] = resid;
            sink.write(envelope("sqrt", config, report).dump(2));
            return 0;
        }

        if (app.got_subcommand(stol_cmd)) {
            config["mode"] = mode;
            if (mode == "generalized") {
                if (kernel_arg.empty() || space_arg.empty())
                    throw std::invalid_argument("generalized mode needs --kernel and --space");
                const SpacePtr space = parse_space(space_arg, seed);
                const KernelSpec kernel = parse_kernel(kernel_arg, shift);
                WeightedMeasure mu = parse_measure(space, weights_arg);
                if (equilibrium) {
                    const auto solved = solve_invariant_measure(kernel, space);
                    if (!solved || !solved->is_probability(1e-9))
                        throw std::invalid_argument(
                            "no positive invariant measure found; pass --weights instead");
                    mu = *solved;
                }
                const WeightedMeasure nu =
                    nu_arg.empty() ? WeightedMeasure::delta(space, 0) : parse_measure(space, nu_arg);
                config["space"] = space_arg;
                config["kernel"] = kernel_arg;
                config["shift"] = shift;
                config["equilibrium"] = equilibrium;
                const DiscrepancyReport r = generalized_stolarsky(kernel, mu, nu);
                ordered_json report;
                report["d2"] = r.d2;
                report["energy_gap"] = r.energy_gap;
                report["residual"] = r.identity_residual;
                report["shift_used"] = r.shift_used;
                sink.write(envelope("stolarsky", config, report).dump(2));
                return 0;
            }
            // classical mode
            if (points_arg.empty())
                throw std::invalid_argument("classical mode needs --points");
            std::vector<DiscreteSpace> sets;
            for (const std::string& spec : split(points_arg, ';'))
                sets.push_back(*parse_space(spec, seed++));
            config["points"] = points_arg;
            CapDiscrepancyOptions opts;
            opts.cap_measure_nodes = h_nodes;
            opts.center_nodes = x_nodes;
            if (sets.size() == 1) sets.push_back(sets.front());
            const ClassicalRatioReport r = classical_ratio(sets, opts);
            ordered_json report;
            report["ratios"] = r.ratios;
            report["cap_d2"] = r.cap_d2;
            report["energy_gaps"] = r.energy_gaps;
            report["ratio_cd"] = r.mean_ratio;
            report["spread_rel"] = r.spread_rel;
            report["sigma_mean_distance"] = r.sigma_mean_distance;
            report["quadrature"] = {{"M_h", h_nodes}, {"N_x", x_nodes}};
            sink.write(envelope("stolarsky", config, report).dump(2));
            return 0;
        }

        if (app.got_subcommand(cap_cmd)) {
            const SpacePtr points = parse_space(points_arg, seed);
            config["points"] = points_arg;
            CapDiscrepancyOptions opts;
            opts.cap_measure_nodes = h_nodes;
            opts.center_nodes = x_nodes;
            const double d2 = cap_discrepancy(*points, opts);
            ordered_json report;
            report["cap_d2"] = d2;
            report["quadrature"] = {{"M_h", h_nodes}, {"N_x", x_nodes}};
            sink.write(envelope("cap-disc", config, report).dump(2));
            return 0;
        }

        if (app.got_subcommand(gegen_cmd)) {
            const KernelSpec kernel = parse_kernel(function_arg, shift);
            config["function"] = function_arg;
            config["lambda"] = lambda;
            config["nmax"] = n_max;
            const GegenbauerSeries series =
                gegenbauer_coeffs(kernel.zonal_profile(), lambda, n_max, m_quad);
            ordered_json report = ordered_json::parse(series_to_json(series));
            try {
                const SchoenbergClass cls = schoenberg_classify(series, tol_rel);
                report["schoenberg"] = {{"pd", cls.pd}, {"cpd", cls.cpd}};
            } catch (const std::domain_error& e) {
                report["schoenberg"] = nullptr;
                report["inconclusive_reason"] = e.what();
            }
            sink.write(envelope("gegenbauer", config, report).dump(2));
            return 0;
        }

        if (app.got_subcommand(opt_cmd)) {
            const KernelSpec kernel = parse_kernel(kernel_arg, shift);
            config["kernel"] = kernel_arg;
            config["shift"] = shift;
            config["n"] = n_points;
            config["dim"] = dim;
            config["iters"] = max_iters;
            config["gtol"] = gtol;
            OptimizeOptions opts;
            opts.max_iters = max_iters;
            opts.gtol_per_point = gtol;
            const OptimizationTrace trace = minimize_config(kernel, n_points, dim, seed, opts);

            if (format == "csv") {
                std::ostringstream csv;
                csv << "iter,energy,grad_norm\n";
                for (std::size_t i = 0; i < trace.energies.size(); ++i) {
                    csv << i << ',' << trace.energies[i] << ','
                        << (i < trace.grad_norms.size() ? trace.grad_norms[i] : 0.0) << '\n';
                }
                err << envelope("optimize", config, {{"rows", trace.energies.size()}}).dump() << '\n';
                sink.write(csv.str());
                return 0;
            }
            ordered_json report;
            report["final_energy"] = trace.energies.back();
            report["iterations"] = trace.iterations;
            report["converged"] = trace.converged;
            report["grad_norm_final"] = trace.grad_norm_final;
            ordered_json pts = ordered_json::array();
            for (std::size_t i = 0; i < trace.final_points.rows(); ++i) {
                ordered_json row = ordered_json::array();
                for (double v : trace.final_points.row(i)) row.push_back(v);
                pts.push_back(std::move(row));
            }
            report["final_points"] = std::move(pts);
            sink.write(envelope("optimize", config, report).dump(2));
            return 0;
        }

        if (app.got_subcommand(harness_cmd)) {
            const SpacePtr space = parse_space(space_arg, seed);
            const KernelSpec kernel = parse_kernel(kernel_arg, shift);
            WeightedMeasure mu = parse_measure(space, weights_arg);
            if (equilibrium) {
                const auto solved = solve_invariant_measure(kernel, space);
                if (!solved || !solved->is_probability(1e-9))
                    throw std::invalid_argument(
                        "no positive invariant measure found; pass --weights instead");
                mu = *solved;
            }
            HarnessMode hmode = HarnessMode::Cpd;
            if (mode == "pd") hmode = HarnessMode::Pd;
            else if (mode == "cspd") hmode = HarnessMode::Cspd;
            config["space"] = space_arg;
            config["kernel"] = kernel_arg;
            config["shift"] = shift;
            config["mode"] = to_string(hmode);
            config["tol"] = tol_rel;
            const ConsistencyReport r = equivalence_harness(kernel, space, mu, hmode, tol_rel);
            ordered_json conditions = ordered_json::object();
            for (const auto& [name_, value] : r.conditions) conditions[name_] = value;
            ordered_json report;
            report["mode"] = to_string(r.mode);
            report["conditions"] = std::move(conditions);
            report["all_agree"] = r.all_agree;
            report["expected"] = r.expected;
            report["tolerance"] = r.tolerance;
            sink.write(envelope("harness", config, report).dump(2));
            return 0;
        }

        err << "no subcommand selected\n";
        return 2;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        err << "validation error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        err << "validation error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << '\n';
        return 3;
    }
}

} // namespace potkit::cli
