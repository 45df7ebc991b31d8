#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "../tools/cli.hpp"

using nlohmann::json;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = potkit::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

// Validates against the subset of JSON Schema the shipped files use:
// type, required, properties, items.
bool matches_schema(const json& value, const json& schema, std::string& why);

bool type_ok(const json& value, const json& type_spec) {
    auto one = [&](const std::string& t) {
        if (t == "object") return value.is_object();
        if (t == "array") return value.is_array();
        if (t == "string") return value.is_string();
        if (t == "boolean") return value.is_boolean();
        if (t == "integer") return value.is_number_integer() || value.is_number_unsigned();
        if (t == "number") return value.is_number();
        if (t == "null") return value.is_null();
        return false;
    };
    if (type_spec.is_string()) return one(type_spec.get<std::string>());
    for (const auto& t : type_spec)
        if (one(t.get<std::string>())) return true;
    return false;
}

bool matches_schema(const json& value, const json& schema, std::string& why) {
    if (schema.contains("type") && !type_ok(value, schema["type"])) {
        why = "type mismatch against " + schema["type"].dump() + " for " + value.dump().substr(0, 80);
        return false;
    }
    if (schema.contains("required")) {
        for (const auto& key : schema["required"]) {
            if (!value.contains(key.get<std::string>())) {
                why = "missing required key " + key.get<std::string>();
                return false;
            }
        }
    }
    if (schema.contains("properties") && value.is_object()) {
        for (const auto& [key, sub] : schema["properties"].items()) {
            if (value.contains(key) && !matches_schema(value[key], sub, why)) {
                why = "at ." + key + ": " + why;
                return false;
            }
        }
    }
    if (schema.contains("items") && value.is_array()) {
        for (const auto& item : value) {
            if (!matches_schema(item, schema["items"], why)) {
                why = "in array item: " + why;
                return false;
            }
        }
    }
    return true;
}

json load_schema(const std::string& command) {
    const std::filesystem::path here = std::filesystem::path(__FILE__).parent_path();
    std::ifstream in(here / ".." / "docs" / "schemas" / (command + ".schema.json"));
    REQUIRE(in.good());
    json schema;
    in >> schema;
    return schema;
}

void check_against_schema(const std::string& command, const std::string& output) {
    const json value = json::parse(output);
    std::string why;
    const bool ok = matches_schema(value, load_schema(command), why);
    INFO("schema check for ", command, ": ", why);
    CHECK(ok);
}

} // namespace

TEST_CASE("classify subcommand: report content and schema") {
    const auto result =
        run_cli({"classify", "--kernel", "neg-distance", "--space", "sphere:3:fib:32"});
    REQUIRE(result.code == 0);
    const json report = json::parse(result.out)["report"];
    CHECK(report["cpd"] == true);
    CHECK(report["pd"] == false);
    check_against_schema("classify", result.out);
}

TEST_CASE("harness subcommand on the octahedron") {
    const auto result =
        run_cli({"harness", "--kernel", "neg-distance", "--space", "octahedron"});
    REQUIRE(result.code == 0);
    const json report = json::parse(result.out)["report"];
    CHECK(report["all_agree"] == true);
    CHECK(report["expected"] == true);
    check_against_schema("harness", result.out);
}

TEST_CASE("stolarsky classical mode emits a ratio report") {
    const auto result = run_cli({"stolarsky", "--points", "icosahedron", "--mode", "classical",
                                 "--x-nodes", "256", "--h-nodes", "16"});
    REQUIRE(result.code == 0);
    const json report = json::parse(result.out)["report"];
    CHECK(report["ratio_cd"].get<double>() > 0.0);
    check_against_schema("stolarsky", result.out);
}

TEST_CASE("every remaining subcommand validates against its schema") {
    const std::vector<std::pair<std::string, std::vector<std::string>>> runs = {
        {"energy",
         {"energy", "--kernel", "distance", "--space", "interval:3", "--weights", "0.5,0,0.5"}},
        {"mercer", {"mercer", "--kernel", "poly:0,1", "--space", "octahedron"}},
        {"sqrt", {"sqrt", "--kernel", "poly:1,1", "--space", "octahedron"}},
        {"stolarsky",
         {"stolarsky", "--mode", "generalized", "--kernel", "neg-distance", "--space",
          "octahedron", "--nu", "1,0,0,0,0,0"}},
        {"cap-disc", {"cap-disc", "--points", "cube", "--x-nodes", "256", "--h-nodes", "16"}},
        {"gegenbauer", {"gegenbauer", "--function", "poly:0,1", "--nmax", "8"}},
        {"optimize", {"optimize", "--kernel", "neg-distance", "--n", "3", "--seed", "5"}},
    };
    for (const auto& [command, args] : runs) {
        const auto result = run_cli(args);
        INFO("command: ", command, " stderr: ", result.err);
        REQUIRE(result.code == 0);
        check_against_schema(command, result.out);
    }
}

TEST_CASE("byte-identical output across repeated runs") {
    const std::vector<std::string> args = {"optimize", "--kernel", "neg-distance",
                                           "--n",      "5",        "--seed",
                                           "42"};
    const auto first = run_cli(args);
    const auto second = run_cli(args);
    REQUIRE(first.code == 0);
    CHECK(first.out == second.out);

    const auto classify_a =
        run_cli({"classify", "--kernel", "poly:0.2,0.8", "--space", "sphere:3:random:12"});
    const auto classify_b =
        run_cli({"classify", "--kernel", "poly:0.2,0.8", "--space", "sphere:3:random:12"});
    CHECK(classify_a.out == classify_b.out);
}

TEST_CASE("exit codes: 2 for validation, 3 for numerical failure") {
    CHECK(run_cli({"classify", "--kernel", "bogus", "--space", "octahedron"}).code == 2);
    CHECK(run_cli({"classify", "--kernel", "neg-distance", "--space", "nowhere:9"}).code == 2);
    CHECK(run_cli({"classify", "--unknown-flag", "1"}).code == 2);
    CHECK(run_cli({}).code == 2);

    // convolution square root of an indefinite kernel is a numerical refusal
    const auto sqrt_fail = run_cli({"sqrt", "--kernel", "neg-distance", "--space", "octahedron"});
    CHECK(sqrt_fail.code == 3);
    CHECK(sqrt_fail.err.find("eigenvalue") != std::string::npos);

    // preconditions of the generalized identity are validation errors
    const auto precond = run_cli({"stolarsky", "--mode", "generalized", "--kernel",
                                  "coordinate-sum", "--space", "sphere:3:fib:16"});
    CHECK(precond.code == 2);
}

TEST_CASE("--out writes the report to a file") {
    const std::string path = "/tmp/potkit_cli_out_test.json";
    std::filesystem::remove(path);
    const auto result = run_cli({"energy", "--kernel", "constant:2", "--space", "interval:4",
                                 "--out", path});
    REQUIRE(result.code == 0);
    CHECK(result.out.empty());
    std::ifstream in(path);
    REQUIRE(in.good());
    json j;
    in >> j;
    CHECK(j["report"]["energy"] == doctest::Approx(2.0));
    std::filesystem::remove(path);
}

TEST_CASE("--config file supplies missing flags") {
    const std::string path = "/tmp/potkit_cli_config_test.json";
    {
        std::ofstream cfg(path);
        cfg << R"({"space": "interval:3", "weights": [0.5, 0.0, 0.5]})";
    }
    const auto result = run_cli({"energy", "--kernel", "distance", "--config", path});
    REQUIRE(result.code == 0);
    CHECK(json::parse(result.out)["report"]["energy"] == doctest::Approx(1.0));
    std::filesystem::remove(path);
}
