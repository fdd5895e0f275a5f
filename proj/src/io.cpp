#include "ampcap/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace ampcap::io {
namespace {

json round12_array(const std::vector<double>& v) {
    json arr = json::array();
    for (double x : v) arr.push_back(round12(x));
    return arr;
}

std::vector<double> require_number_array(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_array())
        throw std::invalid_argument(std::string("input JSON: missing array \"") +
                                    key + "\"");
    std::vector<double> out;
    for (const auto& e : j.at(key)) {
        if (!e.is_number())
            throw std::invalid_argument(std::string("input JSON: \"") + key +
                                        "\" must hold numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

}  // namespace

double round12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

json input_to_json(const DiscreteInput& input) {
    return json{{"kind", "scalar"},
                {"n", 1},
                {"points", round12_array(input.points())},
                {"probs", round12_array(input.probs())}};
}

json input_to_json(const ShellInput& input, int n) {
    return json{{"kind", "shell"},
                {"n", n},
                {"points", round12_array(input.radii())},
                {"probs", round12_array(input.probs())}};
}

AnyInput input_from_json(const json& j, bool allow_asymmetric) {
    if (!j.is_object() || !j.contains("kind"))
        throw std::invalid_argument("input JSON: missing \"kind\"");
    const std::string kind = j.at("kind").get<std::string>();
    std::vector<double> points = require_number_array(j, "points");
    std::vector<double> probs = require_number_array(j, "probs");
    if (kind == "scalar") {
        DiscreteInput input(std::move(points), std::move(probs));
        if (!allow_asymmetric && !input.is_symmetric())
            throw std::invalid_argument(
                "input JSON: asymmetric scalar input rejected "
                "(set allow_asymmetric to override)");
        return input;
    }
    if (kind == "shell") {
        const int n = j.value("n", 0);
        if (n < 2)
            throw std::invalid_argument(
                "input JSON: shell inputs need an integer \"n\" >= 2");
        return ShellInput(std::move(points), std::move(probs));
    }
    throw std::invalid_argument("input JSON: unknown kind \"" + kind + "\"");
}

json bound_report_to_json(const bounds::BoundReport& report) {
    json constants = json::object();
    for (const auto& [name, value] : report.constants)
        constants[name] = round12(value);
    json config{{"n", report.config.n},
                {"A", round12(report.config.amplitude)}};
    if (report.config.power) config["P"] = round12(*report.config.power);
    return json{{"config", config},
                {"lower", round12(report.lower)},
                {"upper", round12(report.upper)},
                {"kappa", round12(report.kappa)},
                {"B", round12(report.zero_radius)},
                {"s_star", round12(report.s_star)},
                {"constants", constants}};
}

json solve_result_to_json(const solver::SolveResult& result, int n) {
    json witness = std::holds_alternative<DiscreteInput>(result.input)
                       ? input_to_json(result.scalar_input())
                       : input_to_json(result.shell_input(), n);
    return json{{"input", witness},
                {"capacity", round12(result.capacity)},
                {"kkt_equality_residual", round12(result.kkt_equality_residual)},
                {"kkt_inequality_residual",
                 round12(result.kkt_inequality_residual)},
                {"lambda", round12(result.lambda)},
                {"iterations", result.iterations},
                {"support_size", result.support_size},
                {"tol", round12(result.tol)},
                {"seed", result.seed}};
}

LoadedWitness witness_from_json(const json& j, bool allow_asymmetric) {
    if (!j.is_object())
        throw std::invalid_argument("witness JSON: expected an object");
    if (j.contains("input")) {
        LoadedWitness out{input_from_json(j.at("input"), allow_asymmetric),
                          j.value("lambda", 0.0), std::nullopt};
        if (j.contains("capacity"))
            out.capacity = j.at("capacity").get<double>();
        return out;
    }
    return LoadedWitness{input_from_json(j, allow_asymmetric), 0.0,
                         std::nullopt};
}

}  // namespace ampcap::io
