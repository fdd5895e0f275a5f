#pragma once

#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "ampcap/bounds.hpp"
#include "ampcap/channel.hpp"
#include "ampcap/solver.hpp"

namespace ampcap::io {

using json = nlohmann::json;

// All emitted floating-point values are rounded to 12 significant digits, so
// re-running a deterministic command reproduces files byte for byte and
// witnesses still round-trip well inside every verification tolerance.
double round12(double v);

// { "kind": "scalar"|"shell", "n": int, "points": [...], "probs": [...] }
json input_to_json(const DiscreteInput& input);
json input_to_json(const ShellInput& input, int n);

using AnyInput = std::variant<DiscreteInput, ShellInput>;

// Validates invariants on load; asymmetric scalar inputs are rejected unless
// allow_asymmetric is set.
AnyInput input_from_json(const json& j, bool allow_asymmetric = false);

json bound_report_to_json(const bounds::BoundReport& report);

json solve_result_to_json(const solver::SolveResult& result, int n);

// A witness plus whatever solve metadata travelled with it; accepts either a
// bare input object or a full solve-result file.
struct LoadedWitness {
    AnyInput input;
    double lambda = 0.0;
    std::optional<double> capacity;
};

LoadedWitness witness_from_json(const json& j, bool allow_asymmetric = false);

}  // namespace ampcap::io
