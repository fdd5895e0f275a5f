// Batch front end: evaluate bounds, solve instances, verify witnesses, run
// zero-counting experiments and parameter sweeps.  Everything numeric goes
// through the library; this file only parses flags and formats output.
//
// Exit codes: 0 success, 1 verification failure, 2 usage/parse error,
// 3 internal theory violation, 4 convergence failure.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ampcap/bounds.hpp"
#include "ampcap/channel.hpp"
#include "ampcap/errors.hpp"
#include "ampcap/io.hpp"
#include "ampcap/solver.hpp"
#include "ampcap/specfun.hpp"
#include "ampcap/zeros.hpp"

namespace {

using ampcap::io::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitTheory = 3;
constexpr int kExitConvergence = 4;

struct Options {
    int n = 1;
    std::string amplitude;  // single value or "min:max:steps"
    std::optional<double> power;
    double tol = 1e-6;
    std::uint64_t seed = 0;
    int budget = 2000;
    int k_max = 0;  // 0 = auto: max(4, ceil(2A))
    double grid = 0.0;  // 0 = auto: 1e-3 * A
    std::string out_path;
    std::string what;          // sweep mode
    std::string witness_path;  // verify input
    bool allow_asymmetric = false;
};

std::vector<double> parse_amplitudes(const std::string& spec) {
    const auto colon1 = spec.find(':');
    if (colon1 == std::string::npos) return {std::stod(spec)};
    const auto colon2 = spec.find(':', colon1 + 1);
    if (colon2 == std::string::npos)
        throw std::invalid_argument("amplitude range must be min:max:steps");
    const double lo = std::stod(spec.substr(0, colon1));
    const double hi = std::stod(spec.substr(colon1 + 1, colon2 - colon1 - 1));
    const int steps = std::stoi(spec.substr(colon2 + 1));
    if (steps < 1 || hi < lo)
        throw std::invalid_argument("amplitude range must be min:max:steps");
    std::vector<double> values;
    for (int j = 0; j < steps; ++j)
        values.push_back(steps == 1 ? lo
                                    : lo + (hi - lo) * j / (steps - 1.0));
    return values;
}

double single_amplitude(const Options& opt) {
    const auto values = parse_amplitudes(opt.amplitude);
    if (values.size() != 1)
        throw std::invalid_argument(
            "this command takes a single --A value, not a range");
    return values.front();
}

std::string format_g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f)
        throw std::invalid_argument("cannot open output file " + out_path);
    f << text;
    if (text.empty() || text.back() != '\n') f << '\n';
}

ampcap::ChannelConfig make_config(const Options& opt, double A) {
    ampcap::ChannelConfig config{opt.n, A, opt.power};
    config.validate();
    return config;
}

ampcap::solver::SolveResult dispatch_solve(const Options& opt, double A) {
    const ampcap::ChannelConfig config = make_config(opt, A);
    ampcap::solver::SolveOptions so;
    so.tol = opt.tol;
    so.seed = opt.seed;
    if (config.power) return ampcap::solver::solve_scalar_power(A, *config.power, so);
    if (config.n == 1) return ampcap::solver::solve_scalar(A, so);
    return ampcap::solver::solve_vector(config.n, A, so);
}

int auto_k_max(double A) {
    return std::max(4, static_cast<int>(std::ceil(2.0 * A)));
}

int cmd_bound(const Options& opt) {
    const double A = single_amplitude(opt);
    const auto report = ampcap::bounds::make_bound_report(make_config(opt, A));
    emit(ampcap::io::bound_report_to_json(report).dump(2), opt.out_path);
    return kExitOk;
}

int cmd_solve(const Options& opt) {
    const double A = single_amplitude(opt);
    const auto result = dispatch_solve(opt, A);
    emit(ampcap::io::solve_result_to_json(result, opt.n).dump(2), opt.out_path);
    return kExitOk;
}

int cmd_verify(const Options& opt) {
    const double A = single_amplitude(opt);
    std::ifstream f(opt.witness_path);
    if (!f)
        throw std::invalid_argument("cannot read witness file " +
                                    opt.witness_path);
    const json parsed = json::parse(f);
    const auto loaded =
        ampcap::io::witness_from_json(parsed, opt.allow_asymmetric);
    const ampcap::ChannelConfig config = make_config(opt, A);
    const double grid = opt.grid > 0.0 ? opt.grid : 1e-3 * A;

    double capacity = 0.0;
    ampcap::solver::KktResiduals kkt;
    if (std::holds_alternative<ampcap::DiscreteInput>(loaded.input)) {
        if (config.n != 1)
            throw std::invalid_argument("scalar witness but --n > 1");
        const auto& input = std::get<ampcap::DiscreteInput>(loaded.input);
        capacity = ampcap::mutual_information(input);
        kkt = ampcap::solver::verify_kkt(input, config, capacity,
                                         loaded.lambda, grid);
    } else {
        if (config.n < 2)
            throw std::invalid_argument("shell witness but --n 1");
        const auto& input = std::get<ampcap::ShellInput>(loaded.input);
        capacity = ampcap::shell_mutual_information(config.n, input);
        kkt = ampcap::solver::verify_kkt(input, config, capacity, grid);
    }
    const bool pass =
        kkt.equality <= opt.tol && kkt.inequality <= opt.tol;
    json report{{"capacity", ampcap::io::round12(capacity)},
                {"kkt_equality_residual", ampcap::io::round12(kkt.equality)},
                {"kkt_inequality_residual", ampcap::io::round12(kkt.inequality)},
                {"lambda", ampcap::io::round12(loaded.lambda)},
                {"tol", ampcap::io::round12(opt.tol)},
                {"pass", pass}};
    emit(report.dump(2), opt.out_path);
    return pass ? kExitOk : kExitVerifyFail;
}

// Dominance is proven, so a measured count above the oscillation bound is a
// bug in the counting machinery, never new mathematics.
void check_dominance(double A, int max_count, double bound) {
    if (max_count > bound)
        throw ampcap::theory_violation_error(
            "measured extreme-point count " + std::to_string(max_count) +
            " exceeds the oscillation bound " + std::to_string(bound) +
            " at A = " + std::to_string(A));
}

int cmd_zeros(const Options& opt) {
    const double A = single_amplitude(opt);
    const int k_max = opt.k_max > 0 ? opt.k_max : auto_k_max(A);
    const auto res =
        ampcap::zeros::worst_case_zero_search(A, k_max, opt.budget, opt.seed);
    const double bound =
        1.0 +
        ampcap::bounds::tijdeman_osc_bound_min(A, 2.0 * A + 1.0).value;
    check_dominance(A, res.max_count, bound);
    json report{{"A", ampcap::io::round12(A)},
                {"max_count", res.max_count},
                {"bound", ampcap::io::round12(bound)},
                {"k_max", k_max},
                {"budget", res.budget},
                {"seed", res.seed},
                {"certified", res.certified},
                {"witness", ampcap::io::input_to_json(res.witness)}};
    emit(report.dump(2), opt.out_path);
    return kExitOk;
}

int cmd_sweep(const Options& opt) {
    const auto values = parse_amplitudes(opt.amplitude);
    std::ostringstream csv;
    if (opt.what == "bounds") {
        csv << "A,lower,upper,kappa,B,s_star\n";
        for (double A : values) {
            const auto rep =
                ampcap::bounds::make_bound_report(make_config(opt, A));
            csv << format_g12(A) << ',' << format_g12(rep.lower) << ','
                << format_g12(rep.upper) << ',' << format_g12(rep.kappa) << ','
                << format_g12(rep.zero_radius) << ','
                << format_g12(rep.s_star) << '\n';
        }
    } else if (opt.what == "capacity") {
        csv << "A,capacity,support_size,kkt_equality,kkt_inequality\n";
        for (double A : values) {
            const auto res = dispatch_solve(opt, A);
            csv << format_g12(A) << ',' << format_g12(res.capacity) << ','
                << res.support_size << ','
                << format_g12(res.kkt_equality_residual) << ','
                << format_g12(res.kkt_inequality_residual) << '\n';
        }
    } else if (opt.what == "zeros") {
        csv << "A,max_count,bound,log_A_count,seed,budget,certified\n";
        for (double A : values) {
            const int k_max = opt.k_max > 0 ? opt.k_max : auto_k_max(A);
            const auto res = ampcap::zeros::worst_case_zero_search(
                A, k_max, opt.budget, opt.seed);
            const double bound =
                1.0 +
                ampcap::bounds::tijdeman_osc_bound_min(A, 2.0 * A + 1.0).value;
            check_dominance(A, res.max_count, bound);
            const double log_a_count =
                (A != 1.0 && res.max_count > 0)
                    ? std::log(static_cast<double>(res.max_count)) / std::log(A)
                    : std::numeric_limits<double>::quiet_NaN();
            csv << format_g12(A) << ',' << res.max_count << ','
                << format_g12(bound) << ',' << format_g12(log_a_count) << ','
                << res.seed << ',' << res.budget << ','
                << (res.certified ? 1 : 0) << '\n';
        }
    } else {
        throw std::invalid_argument(
            "--what must be one of: bounds, capacity, zeros");
    }
    emit(csv.str(), opt.out_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Capacity-achieving discrete inputs and support-size bounds for "
        "amplitude-constrained Gaussian noise channels"};
    app.require_subcommand(1);
    Options opt;

    const auto add_common = [&](CLI::App* cmd, bool needs_A = true) {
        cmd->add_option("--n", opt.n, "Channel dimension (default 1)");
        auto* a = cmd->add_option("--A", opt.amplitude, "Amplitude constraint");
        if (needs_A) a->required();
        cmd->add_option("--P", opt.power, "Average power constraint (n = 1)");
        cmd->add_option("--tol", opt.tol, "Tolerance (default 1e-6)");
        cmd->add_option("--seed", opt.seed, "Random seed (default 0)");
        cmd->add_option("--out", opt.out_path, "Write output to a file");
    };

    auto* bound =
        app.add_subcommand("bound", "Evaluate support-size bounds");
    add_common(bound);

    auto* solve =
        app.add_subcommand("solve", "Compute the capacity-achieving input");
    add_common(solve);

    auto* verify = app.add_subcommand(
        "verify", "Check a witness against the optimality conditions");
    add_common(verify);
    verify->add_option("--witness", opt.witness_path, "Witness JSON file")
        ->required();
    verify->add_option("--grid", opt.grid,
                       "Verification grid step (default 1e-3 A)");
    verify->add_flag("--allow-asymmetric", opt.allow_asymmetric,
                     "Accept asymmetric scalar witnesses");

    auto* zeros = app.add_subcommand(
        "zeros", "Worst-case extreme-point search at one amplitude");
    add_common(zeros);
    zeros->add_option("--budget", opt.budget,
                      "Count evaluations per instance (default 2000)");
    zeros->add_option("--k-max", opt.k_max,
                      "Max support size searched (default max(4, ceil(2A)))");

    auto* sweep = app.add_subcommand("sweep", "CSV sweep over A = min:max:steps");
    add_common(sweep);
    sweep->add_option("--what", opt.what, "bounds | capacity | zeros")
        ->required();
    sweep->add_option("--budget", opt.budget, "Zero-search budget per instance");
    sweep->add_option("--k-max", opt.k_max, "Zero-search max support size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (app.got_subcommand(bound)) return cmd_bound(opt);
        if (app.got_subcommand(solve)) return cmd_solve(opt);
        if (app.got_subcommand(verify)) return cmd_verify(opt);
        if (app.got_subcommand(zeros)) return cmd_zeros(opt);
        if (app.got_subcommand(sweep)) return cmd_sweep(opt);
        return kExitUsage;
    } catch (const ampcap::theory_violation_error& e) {
        std::cerr << "theory violation: " << e.what() << '\n';
        return kExitTheory;
    } catch (const ampcap::convergence_error& e) {
        std::cerr << "convergence failure: " << e.what() << '\n';
        return kExitConvergence;
    } catch (const ampcap::numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitConvergence;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConvergence;
    }
}
