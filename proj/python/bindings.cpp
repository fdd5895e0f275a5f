#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "ampcap/bounds.hpp"
#include "ampcap/channel.hpp"
#include "ampcap/solver.hpp"
#include "ampcap/specfun.hpp"
#include "ampcap/zeros.hpp"

namespace py = pybind11;
using namespace ampcap;

PYBIND11_MODULE(_ampcap, m) {
    m.doc() =
        "Capacity-achieving discrete inputs and support-size bounds for "
        "amplitude-constrained Gaussian noise channels";

    // --- special functions ----------------------------------------------
    m.def("log_gamma", &specfun::log_gamma, py::arg("x"));
    m.def("bessel_i_scaled", &specfun::bessel_i_scaled, py::arg("order"),
          py::arg("x"), "exp(-x) I_order(x)");
    m.def("noncentral_chi2_pdf", &specfun::noncentral_chi2_pdf, py::arg("n"),
          py::arg("r"), py::arg("x"));
    m.def("nu_n", &specfun::nu_n, py::arg("n"));
    m.def("gamma_n", &specfun::gamma_n, py::arg("n"));

    // --- inputs -----------------------------------------------------------
    py::class_<DiscreteInput>(m, "DiscreteInput")
        .def(py::init<std::vector<double>, std::vector<double>>(),
             py::arg("points"), py::arg("probs"))
        .def_static("point_mass", &DiscreteInput::point_mass, py::arg("x"))
        .def_property_readonly("points", &DiscreteInput::points)
        .def_property_readonly("probs", &DiscreteInput::probs)
        .def("amplitude", &DiscreteInput::amplitude)
        .def("second_moment", &DiscreteInput::second_moment)
        .def("is_symmetric", &DiscreteInput::is_symmetric,
             py::arg("tol") = 1e-9)
        .def("__len__", &DiscreteInput::size);

    py::class_<ShellInput>(m, "ShellInput")
        .def(py::init<std::vector<double>, std::vector<double>>(),
             py::arg("radii"), py::arg("probs"))
        .def_property_readonly("radii", &ShellInput::radii)
        .def_property_readonly("probs", &ShellInput::probs)
        .def("amplitude", &ShellInput::amplitude)
        .def("__len__", &ShellInput::size);

    // --- channel densities --------------------------------------------------
    m.def("output_pdf", &output_pdf, py::arg("input"), py::arg("y"));
    m.def("output_pdf_deriv", &output_pdf_deriv, py::arg("input"),
          py::arg("y"));
    m.def("marginal_info_density", &marginal_info_density, py::arg("input"),
          py::arg("x"), py::arg("quad_tol") = 1e-10);
    m.def("mutual_information", &mutual_information, py::arg("input"),
          py::arg("quad_tol") = 1e-10);
    m.def("shell_output_pdf", &shell_output_pdf, py::arg("n"),
          py::arg("input"), py::arg("x"));
    m.def("shell_info_density", &shell_info_density, py::arg("n"),
          py::arg("input"), py::arg("r"), py::arg("quad_tol") = 1e-10);
    m.def("shell_mutual_information", &shell_mutual_information, py::arg("n"),
          py::arg("input"), py::arg("quad_tol") = 1e-10);
    m.def(
        "tilted_output",
        [](const DiscreteInput& input, double lam, double kappa, double y) {
            return tilted_output(input, TiltedParams{lam, kappa}, y);
        },
        py::arg("input"), py::arg("lam"), py::arg("kappa"), py::arg("y"));

    // --- bounds ----------------------------------------------------------
    m.def("scalar_upper_bound", &bounds::scalar_upper_bound, py::arg("A"));
    m.def("scalar_lower_bound", &bounds::scalar_lower_bound, py::arg("A"));
    m.def(
        "kappa1_interval",
        [](double A) {
            const auto iv = bounds::kappa1_interval(A);
            return std::pair(iv.lo, iv.hi);
        },
        py::arg("A"));
    m.def("kappa1_point", &bounds::kappa1_point, py::arg("A"),
          py::arg("capacity"));
    m.def("scalar_zero_radius", &bounds::scalar_zero_radius, py::arg("A"),
          py::arg("kappa"));
    m.def("tijdeman_osc_bound", &bounds::tijdeman_osc_bound, py::arg("A"),
          py::arg("R"), py::arg("s"));
    m.def(
        "tijdeman_osc_bound_min",
        [](double A, double R) {
            const auto tb = bounds::tijdeman_osc_bound_min(A, R);
            return std::pair(tb.value, tb.s);
        },
        py::arg("A"), py::arg("R"),
        "minimized bound and the achieving parameter s");
    m.def("vector_upper_bound", &bounds::vector_upper_bound, py::arg("n"),
          py::arg("A"));
    m.def("vector_zero_radius", &bounds::vector_zero_radius, py::arg("n"),
          py::arg("A"), py::arg("kappa_n"));
    m.def("power_upper_bound", &bounds::power_upper_bound, py::arg("A"),
          py::arg("P"));
    m.def("power_lower_bound", &bounds::power_lower_bound, py::arg("A"),
          py::arg("P"));
    m.def("lambda_bound", &bounds::lambda_bound, py::arg("A"), py::arg("P"));
    m.def("power_zero_radius", &bounds::power_zero_radius, py::arg("A"),
          py::arg("P"), py::arg("lam"), py::arg("kappa"));

    // --- zeros -------------------------------------------------------------
    py::class_<zeros::ZeroCount>(m, "ZeroCount")
        .def_readonly("count", &zeros::ZeroCount::count)
        .def_readonly("zeros", &zeros::ZeroCount::zeros)
        .def_readonly("grid_step", &zeros::ZeroCount::grid_step)
        .def_readonly("certified", &zeros::ZeroCount::certified);
    m.def(
        "count_extreme_points",
        [](const DiscreteInput& input) {
            return zeros::count_extreme_points(input);
        },
        py::arg("input"));
    m.def(
        "mixture_zero_oracle",
        [](const std::vector<double>& w, const std::vector<double>& mu,
           const std::vector<double>& var) {
            return zeros::mixture_zero_oracle(w, mu, var);
        },
        py::arg("weights"), py::arg("means"), py::arg("variances"));
    py::class_<zeros::SandwichResult>(m, "SandwichResult")
        .def_readonly("zero_count", &zeros::SandwichResult::zero_count)
        .def_readonly("lower_ok", &zeros::SandwichResult::lower_ok)
        .def_readonly("upper_ok", &zeros::SandwichResult::upper_ok);
    m.def("sandwich_check", &zeros::sandwich_check, py::arg("input"),
          py::arg("kappa"), py::arg("radius"));
    py::class_<zeros::WorstCaseResult>(m, "WorstCaseResult")
        .def_readonly("max_count", &zeros::WorstCaseResult::max_count)
        .def_readonly("witness", &zeros::WorstCaseResult::witness)
        .def_readonly("certified", &zeros::WorstCaseResult::certified);
    m.def("worst_case_zero_search", &zeros::worst_case_zero_search,
          py::arg("A"), py::arg("k_max"), py::arg("budget"),
          py::arg("seed") = 0);

    // --- solver --------------------------------------------------------------
    py::class_<solver::SolveResult>(m, "SolveResult")
        .def_readonly("capacity", &solver::SolveResult::capacity)
        .def_readonly("kkt_equality_residual",
                      &solver::SolveResult::kkt_equality_residual)
        .def_readonly("kkt_inequality_residual",
                      &solver::SolveResult::kkt_inequality_residual)
        .def_readonly("lambda_", &solver::SolveResult::lambda)
        .def_readonly("iterations", &solver::SolveResult::iterations)
        .def_readonly("support_size", &solver::SolveResult::support_size)
        .def_property_readonly("input", [](const solver::SolveResult& r) {
            return std::visit([](const auto& v) { return py::cast(v); },
                              r.input);
        });

    const auto make_options = [](double tol, std::uint64_t seed) {
        solver::SolveOptions opts;
        opts.tol = tol;
        opts.seed = seed;
        return opts;
    };
    m.def(
        "solve_scalar",
        [make_options](double A, double tol, std::uint64_t seed) {
            return solver::solve_scalar(A, make_options(tol, seed));
        },
        py::arg("A"), py::arg("tol") = 1e-6, py::arg("seed") = 0);
    m.def(
        "solve_scalar_power",
        [make_options](double A, double P, double tol, std::uint64_t seed) {
            return solver::solve_scalar_power(A, P, make_options(tol, seed));
        },
        py::arg("A"), py::arg("P"), py::arg("tol") = 1e-6, py::arg("seed") = 0);
    m.def(
        "solve_vector",
        [make_options](int n, double A, double tol, std::uint64_t seed) {
            return solver::solve_vector(n, A, make_options(tol, seed));
        },
        py::arg("n"), py::arg("A"), py::arg("tol") = 1e-6, py::arg("seed") = 0);
    m.def(
        "verify_kkt",
        [](const DiscreteInput& input, double A, std::optional<double> P,
           double capacity, double lam, double grid_step) {
            const ChannelConfig config{1, A, P};
            const auto res =
                solver::verify_kkt(input, config, capacity, lam, grid_step);
            return std::pair(res.equality, res.inequality);
        },
        py::arg("input"), py::arg("A"), py::arg("P"), py::arg("capacity"),
        py::arg("lam") = 0.0, py::arg("grid_step") = 1e-3);
    m.def(
        "verify_kkt_shell",
        [](const ShellInput& input, int n, double A, double capacity,
           double grid_step) {
            const ChannelConfig config{n, A, std::nullopt};
            const auto res =
                solver::verify_kkt(input, config, capacity, grid_step);
            return std::pair(res.equality, res.inequality);
        },
        py::arg("input"), py::arg("n"), py::arg("A"), py::arg("capacity"),
        py::arg("grid_step") = 1e-3);
}
