// SPDX-License-Identifier: Apache-2.0
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "setopt/direction.hpp"
#include "setopt/harness.hpp"
#include "setopt/instance.hpp"
#include "setopt/partition.hpp"
#include "setopt/solver.hpp"

namespace py = pybind11;
using namespace setopt;

PYBIND11_MODULE(_setopt, m) {
    m.doc() = "Descent solver for set optimization with smooth selections";

    py::register_exception<CapExceeded>(m, "CapExceededError");
    py::register_exception<SubproblemError>(m, "SubproblemError");
    py::register_exception<LineSearchError>(m, "LineSearchError");
    py::register_exception<NotStationary>(m, "NotStationaryError");
    py::register_exception<InvalidCone>(m, "InvalidConeError");

    py::class_<Cone>(m, "Cone")
        .def_static("orthant", &Cone::orthant, py::arg("m"))
        .def_static("validated", &Cone::validated, py::arg("dual_rows"), py::arg("e"))
        .def_property_readonly("dim", &Cone::dim)
        .def_property_readonly("dual_rows", &Cone::dual_rows)
        .def_property_readonly("e", &Cone::interior_direction)
        .def("scalarize", &Cone::scalarize, py::arg("y"))
        .def("contains", &Cone::contains, py::arg("y"))
        .def("strictly_contains", &Cone::strictly_contains, py::arg("y"))
        .def("leq", &Cone::leq, py::arg("y"), py::arg("z"))
        .def("lt", &Cone::lt, py::arg("y"), py::arg("z"))
        .def("lipschitz", &Cone::lipschitz);

    py::class_<FiniteVectorSet>(m, "FiniteVectorSet")
        .def(py::init<std::vector<Eigen::VectorXd>>(), py::arg("points"))
        .def_property_readonly("points",
                               [](const FiniteVectorSet& s) { return s.points; })
        .def("__len__", [](const FiniteVectorSet& s) { return s.points.size(); });

    m.def("minimal_naive", &minimal_naive, py::arg("set"), py::arg("cone"));
    m.def("weakly_minimal_naive", &weakly_minimal_naive, py::arg("set"), py::arg("cone"));
    m.def(
        "minimal_presort",
        [](const FiniteVectorSet& s, const Cone& c) { return minimal_presort(s, c); },
        py::arg("set"), py::arg("cone"));
    m.def("lower_less", &lower_less, py::arg("a"), py::arg("b"), py::arg("cone"));
    m.def("strict_lower_less", &strict_lower_less, py::arg("a"), py::arg("b"),
          py::arg("cone"));
    m.def("domination_check", &domination_check, py::arg("set"), py::arg("cone"));

    py::class_<Instance>(m, "Instance")
        .def_property_readonly("name", &Instance::name)
        .def_property_readonly("n", &Instance::arg_dim)
        .def_property_readonly("m", &Instance::image_dim)
        .def_property_readonly("p", &Instance::selection_count)
        .def_property_readonly("sampling_box", &Instance::sampling_box)
        .def("selection", &Instance::selection, py::arg("i"), py::arg("x"))
        .def("jacobian", &Instance::jacobian, py::arg("i"), py::arg("x"))
        .def("evaluate", &Instance::evaluate, py::arg("x"));

    m.def("builtin_instance", &builtin_instance, py::arg("name"));
    m.def("load_instance_file", &load_instance_file, py::arg("path"));
    m.def("fd_check", &fd_check, py::arg("instance"), py::arg("x"), py::arg("h") = 1e-5);

    py::class_<MinDecomposition>(m, "MinDecomposition")
        .def_property_readonly("minimal_values",
                               [](const MinDecomposition& d) { return d.minimal_values; })
        .def_property_readonly("groups", [](const MinDecomposition& d) { return d.groups; })
        .def_property_readonly("active", [](const MinDecomposition& d) { return d.active; })
        .def_property_readonly("weak_active",
                               [](const MinDecomposition& d) { return d.weak_active; })
        .def_property_readonly("omega", &MinDecomposition::omega)
        .def_property_readonly("partition_size", &MinDecomposition::partition_size);

    m.def("decompose", &decompose, py::arg("instance"), py::arg("cone"), py::arg("x"));
    m.def("decompose_set", &decompose_set, py::arg("set"), py::arg("cone"));
    m.def("partition_tuples", &partition_tuples, py::arg("decomposition"),
          py::arg("cap") = kDefaultPartitionCap);
    m.def("is_min_equal_wmin", &is_min_equal_wmin, py::arg("decomposition"));

    py::class_<RegularityReport>(m, "RegularityReport")
        .def_readonly("omega_center", &RegularityReport::omega_center)
        .def_readonly("omega_min", &RegularityReport::omega_min)
        .def_readonly("omega_max", &RegularityReport::omega_max)
        .def_readonly("min_eq_wmin_at_center", &RegularityReport::min_eq_wmin_at_center)
        .def_readonly("omega_constant", &RegularityReport::omega_constant)
        .def("__repr__", [](const RegularityReport& r) {
            return std::string(r.omega_constant ? "consistent with regular"
                                                : "witnessed non-constant omega") +
                   " (omega " + std::to_string(r.omega_min) + ".." +
                   std::to_string(r.omega_max) + ")";
        });

    m.def("regularity_probe", &regularity_probe, py::arg("instance"), py::arg("cone"),
          py::arg("x"), py::arg("radius"), py::arg("samples"), py::arg("seed") = 0);

    py::class_<MinNormResult>(m, "MinNormResult")
        .def_readonly("point", &MinNormResult::point)
        .def_readonly("weights", &MinNormResult::lambda)
        .def_readonly("criterion_residual", &MinNormResult::criterion_residual);

    m.def("min_norm_point", &min_norm_point, py::arg("points"));

    py::class_<DirectionResult>(m, "DirectionResult")
        .def_readonly("tuple", &DirectionResult::tuple)
        .def_readonly("u", &DirectionResult::u)
        .def_readonly("phi", &DirectionResult::phi)
        .def_readonly("weights", &DirectionResult::lambda)
        .def_readonly("per_tuple_values", &DirectionResult::per_tuple_values);

    m.def(
        "best_direction",
        [](const Instance& inst, const Cone& cone, const Eigen::VectorXd& x, std::size_t cap) {
            return best_direction(inst, cone, x, cap);
        },
        py::arg("instance"), py::arg("cone"), py::arg("x"),
        py::arg("cap") = kDefaultPartitionCap);
    m.def("stationarity_certificate", &stationarity_certificate, py::arg("result"),
          py::arg("cone"));

    py::class_<SolveParams>(m, "SolveParams")
        .def(py::init<>())
        .def_readwrite("beta", &SolveParams::beta)
        .def_readwrite("nu", &SolveParams::nu)
        .def_readwrite("tol_stat", &SolveParams::tol_stat)
        .def_readwrite("max_iters", &SolveParams::max_iters)
        .def_readwrite("max_halvings", &SolveParams::max_halvings)
        .def_readwrite("partition_cap", &SolveParams::partition_cap)
        .def_readwrite("record_sets", &SolveParams::record_sets);

    py::enum_<TerminationStatus>(m, "TerminationStatus")
        .value("StrongStationaryDeclared", TerminationStatus::StrongStationaryDeclared)
        .value("MaxIterations", TerminationStatus::MaxIterations)
        .value("LineSearchFailed", TerminationStatus::LineSearchFailed)
        .value("PartitionCapExceeded", TerminationStatus::PartitionCapExceeded)
        .value("SubproblemFailure", TerminationStatus::SubproblemFailure);

    py::class_<IterationRecord>(m, "IterationRecord")
        .def_readonly("iteration", &IterationRecord::iteration)
        .def_readonly("x", &IterationRecord::x)
        .def_readonly("image", &IterationRecord::image)
        .def_readonly("omega", &IterationRecord::omega)
        .def_readonly("tuple", &IterationRecord::tuple)
        .def_readonly("u", &IterationRecord::u)
        .def_readonly("phi", &IterationRecord::phi)
        .def_readonly("step", &IterationRecord::step)
        .def_readonly("wall_nanos", &IterationRecord::wall_nanos);

    py::class_<RunTrace>(m, "RunTrace")
        .def_readonly("iterations", &RunTrace::iterations)
        .def_readonly("status", &RunTrace::status)
        .def_readonly("certificate", &RunTrace::certificate)
        .def_readonly("final_error", &RunTrace::final_error)
        .def_readonly("final_partition_size", &RunTrace::final_partition_size)
        .def_readonly("final_x", &RunTrace::final_x)
        .def_property_readonly("iteration_count", &RunTrace::iteration_count)
        .def_property_readonly("solved", &RunTrace::solved);

    m.def("solve", &solve, py::arg("instance"), py::arg("cone"), py::arg("x0"),
          py::arg("params") = SolveParams{});
    m.def("armijo", &armijo, py::arg("instance"), py::arg("cone"), py::arg("x"),
          py::arg("tuple"), py::arg("u"), py::arg("params") = SolveParams{});
    m.def("descent_inequality_check", &descent_inequality_check, py::arg("trace"),
          py::arg("cone"), py::arg("beta") = 1e-4);
    m.def("write_trace_jsonl", &write_trace_jsonl, py::arg("trace"), py::arg("path"));

    py::class_<RunSummary>(m, "RunSummary")
        .def_readonly("run_index", &RunSummary::run_index)
        .def_readonly("x0", &RunSummary::x0)
        .def_readonly("status", &RunSummary::status)
        .def_readonly("iterations", &RunSummary::iterations)
        .def_readonly("final_error", &RunSummary::final_error)
        .def_readonly("x_final", &RunSummary::x_final)
        .def_readonly("wall_seconds", &RunSummary::wall_seconds)
        .def_property_readonly("solved", &RunSummary::solved);

    py::class_<BatchStats>(m, "BatchStats")
        .def_readonly("runs", &BatchStats::runs)
        .def_readonly("solved", &BatchStats::solved)
        .def_readonly("iter_min", &BatchStats::iter_min)
        .def_readonly("iter_mean", &BatchStats::iter_mean)
        .def_readonly("iter_max", &BatchStats::iter_max)
        .def_readonly("mean_wall_seconds", &BatchStats::mean_wall_seconds)
        .def_readonly("per_run", &BatchStats::per_run);

    py::class_<BatchResult>(m, "BatchResult")
        .def_readonly("stats", &BatchResult::stats)
        .def_readonly("traces", &BatchResult::traces);

    m.def("sample_x0", &sample_x0, py::arg("instance"), py::arg("seed"),
          py::arg("run_index"));
    m.def("run_batch", &run_batch, py::arg("instance"), py::arg("cone"), py::arg("runs"),
          py::arg("seed"), py::arg("params") = SolveParams{}, py::arg("threads") = 0,
          py::arg("keep_traces") = false,
          py::call_guard<py::gil_scoped_release>());
    m.def("export_stats_csv", &export_stats_csv, py::arg("stats"), py::arg("path"),
          py::arg("include_timing") = false);
    m.def("export_stats_json", &export_stats_json, py::arg("stats"), py::arg("path"),
          py::arg("include_timing") = false);
    m.def("export_trajectory_plot", &export_trajectory_plot, py::arg("trace"),
          py::arg("instance"), py::arg("path"));
    m.def("export_solutions_plot", &export_solutions_plot, py::arg("stats"),
          py::arg("instance"), py::arg("path"));
    m.def("hull_distance", &hull_distance, py::arg("points"), py::arg("x"));
}
