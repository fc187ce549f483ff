// SPDX-License-Identifier: Apache-2.0
//
// setopt — descent solver for set optimization problems whose objective is a
// finite family of smooth selections. Subcommands: solve, batch, check,
// minelems. Exit codes: 0 success, 1 usage error, 2 numerical failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "setopt/harness.hpp"
#include "setopt/instance.hpp"
#include "setopt/solver.hpp"

namespace {

setopt::Instance resolve_instance(const std::string& spec) {
    if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json")
        return setopt::load_instance_file(spec);
    return setopt::builtin_instance(spec);
}

setopt::Cone resolve_cone(const setopt::Instance& inst) {
    if (inst.cone_override) return *inst.cone_override;
    return setopt::Cone::orthant(inst.image_dim());
}

setopt::Cone parse_cone_arg(const std::string& spec, Eigen::Index fallback_dim) {
    if (spec.rfind("orthant:", 0) == 0)
        return setopt::Cone::orthant(std::stol(spec.substr(8)));
    if (spec.empty()) return setopt::Cone::orthant(fallback_dim);
    std::ifstream in(spec);
    if (!in) throw setopt::IoError("cannot open cone file '" + spec + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    const auto j = nlohmann::json::parse(ss.str());
    Eigen::MatrixXd rows(j.at("dual_rows").size(), j.at("dual_rows").front().size());
    Eigen::Index r = 0;
    for (const auto& row : j.at("dual_rows")) {
        Eigen::Index c = 0;
        for (const auto& v : row) rows(r, c++) = v.get<double>();
        ++r;
    }
    Eigen::VectorXd e(static_cast<Eigen::Index>(j.at("e").size()));
    Eigen::Index i = 0;
    for (const auto& v : j.at("e")) e[i++] = v.get<double>();
    return setopt::Cone::validated(std::move(rows), std::move(e));
}

Eigen::VectorXd parse_csv_floats(const std::string& text) {
    std::vector<double> vals;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) vals.push_back(std::stod(tok));
    Eigen::VectorXd v(static_cast<Eigen::Index>(vals.size()));
    for (std::size_t i = 0; i < vals.size(); ++i) v[static_cast<Eigen::Index>(i)] = vals[i];
    return v;
}

std::vector<Eigen::VectorXd> read_points_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw setopt::IoError("cannot open points file '" + path + "'");
    std::vector<Eigen::VectorXd> pts;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        pts.push_back(parse_csv_floats(line));
    }
    return pts;
}

void print_vector(const Eigen::VectorXd& v) {
    std::printf("(");
    for (Eigen::Index i = 0; i < v.size(); ++i)
        std::printf("%s%.10g", i ? ", " : "", v[i]);
    std::printf(")");
}

int cmd_solve(const std::string& instance_spec, const std::string& x0_csv,
              const setopt::SolveParams& params, const std::string& trace_path) {
    const setopt::Instance inst = resolve_instance(instance_spec);
    const setopt::Cone cone = resolve_cone(inst);
    const Eigen::VectorXd x0 = parse_csv_floats(x0_csv);

    const setopt::RunTrace trace = setopt::solve(inst, cone, x0, params);
    if (!trace_path.empty()) setopt::write_trace_jsonl(trace, trace_path);

    std::printf("instance:    %s\n", inst.name().c_str());
    std::printf("status:      %s\n", setopt::to_string(trace.status).c_str());
    std::printf("iterations:  %d\n", trace.iteration_count());
    std::printf("final error: %.6e\n", trace.final_error);
    std::printf("x_final:     ");
    print_vector(trace.final_x);
    std::printf("\n");
    if (!trace.iterations.empty())
        std::printf("phi(x):      %.6e\n", trace.iterations.back().phi);
    std::printf("|P_x| at termination: %zu\n", trace.final_partition_size);
    if (!trace.failure_detail.empty())
        std::printf("detail:      %s\n", trace.failure_detail.c_str());

    switch (trace.status) {
        case setopt::TerminationStatus::StrongStationaryDeclared:
        case setopt::TerminationStatus::MaxIterations:
            return 0;
        default:
            return 2;
    }
}

int cmd_batch(const std::string& instance_spec, int runs, std::uint64_t seed,
              const setopt::SolveParams& params, int threads, const std::string& out_csv,
              const std::string& out_json, const std::string& plots_dir,
              bool include_timing) {
    const setopt::Instance inst = resolve_instance(instance_spec);
    const setopt::Cone cone = resolve_cone(inst);

    const bool want_traces = !plots_dir.empty();
    const setopt::BatchResult result =
        setopt::run_batch(inst, cone, runs, seed, params, threads, want_traces);
    const setopt::BatchStats& s = result.stats;

    std::printf("instance: %s   runs: %d   seed: %llu\n", inst.name().c_str(), s.runs,
                static_cast<unsigned long long>(seed));
    std::printf("solved:   %d\n", s.solved);
    if (s.solved > 0) {
        std::printf("iterations (min, mean, max): (%d, %.4f, %d)\n", s.iter_min, s.iter_mean,
                    s.iter_max);
        std::printf("mean cpu time: %.4f s\n", s.mean_wall_seconds);
    }

    if (!out_csv.empty()) setopt::export_stats_csv(s, out_csv, include_timing);
    if (!out_json.empty()) setopt::export_stats_json(s, out_json, include_timing);

    if (want_traces) {
        std::filesystem::create_directories(plots_dir);
        if (inst.arg_dim() == 2)
            setopt::export_solutions_plot(s, inst,
                                          (std::filesystem::path(plots_dir) / "solutions.svg").string());
        if (inst.image_dim() == 2) {
            // First solved run with at least one step, else run 0.
            int pick = 0;
            for (const auto& run : s.per_run) {
                if (run.solved() && run.iterations > 0) {
                    pick = run.run_index;
                    break;
                }
            }
            setopt::export_trajectory_plot(
                result.traces[static_cast<std::size_t>(pick)], inst,
                (std::filesystem::path(plots_dir) / "trajectory.svg").string());
        }
    }
    return 0;
}

int cmd_check(const std::string& instance_spec, int samples, double h, std::uint64_t seed) {
    const setopt::Instance inst = resolve_instance(instance_spec);
    const setopt::Cone cone = resolve_cone(inst);
    std::printf("instance: %s  (n=%ld, m=%ld, p=%d)\n", inst.name().c_str(),
                static_cast<long>(inst.arg_dim()), static_cast<long>(inst.image_dim()),
                inst.selection_count());
    std::printf("cone: %ld dual rows, interior direction ok\n",
                static_cast<long>(cone.row_count()));

    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        const Eigen::VectorXd x = setopt::sample_x0(inst, seed, s);
        worst = std::max(worst, setopt::fd_check(inst, x, h));
    }
    std::printf("max relative jacobian error over %d samples (h=%g): %.3e\n", samples, h,
                worst);
    if (worst > 1e-6) {
        std::printf("FAIL: jacobians disagree with finite differences\n");
        return 2;
    }
    std::printf("OK\n");
    return 0;
}

int cmd_minelems(const std::string& points_path, const std::string& cone_spec, bool naive) {
    const std::vector<Eigen::VectorXd> pts = read_points_csv(points_path);
    if (pts.empty()) throw setopt::IoError("points file is empty");
    const setopt::FiniteVectorSet set{pts};
    const setopt::Cone cone = parse_cone_arg(cone_spec, set.dim());
    const std::vector<int> idx = naive ? setopt::minimal_naive(set, cone)
                                       : setopt::minimal_presort(set, cone);
    for (int i : idx) {
        std::printf("%d", i);
        for (Eigen::Index k = 0; k < set[i].size(); ++k) std::printf(",%.17g", set[i][k]);
        std::printf("\n");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"descent solver for set optimization with smooth selections"};
    app.require_subcommand(1);

    setopt::SolveParams params;

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "run one solve from a given start");
    std::string instance_spec, x0_csv, trace_path;
    solve_cmd->add_option("--instance", instance_spec, "builtin name or instance .json file")
        ->required();
    solve_cmd->add_option("--x0", x0_csv, "comma-separated start point")->required();
    solve_cmd->add_option("--beta", params.beta, "Armijo slope fraction");
    solve_cmd->add_option("--nu", params.nu, "backtracking ratio");
    solve_cmd->add_option("--tol", params.tol_stat, "stationarity tolerance on ||u||");
    solve_cmd->add_option("--max-iters", params.max_iters, "iteration cap");
    solve_cmd->add_option("--cap", params.partition_cap, "partition tuple cap");
    solve_cmd->add_option("--trace", trace_path, "write per-iteration JSONL here");

    // batch
    auto* batch_cmd = app.add_subcommand("batch", "seeded batch of random starts");
    std::string b_instance, out_csv, out_json, plots_dir;
    int runs = 100, threads = 0, check_samples = 20;
    std::uint64_t seed = 1;
    bool include_timing = false;
    double fd_h = 1e-5;
    batch_cmd->add_option("--instance", b_instance, "builtin name or instance .json file")
        ->required();
    batch_cmd->add_option("--runs", runs, "number of runs");
    batch_cmd->add_option("--seed", seed, "PRNG seed");
    batch_cmd->add_option("--beta", params.beta, "Armijo slope fraction");
    batch_cmd->add_option("--nu", params.nu, "backtracking ratio");
    batch_cmd->add_option("--tol", params.tol_stat, "stationarity tolerance on ||u||");
    batch_cmd->add_option("--max-iters", params.max_iters, "iteration cap");
    batch_cmd->add_option("--threads", threads, "worker cap (0 = hardware)");
    batch_cmd->add_option("--out", out_csv, "stats CSV path");
    batch_cmd->add_option("--json", out_json, "stats JSON path");
    batch_cmd->add_option("--plots", plots_dir, "directory for SVG plots");
    batch_cmd->add_flag("--include-timing", include_timing,
                        "add wall-time columns (not byte-reproducible)");

    // check
    auto* check_cmd = app.add_subcommand("check", "validate cone and jacobians");
    std::string c_instance;
    check_cmd->add_option("--instance", c_instance, "builtin name or instance .json file")
        ->required();
    check_cmd->add_option("--samples", check_samples, "sample points for the check");
    check_cmd->add_option("--fd-step", fd_h, "finite-difference step");
    check_cmd->add_option("--seed", seed, "PRNG seed");

    // minelems
    auto* min_cmd = app.add_subcommand("minelems", "minimal elements of a point list");
    std::string points_path, cone_spec;
    bool naive = false;
    min_cmd->add_option("--points", points_path, "CSV file, one point per line")->required();
    min_cmd->add_option("--cone", cone_spec, "cone .json file or orthant:m");
    min_cmd->add_flag("--naive", naive, "use the quadratic oracle instead of the presort");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (solve_cmd->parsed()) return cmd_solve(instance_spec, x0_csv, params, trace_path);
        if (batch_cmd->parsed())
            return cmd_batch(b_instance, runs, seed, params, threads, out_csv, out_json,
                             plots_dir, include_timing);
        if (check_cmd->parsed()) return cmd_check(c_instance, check_samples, fd_h, seed);
        if (min_cmd->parsed()) return cmd_minelems(points_path, cone_spec, naive);
    } catch (const setopt::SubproblemError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 2;
    } catch (const setopt::LineSearchError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 2;
    } catch (const setopt::CapExceeded& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
