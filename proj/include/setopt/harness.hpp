// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "setopt/solver.hpp"

namespace setopt {

struct RunSummary {
    int run_index = 0;
    Eigen::VectorXd x0;
    TerminationStatus status = TerminationStatus::MaxIterations;
    int iterations = 0;
    double final_error = 0.0;
    Eigen::VectorXd x_final;
    double wall_seconds = 0.0;
    bool solved() const { return status == TerminationStatus::StrongStationaryDeclared; }
};

/// Aggregate over a seeded batch. Iteration statistics and mean time are
/// computed over solved runs only.
struct BatchStats {
    int runs = 0;
    int solved = 0;
    int iter_min = 0;
    double iter_mean = 0.0;
    int iter_max = 0;
    double mean_wall_seconds = 0.0;
    std::vector<RunSummary> per_run;
};

struct BatchResult {
    BatchStats stats;
    std::vector<RunTrace> traces;  // filled when keep_traces
};

/// Initial point of run r for a seed: one uniform draw per coordinate from
/// the instance's sampling box, using CounterRng stream r (see rng.hpp).
Eigen::VectorXd sample_x0(const Instance& inst, std::uint64_t seed, int run_index);

/// Runs `runs` seeded solves. Runs execute on a worker pool (capped by the
/// SETOPT_THREADS environment variable and the `threads` argument; 0 means
/// hardware concurrency); results are keyed by run index, so the outcome is
/// independent of scheduling.
BatchResult run_batch(const Instance& inst, const Cone& cone, int runs, std::uint64_t seed,
                      const SolveParams& params = {}, int threads = 0,
                      bool keep_traces = false);

/// CSV export: a summary row plus one row per run. Timing columns are
/// omitted unless include_timing is set, keeping default output
/// byte-deterministic for a fixed seed and config.
void export_stats_csv(const BatchStats& stats, const std::string& path,
                      bool include_timing = false);

/// JSON export of the same data.
void export_stats_json(const BatchStats& stats, const std::string& path,
                       bool include_timing = false);

/// Parses a CSV produced by export_stats_csv back into BatchStats
/// (round-trip check; timing fields default to zero when omitted).
BatchStats import_stats_csv(const std::string& path);

/// Distance from x to conv{points} (least-norm point of the shifted hull).
double hull_distance(const std::vector<Eigen::VectorXd>& points, const Eigen::VectorXd& x);

/// Image-space trajectory scatter (m = 2 only): F(x_0) black, intermediate
/// sets gray, final set red; for one-dimensional arguments the selection
/// curves are drawn over the sampling interval. Deterministic bytes.
void export_trajectory_plot(const RunTrace& trace, const Instance& inst,
                            const std::string& path);

/// Argument-space scatter (n = 2 only): solved final points red, instance
/// landmarks black, landmark cloud gray. Deterministic bytes.
void export_solutions_plot(const BatchStats& stats, const Instance& inst,
                           const std::string& path);

}  // namespace setopt
