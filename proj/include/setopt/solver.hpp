// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "setopt/cone.hpp"
#include "setopt/direction.hpp"
#include "setopt/instance.hpp"
#include "setopt/partition.hpp"

namespace setopt {

struct SolveParams {
    double beta = 1e-4;         // Armijo slope fraction, in (0,1)
    double nu = 0.5;            // backtracking ratio, in (0,1)
    double tol_stat = kStationarityTol;  // declare stationarity when ||u|| < tol_stat
    int max_iters = 200;        // maximum number of update steps
    int max_halvings = 60;      // nu^60 ~ 1e-18 is numerically zero
    std::size_t partition_cap = kDefaultPartitionCap;
    bool record_sets = true;    // keep F(x_k) in the trace (needed for plots/checks)

    void validate() const;
};

enum class TerminationStatus {
    StrongStationaryDeclared,
    MaxIterations,
    LineSearchFailed,
    PartitionCapExceeded,
    SubproblemFailure,
};

std::string to_string(TerminationStatus s);

struct IterationRecord {
    int iteration = 0;
    Eigen::VectorXd x;
    std::vector<Eigen::VectorXd> image;  // F(x_k), when record_sets
    int omega = 0;
    PartitionTuple tuple;
    Eigen::VectorXd u;
    double phi = 0.0;
    // t_k; NaN on the terminal record of a run.
    double step = std::numeric_limits<double>::quiet_NaN();
    std::int64_t wall_nanos = 0;
};

/// Full history of one solve. x_{k+1} = x_k + t_k u_k exactly; the last
/// record carries the final iterate and no step.
struct RunTrace {
    std::vector<IterationRecord> iterations;
    TerminationStatus status = TerminationStatus::MaxIterations;
    std::vector<Eigen::VectorXd> certificate;  // multipliers when declared stationary
    double final_error = 0.0;                  // ||u|| at the last iterate
    std::size_t final_partition_size = 0;      // |P_x| at termination
    Eigen::VectorXd final_x;
    std::string failure_detail;

    /// Number of completed update steps (records carrying a finite step).
    int iteration_count() const;
    bool solved() const { return status == TerminationStatus::StrongStationaryDeclared; }
};

/// Backtracking step: largest t = nu^q, q = 0..max_halvings, with
///   f^{a_j}(x + t u) - f^{a_j}(x) - beta t J(a_j, x) u  in -K   for all j.
/// Throws LineSearchError when no q works.
double armijo(const Instance& inst, const Cone& cone, const Eigen::VectorXd& x,
              const PartitionTuple& a, const Eigen::VectorXd& u, const SolveParams& params);

/// The descent loop: decompose, find the best direction over the partition
/// set, stop when ||u|| < tol_stat (declaring strong stationarity, with
/// multipliers for the returned tuple), otherwise line-search and step.
/// All failures are encoded as trace statuses.
RunTrace solve(const Instance& inst, const Cone& cone, const Eigen::VectorXd& x0,
               const SolveParams& params = {});

/// Recomputes, along a recorded trace, the scalarized-descent inequality
///   zeta(F(x_{k+1})) <= zeta(F(x_k)) + beta t_k [phi(x_k) - 1/2 ||u_k||^2],
/// zeta(A) = min_{y in A} psi_e(y), allowing 1e-8 slack. Requires image sets.
bool descent_inequality_check(const RunTrace& trace, const Cone& cone, double beta = 1e-4);

/// Writes one JSON object per iteration (schema in the README), then a
/// terminal record with status, certificate and final error.
void write_trace_jsonl(const RunTrace& trace, const std::string& path);

}  // namespace setopt
