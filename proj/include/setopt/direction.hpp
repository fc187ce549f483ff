// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <utility>
#include <vector>

#include "setopt/cone.hpp"
#include "setopt/instance.hpp"
#include "setopt/partition.hpp"

namespace setopt {

/// Wolfe optimality criterion tolerance for the min-norm-point solver.
inline constexpr double kWolfeTol = 1e-12;
/// Tolerance for the subproblem value identities (scale-relative, see below).
inline constexpr double kSubproblemTol = 1e-9;
/// Stationarity threshold on ||u||; matches the stopping rule ||u_k|| < 0.0001.
inline constexpr double kStationarityTol = 1e-4;
/// Major-cycle limit for the min-norm-point solver.
inline constexpr int kMaxMinNormIters = 1000;

/// Output of the min-norm-point solver: the least-norm point of the convex
/// hull of the inputs, its simplex weights, and the residual of the Wolfe
/// criterion  z^T c_l >= ||z||^2 - tol (1 + ||z||^2)  at termination.
struct MinNormResult {
    Eigen::VectorXd point;
    Eigen::VectorXd lambda;
    double criterion_residual = 0.0;
    int major_cycles = 0;
};

/// Least-norm point of conv{c_1..c_L} by Wolfe's algorithm (major/minor
/// cycles with affine-hull least squares). Throws SubproblemError after
/// kMaxMinNormIters major cycles.
///
/// This is the whole direction subproblem in disguise:
///   min_u max_l c_l^T u + 1/2 ||u||^2
///     = min_u max_{lambda in simplex} lambda^T C u + 1/2 ||u||^2
///     = max_{lambda} -1/2 ||C^T lambda||^2   (inner min at u = -C^T lambda),
/// so the optimal direction is u* = -z with z the least-norm point of the
/// hull of the c_l, and the optimal value is -1/2 ||z||^2.
MinNormResult min_norm_point(const std::vector<Eigen::VectorXd>& points);

/// The scalarized-gradient rows of the tuple subproblem at x:
///   c_{j,i} = J(a_j, x)^T a_i / (a_i^T e),   j = 1..omega, i = 1..r,
/// flattened j-major. Each is a vector in argument space, and
///   max_{j} psi_e(J(a_j,x) u) = max_{j,i} c_{j,i}^T u.
std::vector<Eigen::VectorXd> assemble_rows(const Instance& inst, const Cone& cone,
                                           const Eigen::VectorXd& x, const PartitionTuple& a);

struct TupleSolution {
    Eigen::VectorXd u;      // minimizer of phi_x(a, .)
    double value = 0.0;     // phi_x(a, u), evaluated directly from the definition
    Eigen::VectorXd lambda; // simplex weights over the assembled rows
    double duality_gap = 0.0;  // |value + 1/2 ||u||^2|
};

/// Minimizes phi_x(a, u) = max_j psi_e(J(a_j,x) u) + 1/2 ||u||^2 over u.
TupleSolution solve_tuple(const Instance& inst, const Cone& cone,
                          const Eigen::VectorXd& x, const PartitionTuple& a);

/// Result of the per-iterate direction search over the partition set.
struct DirectionResult {
    PartitionTuple tuple;
    Eigen::VectorXd u;
    double phi = 0.0;       // phi(x)
    Eigen::VectorXd lambda;
    std::vector<std::pair<PartitionTuple, double>> per_tuple_values;
};

/// Solves every tuple of P_x and returns the minimizing (a, u). Ties within
/// kSubproblemTol of the minimum go to the earliest tuple in lexicographic
/// iteration order.
DirectionResult best_direction(const Instance& inst, const Cone& cone,
                               const Eigen::VectorXd& x, const MinDecomposition& decomp,
                               std::size_t cap);

DirectionResult best_direction(const Instance& inst, const Cone& cone,
                               const Eigen::VectorXd& x,
                               std::size_t cap = kDefaultPartitionCap);

/// Multipliers mu_j = sum_i lambda_{j,i} a_i / (a_i^T e) in K*, one per
/// group. They satisfy sum_j J(a_j)^T mu_j = -u, hence certify stationarity
/// for the returned tuple up to ||u||, and sum_j mu_j^T e = 1 so they are
/// not all zero. Throws NotStationary when ||u|| > kStationarityTol.
std::vector<Eigen::VectorXd> stationarity_certificate(const DirectionResult& result,
                                                      const Cone& cone);

/// Process-wide audit of solve_tuple value identities, for test harnesses.
/// Each call's gap |value + 1/2||u||^2| is held against an allowance of
/// max(kSubproblemTol, 1024 eps s (1 + ||u||)), s the largest assembled-row
/// norm: the literal tolerance where doubles can represent it, and the
/// evaluation resolution of the defining max-of-products where they cannot.
struct SubproblemAudit {
    long calls = 0;
    double max_abs_gap = 0.0;  // max |value + 1/2||u||^2|
    double max_rel_gap = 0.0;  // same, relative to 1 + ||u||^2
    double u_norm_at_max = 0.0;
    double row_scale_at_max = 0.0;  // max assembled-row norm of that call
    double max_allowance_excess = 0.0;  // max over calls of gap - allowance
    long calls_beyond_literal = 0;  // calls whose allowance exceeded kSubproblemTol
};

SubproblemAudit subproblem_audit();
void reset_subproblem_audit();

}  // namespace setopt
