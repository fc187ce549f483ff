// SPDX-License-Identifier: Apache-2.0
#include "setopt/direction.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <string>

namespace setopt {

namespace {

std::mutex g_audit_mutex;
SubproblemAudit g_audit;

void audit_record(double gap, double u_sq, double row_scale) {
    std::lock_guard<std::mutex> lock(g_audit_mutex);
    ++g_audit.calls;
    g_audit.max_abs_gap = std::max(g_audit.max_abs_gap, gap);
    const double rel = gap / (1.0 + u_sq);
    if (rel > g_audit.max_rel_gap) {
        g_audit.max_rel_gap = rel;
        g_audit.u_norm_at_max = std::sqrt(u_sq);
        g_audit.row_scale_at_max = row_scale;
    }
    const double resolution =
        1024.0 * 2.220446049250313e-16 * row_scale * (1.0 + std::sqrt(u_sq));
    if (resolution > kSubproblemTol) ++g_audit.calls_beyond_literal;
    const double allowance = std::max(kSubproblemTol, resolution);
    g_audit.max_allowance_excess = std::max(g_audit.max_allowance_excess, gap - allowance);
}

// The inner solver runs in extended precision: near-stationary subproblems
// mix rows of order 1e7 that cancel down to ||z|| ~ 1e-4, which eats more
// digits than double can certify against the Wolfe criterion.
using Scalar = long double;
using VectorXl = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using MatrixXl = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Least-norm point of the affine hull of the selected points:
// minimize ||sum_i beta_i c_i||^2 subject to sum beta = 1, via the KKT system
//   [ G  1 ] [beta]   [0]
//   [ 1' 0 ] [ mu ] = [1],   G = Gram matrix.
// Solved in the per-point-normalized unknowns eta_i = beta_i ||c_i||, which
// turns G into a correlation matrix (unit diagonal). Support points can
// differ in norm by many orders of magnitude; the raw system is then
// numerically singular even though beta is perfectly well defined.
VectorXl affine_minimizer(const std::vector<VectorXl>& pts, const std::vector<int>& support) {
    const auto k = static_cast<Eigen::Index>(support.size());
    VectorXl norms(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        norms[i] = pts[static_cast<std::size_t>(support[static_cast<std::size_t>(i)])].norm();
        if (norms[i] == 0.0) norms[i] = 1.0;
    }
    MatrixXl kkt(k + 1, k + 1);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            const Scalar g = pts[static_cast<std::size_t>(support[static_cast<std::size_t>(i)])].dot(
                pts[static_cast<std::size_t>(support[static_cast<std::size_t>(j)])]);
            kkt(i, j) = g / (norms[i] * norms[j]);
            kkt(j, i) = kkt(i, j);
        }
        kkt(i, k) = Scalar(1) / norms[i];
        kkt(k, i) = kkt(i, k);
    }
    kkt(k, k) = 0.0;
    VectorXl rhs = VectorXl::Zero(k + 1);
    rhs[k] = 1.0;
    // Singular only for genuinely affinely dependent supports; a unit-scale
    // ridge keeps the step defined and the drop logic prunes the culprit.
    Eigen::FullPivLU<MatrixXl> lu(kkt);
    if (!lu.isInvertible()) {
        for (Eigen::Index i = 0; i < k; ++i) kkt(i, i) += Scalar(1e-18);
        lu.compute(kkt);
    }
    const VectorXl sol = lu.solve(rhs);
    VectorXl beta(k);
    for (Eigen::Index i = 0; i < k; ++i) beta[i] = sol[i] / norms[i];
    return beta;
}

}  // namespace

MinNormResult min_norm_point(const std::vector<Eigen::VectorXd>& input) {
    if (input.empty())
        throw DimensionMismatch("min_norm_point: empty point list");
    const Eigen::Index n = input.front().size();
    for (const auto& p : input)
        if (p.size() != n) throw DimensionMismatch("min_norm_point: mixed dimensions");

    Scalar data_scale = 0.0;
    for (const auto& p : input) data_scale = std::max(data_scale, Scalar(p.norm()));

    // Distinct tuple entries often carry identical gradient rows; duplicates
    // make the Gram systems singular, so collapse them up front and map the
    // weights back to the first representative afterwards.
    std::vector<VectorXl> points;
    std::vector<int> rep;  // index into `input` per kept point
    points.reserve(input.size());
    for (std::size_t i = 0; i < input.size(); ++i) {
        const VectorXl p = input[i].cast<Scalar>();
        bool dup = false;
        for (const auto& q : points) {
            if ((p - q).norm() <= Scalar(1e-14) * std::max(p.norm(), q.norm())) {
                dup = true;
                break;
            }
        }
        if (!dup) {
            points.push_back(p);
            rep.push_back(static_cast<int>(i));
        }
    }
    const auto count = static_cast<int>(points.size());

    // Start from the point of least norm.
    int start = 0;
    Scalar best = points[0].squaredNorm();
    for (int i = 1; i < count; ++i) {
        const Scalar s = points[static_cast<std::size_t>(i)].squaredNorm();
        if (s < best) {
            best = s;
            start = i;
        }
    }

    std::vector<int> support{start};
    VectorXl weights = VectorXl::Ones(1);
    VectorXl z = points[static_cast<std::size_t>(start)];

    constexpr Scalar eps = std::numeric_limits<Scalar>::epsilon();
    Scalar residual = 0.0;
    int major = 0;
    for (; major < kMaxMinNormIters; ++major) {
        // Wolfe criterion: z^T c_l >= ||z||^2 - tol (1 + ||z||^2) for all l.
        // The floor term covers the rounding of the certifying products
        // themselves (~eps * max||c|| * ||z||); cases beyond even that are
        // caught by the entering-point check below.
        const Scalar zz = z.squaredNorm();
        const Scalar floor = Scalar(256) * eps * data_scale * z.norm();
        const Scalar slack = std::max(static_cast<Scalar>(kWolfeTol) * (Scalar(1) + zz), floor);
        const Scalar threshold = zz - slack;
        int entering = -1;
        Scalar worst = std::numeric_limits<Scalar>::infinity();
        for (int l = 0; l < count; ++l) {
            const Scalar d = z.dot(points[static_cast<std::size_t>(l)]);
            if (d < worst) {
                worst = d;
                entering = l;
            }
        }
        residual = std::max(Scalar(0), zz - worst);
        if (worst >= threshold) break;
        // Entering an existing support point means the float criterion is
        // out of reach; the current z is the best certifiable answer.
        if (std::find(support.begin(), support.end(), entering) != support.end()) break;

        support.push_back(entering);
        VectorXl w(weights.size() + 1);
        w << weights, 0.0;
        weights = w;

        // Minor cycles: move toward the affine minimizer, dropping points
        // whose weight hits zero, until the minimizer is a strict convex
        // combination. Legitimate weights can be ~1e-18 when row norms differ
        // wildly, so the thresholds are exact zeros.
        for (;;) {
            const VectorXl beta = affine_minimizer(points, support);
            if (beta.minCoeff() > Scalar(0)) {
                weights = beta;
                break;
            }
            Scalar theta = 1.0;
            Eigen::Index binding = -1;
            for (Eigen::Index i = 0; i < beta.size(); ++i) {
                if (beta[i] <= Scalar(0)) {
                    const Scalar denom = weights[i] - beta[i];
                    if (denom > 0.0 && weights[i] / denom < theta) {
                        theta = weights[i] / denom;
                        binding = i;
                    }
                }
            }
            weights = weights + theta * (beta - weights);
            if (binding >= 0) weights[binding] = 0.0;
            std::vector<int> kept;
            VectorXl kept_w(weights.size());
            Eigen::Index nk = 0;
            for (Eigen::Index i = 0; i < weights.size(); ++i) {
                if (weights[i] > Scalar(0)) {
                    kept.push_back(support[static_cast<std::size_t>(i)]);
                    kept_w[nk++] = weights[i];
                }
            }
            if (kept.empty()) {
                // Numerical corner: keep the largest-weight point.
                Eigen::Index imax;
                weights.maxCoeff(&imax);
                kept.push_back(support[static_cast<std::size_t>(imax)]);
                kept_w[0] = 1.0;
                nk = 1;
            }
            support = std::move(kept);
            weights = kept_w.head(nk);
            weights /= weights.sum();
        }

        z.setZero(n);
        for (Eigen::Index i = 0; i < weights.size(); ++i)
            z += weights[i] * points[static_cast<std::size_t>(support[static_cast<std::size_t>(i)])];
    }

    if (major >= kMaxMinNormIters)
        throw SubproblemError(static_cast<double>(residual),
                              "min_norm_point: no convergence after " +
                              std::to_string(kMaxMinNormIters) + " major cycles (residual " +
                              std::to_string(static_cast<double>(residual)) + ")");

    MinNormResult res;
    res.point = z.cast<double>();
    res.lambda = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(input.size()));
    for (Eigen::Index i = 0; i < weights.size(); ++i)
        res.lambda[rep[static_cast<std::size_t>(support[static_cast<std::size_t>(i)])]] =
            static_cast<double>(weights[i]);
    res.criterion_residual = static_cast<double>(residual);
    res.major_cycles = major;
    return res;
}

std::vector<Eigen::VectorXd> assemble_rows(const Instance& inst, const Cone& cone,
                                           const Eigen::VectorXd& x, const PartitionTuple& a) {
    if (inst.image_dim() != cone.dim())
        throw DimensionMismatch("assemble_rows: instance/cone dimension mismatch");
    std::vector<Eigen::VectorXd> rows;
    rows.reserve(a.size() * static_cast<std::size_t>(cone.row_count()));
    for (int sel : a) {
        const Eigen::MatrixXd jt = inst.jacobian(sel, x).transpose();  // n x m
        for (Eigen::Index i = 0; i < cone.row_count(); ++i) {
            rows.push_back(jt * (cone.dual_rows().row(i).transpose() / cone.row_dot_e()[i]));
        }
    }
    return rows;
}

TupleSolution solve_tuple(const Instance& inst, const Cone& cone,
                          const Eigen::VectorXd& x, const PartitionTuple& a) {
    const std::vector<Eigen::VectorXd> rows = assemble_rows(inst, cone, x, a);
    const MinNormResult mn = min_norm_point(rows);

    TupleSolution sol;
    sol.u = -mn.point;
    sol.lambda = mn.lambda;
    // Value from the definition, not the duality shortcut.
    double max_scal = -std::numeric_limits<double>::infinity();
    for (int sel : a)
        max_scal = std::max(max_scal, cone.scalarize(inst.jacobian(sel, x) * sol.u));
    const double u_sq = sol.u.squaredNorm();
    sol.value = max_scal + 0.5 * u_sq;
    sol.duality_gap = std::abs(sol.value + 0.5 * u_sq);
    double row_scale = 0.0;
    for (const auto& r : rows) row_scale = std::max(row_scale, r.norm());
    audit_record(sol.duality_gap, u_sq, row_scale);
    return sol;
}

DirectionResult best_direction(const Instance& inst, const Cone& cone,
                               const Eigen::VectorXd& x, const MinDecomposition& decomp,
                               std::size_t cap) {
    PartitionProduct tuples(decomp, cap);

    std::vector<PartitionTuple> order;
    std::vector<TupleSolution> solutions;
    double min_value = std::numeric_limits<double>::infinity();
    while (auto t = tuples.next()) {
        solutions.push_back(solve_tuple(inst, cone, x, *t));
        min_value = std::min(min_value, solutions.back().value);
        order.push_back(std::move(*t));
    }

    // Earliest tuple whose value ties the minimum within tolerance.
    std::size_t pick = 0;
    while (solutions[pick].value > min_value + kSubproblemTol) ++pick;

    DirectionResult res;
    res.tuple = order[pick];
    res.u = std::move(solutions[pick].u);
    res.phi = solutions[pick].value;
    res.lambda = std::move(solutions[pick].lambda);
    res.per_tuple_values.reserve(order.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        res.per_tuple_values.emplace_back(order[i], solutions[i].value);
    return res;
}

DirectionResult best_direction(const Instance& inst, const Cone& cone,
                               const Eigen::VectorXd& x, std::size_t cap) {
    const MinDecomposition decomp = decompose(inst, cone, x);
    return best_direction(inst, cone, x, decomp, cap);
}

std::vector<Eigen::VectorXd> stationarity_certificate(const DirectionResult& result,
                                                      const Cone& cone) {
    if (result.u.norm() > kStationarityTol)
        throw NotStationary("stationarity_certificate: ||u|| = " +
                            std::to_string(result.u.norm()) + " exceeds " +
                            std::to_string(kStationarityTol));
    const auto omega = static_cast<Eigen::Index>(result.tuple.size());
    const Eigen::Index r = cone.row_count();
    std::vector<Eigen::VectorXd> mu;
    mu.reserve(static_cast<std::size_t>(omega));
    for (Eigen::Index j = 0; j < omega; ++j) {
        Eigen::VectorXd m = Eigen::VectorXd::Zero(cone.dim());
        for (Eigen::Index i = 0; i < r; ++i) {
            const double w = result.lambda[j * r + i];
            if (w != 0.0)
                m += w * cone.dual_rows().row(i).transpose() / cone.row_dot_e()[i];
        }
        mu.push_back(std::move(m));
    }
    return mu;
}

SubproblemAudit subproblem_audit() {
    std::lock_guard<std::mutex> lock(g_audit_mutex);
    return g_audit;
}

void reset_subproblem_audit() {
    std::lock_guard<std::mutex> lock(g_audit_mutex);
    g_audit = SubproblemAudit{};
}

}  // namespace setopt
