// SPDX-License-Identifier: Apache-2.0
//
// Test-only oracles, independent of the library's computational paths.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "setopt/cone.hpp"
#include "setopt/finite_sets.hpp"
#include "setopt/rng.hpp"

namespace oracles {

// Gerstewitz value by bisection on the definitional feasibility test
// t*e - y in K, bracketing t from +/- big.
inline double bisection_scalarize(const setopt::Cone& cone, const Eigen::VectorXd& y) {
    double lo = -1.0, hi = 1.0;
    const Eigen::VectorXd& e = cone.interior_direction();
    while (!cone.contains(hi * e - y)) hi *= 2.0;
    while (cone.contains(lo * e - y)) lo *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-12 * (1.0 + std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (cone.contains(mid * e - y))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

// Exact integer brute force for minimal elements of dyadic points under the
// orthant order. Points are given as integer numerators over a common
// denominator; componentwise comparison is exact.
inline std::vector<int> minimal_integer_orthant(const std::vector<std::vector<std::int64_t>>& pts) {
    const std::size_t n = pts.size();
    std::vector<int> out;
    for (std::size_t i = 0; i < n; ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < n && !dominated; ++j) {
            if (j == i) continue;
            bool all_leq = true, any_lt = false;
            for (std::size_t k = 0; k < pts[i].size(); ++k) {
                if (pts[j][k] > pts[i][k]) all_leq = false;
                if (pts[j][k] < pts[i][k]) any_lt = true;
            }
            if (all_leq && any_lt) dominated = true;
        }
        if (!dominated) out.push_back(static_cast<int>(i));
    }
    return out;
}

// Brute-force min-norm point over conv{points}: enumerate support subsets,
// solve the affine minimizer on each, keep feasible candidates (barycentric
// coords >= -1e-12), return the best. Exponential; inputs stay small.
inline Eigen::VectorXd min_norm_subsets(const std::vector<Eigen::VectorXd>& points) {
    const int count = static_cast<int>(points.size());
    const Eigen::Index n = points.front().size();
    Eigen::VectorXd best = points.front();
    double best_norm = best.squaredNorm();
    for (std::uint32_t mask = 1; mask < (1u << count); ++mask) {
        std::vector<int> sub;
        for (int i = 0; i < count; ++i)
            if (mask & (1u << i)) sub.push_back(i);
        const auto k = static_cast<Eigen::Index>(sub.size());
        Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(k + 1, k + 1);
        for (Eigen::Index i = 0; i < k; ++i) {
            for (Eigen::Index j = 0; j < k; ++j)
                kkt(i, j) = points[sub[i]].dot(points[sub[j]]);
            kkt(i, k) = 1.0;
            kkt(k, i) = 1.0;
        }
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
        rhs[k] = 1.0;
        Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
        if (!lu.isInvertible()) continue;
        const Eigen::VectorXd sol = lu.solve(rhs);
        if (sol.head(k).minCoeff() < -1e-12) continue;
        Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
        for (Eigen::Index i = 0; i < k; ++i) z += sol[i] * points[sub[i]];
        const double zn = z.squaredNorm();
        if (zn < best_norm) {
            best_norm = zn;
            best = z;
        }
    }
    return best;
}

// 2-D convex hull (monotone chain) and distance from a point to it,
// independent of any solver machinery.
inline std::vector<Eigen::Vector2d> hull2d(std::vector<Eigen::Vector2d> pts) {
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const auto& a, const auto& b) { return a == b; }),
              pts.end());
    if (pts.size() < 3) return pts;
    auto cross = [](const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
        return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
    };
    std::vector<Eigen::Vector2d> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    const std::size_t lower = k + 1;
    for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], *it) <= 0) --k;
        hull[k++] = *it;
    }
    hull.resize(k - 1);
    return hull;
}

inline double segment_distance(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                               const Eigen::Vector2d& p) {
    const Eigen::Vector2d d = b - a;
    const double len2 = d.squaredNorm();
    const double t = len2 > 0.0 ? std::clamp((p - a).dot(d) / len2, 0.0, 1.0) : 0.0;
    return (p - (a + t * d)).norm();
}

// Distance from p to the hull of pts (0 inside).
inline double hull2d_distance(const std::vector<Eigen::Vector2d>& pts, const Eigen::Vector2d& p) {
    const auto hull = hull2d(pts);
    if (hull.size() == 1) return (p - hull[0]).norm();
    if (hull.size() == 2) return segment_distance(hull[0], hull[1], p);
    bool inside = true;
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const auto& a = hull[i];
        const auto& b = hull[(i + 1) % hull.size()];
        const double cr = (b.x() - a.x()) * (p.y() - a.y()) - (b.y() - a.y()) * (p.x() - a.x());
        if (cr < 0.0) inside = false;  // hull is counter-clockwise
        nearest = std::min(nearest, segment_distance(a, b, p));
    }
    return inside ? 0.0 : nearest;
}

// Scalar Armijo backtracking reference for a single smooth f: R -> R.
template <typename F, typename G>
double scalar_backtracking(F f, G grad, double x, double u, double beta, double nu,
                           int max_halvings) {
    double t = 1.0;
    for (int q = 0; q <= max_halvings; ++q, t *= nu) {
        if (f(x + t * u) <= f(x) + beta * t * grad(x) * u) return t;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

// Random pointed solid polyhedral cone: r rows with a_i^T e >= margin.
inline setopt::Cone random_cone(setopt::CounterRng& rng, Eigen::Index m, Eigen::Index extra_rows = 1) {
    for (;;) {
        Eigen::VectorXd e(m);
        for (Eigen::Index i = 0; i < m; ++i) e[i] = rng.uniform(-1.0, 1.0);
        if (e.norm() < 0.1) continue;
        e.normalize();
        const Eigen::Index r = m + extra_rows;
        Eigen::MatrixXd rows(r, m);
        for (Eigen::Index i = 0; i < r; ++i) {
            Eigen::VectorXd a(m);
            for (Eigen::Index k = 0; k < m; ++k) a[k] = rng.uniform(-1.0, 1.0);
            const double dot = a.dot(e);
            if (dot < 0.3 * a.norm()) a += (0.3 * a.norm() - dot + 0.1) * e;
            rows.row(i) = a.transpose();
        }
        try {
            return setopt::Cone::validated(std::move(rows), std::move(e));
        } catch (const setopt::InvalidCone&) {
            continue;  // rank-deficient draw; retry
        }
    }
}

// Element of K (interior when margin > 0): w + t e with t chosen from the
// feasibility bound, independent of the scalarization closed form only up to
// using the row data directly.
inline Eigen::VectorXd cone_sample(setopt::CounterRng& rng, const setopt::Cone& cone,
                                   double margin = 0.0) {
    const Eigen::Index m = cone.dim();
    Eigen::VectorXd w(m);
    for (Eigen::Index i = 0; i < m; ++i) w[i] = rng.uniform(-1.0, 1.0);
    double t = 0.0;
    for (Eigen::Index i = 0; i < cone.row_count(); ++i) {
        const double num = -cone.dual_rows().row(i).dot(w);
        t = std::max(t, num / cone.row_dot_e()[i]);
    }
    return w + (t + margin) * cone.interior_direction();
}

inline Eigen::VectorXd random_vector(setopt::CounterRng& rng, Eigen::Index m, double scale = 1.0) {
    Eigen::VectorXd v(m);
    for (Eigen::Index i = 0; i < m; ++i) v[i] = rng.uniform(-scale, scale);
    return v;
}

}  // namespace oracles
