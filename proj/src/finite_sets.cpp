// SPDX-License-Identifier: Apache-2.0
#include "setopt/finite_sets.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace setopt {

FiniteVectorSet::FiniteVectorSet(std::vector<Eigen::VectorXd> pts) : points(std::move(pts)) {
    if (points.empty())
        throw DimensionMismatch("finite set: needs at least one point");
    const Eigen::Index m = points.front().size();
    for (const auto& p : points) {
        if (p.size() != m)
            throw DimensionMismatch("finite set: mixed point dimensions");
    }
}

bool values_equal(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    const double scale = std::max({1.0, a.norm(), b.norm()});
    return (a - b).norm() <= kValueEqTol * scale;
}

std::vector<int> minimal_naive(const FiniteVectorSet& set, const Cone& cone) {
    if (set.dim() != cone.dim())
        throw DimensionMismatch("minimal_naive: set/cone dimension mismatch");
    const Eigen::Index n = set.size();
    std::vector<int> out;
    for (Eigen::Index i = 0; i < n; ++i) {
        bool dominated = false;
        for (Eigen::Index j = 0; j < n && !dominated; ++j) {
            if (j == i) continue;
            if (cone.leq(set[j], set[i]) && !values_equal(set[j], set[i]))
                dominated = true;
        }
        if (!dominated) out.push_back(static_cast<int>(i));
    }
    return out;
}

std::vector<int> weakly_minimal_naive(const FiniteVectorSet& set, const Cone& cone) {
    if (set.dim() != cone.dim())
        throw DimensionMismatch("weakly_minimal_naive: set/cone dimension mismatch");
    const Eigen::Index n = set.size();
    std::vector<int> out;
    for (Eigen::Index i = 0; i < n; ++i) {
        bool dominated = false;
        for (Eigen::Index j = 0; j < n && !dominated; ++j) {
            if (cone.lt(set[j], set[i])) dominated = true;
        }
        if (!dominated) out.push_back(static_cast<int>(i));
    }
    return out;
}

std::vector<int> minimal_presort(const FiniteVectorSet& set, const Cone& cone,
                                 PresortStats* stats) {
    if (set.dim() != cone.dim())
        throw DimensionMismatch("minimal_presort: set/cone dimension mismatch");
    const Eigen::Index n = set.size();
    std::vector<double> key(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) key[static_cast<std::size_t>(i)] = cone.presort_value(set[i]);

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return key[static_cast<std::size_t>(a)] < key[static_cast<std::size_t>(b)]; });

    // Strong monotonicity of the presort key guarantees a candidate can only
    // be dominated by a point appearing earlier in the sorted order.
    std::vector<int> accepted;
    for (int idx : order) {
        bool dominated = false;
        for (int acc : accepted) {
            if (stats) {
                ++stats->comparisons;
                if (key[static_cast<std::size_t>(acc)] > key[static_cast<std::size_t>(idx)])
                    ++stats->against_larger_presort;
            }
            if (cone.leq(set[acc], set[idx])) {
                dominated = true;
                break;
            }
        }
        if (!dominated) accepted.push_back(idx);
    }
    return accepted;
}

bool lower_less(const FiniteVectorSet& a, const FiniteVectorSet& b, const Cone& cone) {
    if (a.dim() != b.dim() || a.dim() != cone.dim())
        throw DimensionMismatch("lower_less: dimension mismatch");
    for (Eigen::Index j = 0; j < b.size(); ++j) {
        bool covered = false;
        for (Eigen::Index i = 0; i < a.size() && !covered; ++i) {
            if (cone.leq(a[i], b[j])) covered = true;
        }
        if (!covered) return false;
    }
    return true;
}

bool strict_lower_less(const FiniteVectorSet& a, const FiniteVectorSet& b, const Cone& cone) {
    if (a.dim() != b.dim() || a.dim() != cone.dim())
        throw DimensionMismatch("strict_lower_less: dimension mismatch");
    for (Eigen::Index j = 0; j < b.size(); ++j) {
        bool covered = false;
        for (Eigen::Index i = 0; i < a.size() && !covered; ++i) {
            if (cone.lt(a[i], b[j])) covered = true;
        }
        if (!covered) return false;
    }
    return true;
}

bool domination_check(const FiniteVectorSet& set, const Cone& cone) {
    const std::vector<int> mins = minimal_naive(set, cone);
    for (Eigen::Index i = 0; i < set.size(); ++i) {
        bool covered = false;
        for (int j : mins) {
            if (cone.leq(set[j], set[i])) {
                covered = true;
                break;
            }
        }
        if (!covered) return false;
    }
    return true;
}

}  // namespace setopt
