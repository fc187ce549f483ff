// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <vector>

#include "setopt/cone.hpp"

namespace setopt {

/// Relative tolerance for deciding two image vectors are the same value.
inline constexpr double kValueEqTol = 1e-9;

/// Ordered finite collection of vectors in image space. Duplicates are
/// permitted and keep their stable indices 0..N-1.
struct FiniteVectorSet {
    std::vector<Eigen::VectorXd> points;

    FiniteVectorSet() = default;
    explicit FiniteVectorSet(std::vector<Eigen::VectorXd> pts);

    Eigen::Index size() const { return static_cast<Eigen::Index>(points.size()); }
    Eigen::Index dim() const { return points.empty() ? 0 : points.front().size(); }
    const Eigen::VectorXd& operator[](Eigen::Index i) const { return points[static_cast<std::size_t>(i)]; }
};

/// a == b up to kValueEqTol relative to max(1, |a|, |b|).
bool values_equal(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Indices of minimal elements: i is kept iff every j with point_j <= point_i
/// has point_j == point_i. All duplicates of a minimal value are retained.
/// O(N^2); serves as the oracle for the presort method.
std::vector<int> minimal_naive(const FiniteVectorSet& set, const Cone& cone);

/// Indices of weakly minimal elements: no j with point_j < point_i (int K).
std::vector<int> weakly_minimal_naive(const FiniteVectorSet& set, const Cone& cone);

struct PresortStats {
    long comparisons = 0;
    // Comparisons against an accepted point whose presort value exceeds the
    // candidate's; structurally zero for the forward pass.
    long against_larger_presort = 0;
};

/// Presort method: sort indices by ascending presort value (stable), then a
/// single forward pass appends a candidate iff no already-accepted point
/// leq-dominates it. Returns one index per distinct minimal value; the value
/// set equals minimal_naive's.
std::vector<int> minimal_presort(const FiniteVectorSet& set, const Cone& cone,
                                 PresortStats* stats = nullptr);

/// Lower set less relation: A <=^l B iff B is contained in A + K, i.e. every
/// b in B has some a in A with a <= b.
bool lower_less(const FiniteVectorSet& a, const FiniteVectorSet& b, const Cone& cone);

/// Strict version: B contained in A + int K.
bool strict_lower_less(const FiniteVectorSet& a, const FiniteVectorSet& b, const Cone& cone);

/// Finite-set domination property: every point is leq-dominated by some
/// minimal point. Holds for every nonempty finite set; used as a test oracle.
bool domination_check(const FiniteVectorSet& set, const Cone& cone);

}  // namespace setopt
