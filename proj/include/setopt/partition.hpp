// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <vector>

#include "setopt/cone.hpp"
#include "setopt/finite_sets.hpp"
#include "setopt/instance.hpp"

namespace setopt {

/// Default cap on |P_x|; generic instances have singleton groups, the cap
/// guards pathological ties.
inline constexpr std::size_t kDefaultPartitionCap = 4096;

/// One element a of the partition set P_x: a_j is a selection index drawn
/// from group j. Selection indices are 0-based.
using PartitionTuple = std::vector<int>;

/// Minimal-value decomposition of an image set F(x): the distinct minimal
/// values v_1..v_omega in first-occurrence order, their index groups
/// I_{v_j}, the active set I (union of groups), and the weakly active set.
struct MinDecomposition {
    FiniteVectorSet points;                      // F(x), selection order
    std::vector<Eigen::VectorXd> minimal_values; // v_1..v_omega
    std::vector<std::vector<int>> groups;        // I_{v_j}, each ascending
    std::vector<int> active;                     // I(x), ascending
    std::vector<int> weak_active;                // I_0(x), ascending

    int omega() const { return static_cast<int>(minimal_values.size()); }

    /// |P_x| = prod_j |I_{v_j}|, saturated at SIZE_MAX.
    std::size_t partition_size() const;
};

/// Decomposition of an explicit finite set under a cone.
MinDecomposition decompose_set(FiniteVectorSet set, const Cone& cone);

/// Decomposition of F(x) for an instance.
MinDecomposition decompose(const Instance& inst, const Cone& cone, const Eigen::VectorXd& x);

/// Lazily enumerates P_x in lexicographic order of group-local indices.
/// Construction throws CapExceeded when |P_x| > cap.
class PartitionProduct {
public:
    PartitionProduct(const MinDecomposition& decomp, std::size_t cap);

    /// Next tuple, or nullopt when exhausted.
    std::optional<PartitionTuple> next();

    std::size_t total() const { return total_; }

private:
    const std::vector<std::vector<int>>* groups_;
    std::vector<std::size_t> cursor_;
    std::size_t total_;
    bool done_ = false;
};

/// Materializes all tuples of P_x (throws CapExceeded when |P_x| > cap).
std::vector<PartitionTuple> partition_tuples(const MinDecomposition& decomp, std::size_t cap);

/// Min(F(x),K) == WMin(F(x),K), compared as value sets.
bool is_min_equal_wmin(const MinDecomposition& decomp);

/// Sampling diagnostic around a point: omega over points in a ball. Sampling
/// cannot certify regularity; the report only states what was witnessed.
struct RegularityReport {
    int omega_center = 0;
    int omega_min = 0;
    int omega_max = 0;
    bool min_eq_wmin_at_center = false;
    /// True when omega was constant across all samples (consistent with a
    /// regular point); false means non-constant omega was witnessed.
    bool omega_constant = false;
};

RegularityReport regularity_probe(const Instance& inst, const Cone& cone,
                                  const Eigen::VectorXd& x, double radius, int samples,
                                  std::uint64_t seed = 0);

}  // namespace setopt
