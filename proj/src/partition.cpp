// SPDX-License-Identifier: Apache-2.0
#include "setopt/partition.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "setopt/rng.hpp"

namespace setopt {

std::size_t MinDecomposition::partition_size() const {
    std::size_t prod = 1;
    for (const auto& g : groups) {
        const std::size_t s = g.size();
        if (s != 0 && prod > std::numeric_limits<std::size_t>::max() / s)
            return std::numeric_limits<std::size_t>::max();
        prod *= s;
    }
    return prod;
}

MinDecomposition decompose_set(FiniteVectorSet set, const Cone& cone) {
    MinDecomposition d;
    d.weak_active = weakly_minimal_naive(set, cone);

    const std::vector<int> reps = minimal_presort(set, cone);

    // Distinct minimal values in first-occurrence (selection index) order,
    // with every index whose value matches grouped under it.
    struct Entry {
        Eigen::VectorXd value;
        std::vector<int> group;
        int first;
    };
    std::vector<Entry> entries;
    for (int rep : reps) {
        Entry e;
        e.value = set[rep];
        for (Eigen::Index i = 0; i < set.size(); ++i) {
            if (values_equal(set[i], e.value)) e.group.push_back(static_cast<int>(i));
        }
        e.first = e.group.front();
        entries.push_back(std::move(e));
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });

    for (auto& e : entries) {
        d.minimal_values.push_back(std::move(e.value));
        for (int i : e.group) d.active.push_back(i);
        d.groups.push_back(std::move(e.group));
    }
    std::sort(d.active.begin(), d.active.end());
    d.points = std::move(set);
    return d;
}

MinDecomposition decompose(const Instance& inst, const Cone& cone, const Eigen::VectorXd& x) {
    return decompose_set(inst.evaluate(x), cone);
}

PartitionProduct::PartitionProduct(const MinDecomposition& decomp, std::size_t cap)
    : groups_(&decomp.groups), cursor_(decomp.groups.size(), 0),
      total_(decomp.partition_size()) {
    if (cap < 1) throw DimensionMismatch("partition_tuples: cap must be >= 1");
    if (total_ > cap)
        throw CapExceeded(total_, "partition set has " + std::to_string(total_) +
                          " tuples, cap is " + std::to_string(cap));
}

std::optional<PartitionTuple> PartitionProduct::next() {
    if (done_) return std::nullopt;
    if (groups_->empty()) {
        done_ = true;
        return std::nullopt;
    }
    PartitionTuple t(groups_->size());
    for (std::size_t j = 0; j < groups_->size(); ++j) t[j] = (*groups_)[j][cursor_[j]];
    // Odometer increment, last group fastest.
    for (std::size_t j = groups_->size(); j-- > 0;) {
        if (++cursor_[j] < (*groups_)[j].size()) return t;
        cursor_[j] = 0;
    }
    done_ = true;
    return t;
}

std::vector<PartitionTuple> partition_tuples(const MinDecomposition& decomp, std::size_t cap) {
    PartitionProduct prod(decomp, cap);
    std::vector<PartitionTuple> out;
    out.reserve(prod.total());
    while (auto t = prod.next()) out.push_back(std::move(*t));
    return out;
}

bool is_min_equal_wmin(const MinDecomposition& decomp) {
    for (int i : decomp.weak_active) {
        bool matches = false;
        for (const auto& v : decomp.minimal_values) {
            if (values_equal(decomp.points[i], v)) {
                matches = true;
                break;
            }
        }
        if (!matches) return false;
    }
    return true;
}

RegularityReport regularity_probe(const Instance& inst, const Cone& cone,
                                  const Eigen::VectorXd& x, double radius, int samples,
                                  std::uint64_t seed) {
    if (radius <= 0.0) throw DimensionMismatch("regularity_probe: radius must be positive");
    if (samples < 1) throw DimensionMismatch("regularity_probe: samples must be >= 1");

    const MinDecomposition center = decompose(inst, cone, x);
    RegularityReport rep;
    rep.omega_center = center.omega();
    rep.omega_min = rep.omega_max = center.omega();
    rep.min_eq_wmin_at_center = is_min_equal_wmin(center);

    CounterRng rng(seed, 0x5e9);
    const Eigen::Index n = inst.arg_dim();
    for (int s = 0; s < samples; ++s) {
        // Uniform in the ball by rejection from the enclosing cube.
        Eigen::VectorXd delta(n);
        do {
            for (Eigen::Index k = 0; k < n; ++k) delta[k] = rng.uniform(-1.0, 1.0);
        } while (delta.squaredNorm() > 1.0);
        const int w = decompose(inst, cone, x + radius * delta).omega();
        rep.omega_min = std::min(rep.omega_min, w);
        rep.omega_max = std::max(rep.omega_max, w);
    }
    rep.omega_constant = (rep.omega_min == rep.omega_max);
    return rep;
}

}  // namespace setopt
