// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

#include "setopt/errors.hpp"

namespace setopt {

/// Relative tolerance for cone membership classification.
inline constexpr double kConeTol = 1e-10;

/// Closed, convex, pointed, solid polyhedral ordering cone
///
///   K = { y in R^m : a_i^T y >= 0, i = 1..r }
///
/// given by the rows a_i of `dual_rows`, together with a fixed interior
/// direction e (a_i^T e > 0 for all i). The dual cone is K* = cone{a_1..a_r}.
/// Instances are immutable and safe to share across threads.
class Cone {
public:
    /// Standard ordering cone R_+^m with e = (1,...,1).
    static Cone orthant(Eigen::Index m);

    /// Validates the cone axioms: no zero row, rank(dual_rows) = m
    /// (pointed), a_i^T e > 0 for all i (e interior, K solid).
    /// Throws InvalidCone otherwise.
    static Cone validated(Eigen::MatrixXd dual_rows, Eigen::VectorXd e);

    Eigen::Index dim() const { return rows_.cols(); }
    Eigen::Index row_count() const { return rows_.rows(); }
    const Eigen::MatrixXd& dual_rows() const { return rows_; }
    const Eigen::VectorXd& interior_direction() const { return e_; }

    /// Gerstewitz functional psi_e(y) = min{ t : t e in y + K }.
    /// Closed form for polyhedral K: max_i (a_i^T y) / (a_i^T e).
    double scalarize(const Eigen::VectorXd& y) const;

    /// y in K, up to a relative margin of kConeTol per facet.
    bool contains(const Eigen::VectorXd& y) const;

    /// y in int K: every facet inequality strict beyond the margin.
    bool strictly_contains(const Eigen::VectorXd& y) const;

    /// Partial order induced by K: y <= z iff z - y in K.
    bool leq(const Eigen::VectorXd& y, const Eigen::VectorXd& z) const;

    /// Strict order: y < z iff z - y in int K.
    bool lt(const Eigen::VectorXd& y, const Eigen::VectorXd& z) const;

    /// Lipschitz constant of psi_e: max_i ||a_i|| / (a_i^T e).
    /// Equals 1 for the orthant with e = ones.
    double lipschitz() const;

    /// Presort functional sum_i (a_i^T v)/(a_i^T e); strongly monotone
    /// w.r.t. the order (reduces to sum_i v_i on the orthant).
    double presort_value(const Eigen::VectorXd& v) const;

    /// a_i^T e, cached at construction.
    const Eigen::VectorXd& row_dot_e() const { return row_dot_e_; }

private:
    Cone(Eigen::MatrixXd rows, Eigen::VectorXd e);

    void check_dim(const Eigen::VectorXd& y) const;

    Eigen::MatrixXd rows_;
    Eigen::VectorXd e_;
    Eigen::VectorXd row_dot_e_;
    Eigen::VectorXd row_norms_;
};

}  // namespace setopt
