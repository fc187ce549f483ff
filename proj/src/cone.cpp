// SPDX-License-Identifier: Apache-2.0
#include "setopt/cone.hpp"

#include <Eigen/Dense>
#include <string>

namespace setopt {

Cone::Cone(Eigen::MatrixXd rows, Eigen::VectorXd e)
    : rows_(std::move(rows)), e_(std::move(e)) {
    row_dot_e_ = rows_ * e_;
    row_norms_ = rows_.rowwise().norm();
}

Cone Cone::orthant(Eigen::Index m) {
    if (m < 1) throw DimensionMismatch("orthant: dimension must be >= 1");
    return Cone(Eigen::MatrixXd::Identity(m, m), Eigen::VectorXd::Ones(m));
}

Cone Cone::validated(Eigen::MatrixXd dual_rows, Eigen::VectorXd e) {
    const Eigen::Index r = dual_rows.rows();
    const Eigen::Index m = dual_rows.cols();
    if (r < 1 || m < 1)
        throw DimensionMismatch("cone: need at least one row and one column");
    if (e.size() != m)
        throw DimensionMismatch("cone: e has dimension " + std::to_string(e.size()) +
                                ", rows have dimension " + std::to_string(m));
    for (Eigen::Index i = 0; i < r; ++i) {
        if (dual_rows.row(i).norm() == 0.0)
            throw InvalidCone(ConeDefect::ZeroRow,
                              "cone: row " + std::to_string(i) + " is zero");
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(dual_rows);
    if (lu.rank() < m)
        throw InvalidCone(ConeDefect::NotPointed,
                          "cone: dual rows have rank " + std::to_string(lu.rank()) +
                          " < " + std::to_string(m) + "; K is not pointed");
    const Eigen::VectorXd dots = dual_rows * e;
    for (Eigen::Index i = 0; i < r; ++i) {
        if (dots[i] <= 0.0)
            throw InvalidCone(ConeDefect::NotSolid,
                              "cone: a_" + std::to_string(i) + "^T e = " +
                              std::to_string(dots[i]) + " <= 0; e is not interior");
    }
    return Cone(std::move(dual_rows), std::move(e));
}

void Cone::check_dim(const Eigen::VectorXd& y) const {
    if (y.size() != dim())
        throw DimensionMismatch("cone: vector has dimension " + std::to_string(y.size()) +
                                ", expected " + std::to_string(dim()));
}

double Cone::scalarize(const Eigen::VectorXd& y) const {
    check_dim(y);
    // t e - y in K  <=>  t a_i^T e >= a_i^T y for all i.
    return ((rows_ * y).array() / row_dot_e_.array()).maxCoeff();
}

bool Cone::contains(const Eigen::VectorXd& y) const {
    check_dim(y);
    const double yn = y.norm();
    const Eigen::VectorXd dots = rows_ * y;
    for (Eigen::Index i = 0; i < rows_.rows(); ++i) {
        if (dots[i] < -kConeTol * row_norms_[i] * yn) return false;
    }
    return true;
}

bool Cone::strictly_contains(const Eigen::VectorXd& y) const {
    check_dim(y);
    const double yn = y.norm();
    const Eigen::VectorXd dots = rows_ * y;
    for (Eigen::Index i = 0; i < rows_.rows(); ++i) {
        if (dots[i] <= kConeTol * row_norms_[i] * yn) return false;
    }
    return true;
}

bool Cone::leq(const Eigen::VectorXd& y, const Eigen::VectorXd& z) const {
    return contains(z - y);
}

bool Cone::lt(const Eigen::VectorXd& y, const Eigen::VectorXd& z) const {
    return strictly_contains(z - y);
}

double Cone::lipschitz() const {
    return (row_norms_.array() / row_dot_e_.array()).maxCoeff();
}

double Cone::presort_value(const Eigen::VectorXd& v) const {
    check_dim(v);
    return ((rows_ * v).array() / row_dot_e_.array()).sum();
}

}  // namespace setopt
