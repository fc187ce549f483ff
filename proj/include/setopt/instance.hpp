// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "setopt/cone.hpp"
#include "setopt/finite_sets.hpp"

namespace setopt {

/// Problem data: p continuously differentiable selections f^i : R^n -> R^m
/// with analytic Jacobians, plus a default sampling box for initial points.
/// Evaluators must be pure; instances are immutable and shareable.
class Instance {
public:
    using Evaluator = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
    using JacobianFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

    Instance(std::string name, Eigen::Index n, Eigen::Index m,
             std::vector<Evaluator> selections, std::vector<JacobianFn> jacobians,
             Eigen::MatrixXd sampling_box);

    const std::string& name() const { return name_; }
    Eigen::Index arg_dim() const { return n_; }
    Eigen::Index image_dim() const { return m_; }
    int selection_count() const { return static_cast<int>(selections_.size()); }

    /// Rows are per-coordinate [lo, hi] intervals (n x 2).
    const Eigen::MatrixXd& sampling_box() const { return box_; }

    /// f^i(x); selection indices are 0-based.
    Eigen::VectorXd selection(int i, const Eigen::VectorXd& x) const;

    /// Analytic Jacobian of f^i at x, as an m x n matrix (row j is the
    /// gradient of component j).
    Eigen::MatrixXd jacobian(int i, const Eigen::VectorXd& x) const;

    /// The image F(x) = {f^0(x), ..., f^{p-1}(x)} in selection order.
    FiniteVectorSet evaluate(const Eigen::VectorXd& x) const;

    /// Optional argument-space landmark points for plots (solid markers).
    std::vector<Eigen::VectorXd> landmarks;
    /// Optional argument-space reference cloud for plots (light markers).
    std::vector<Eigen::VectorXd> landmark_cloud;
    /// Cone carried by an instance file, if any.
    std::optional<Cone> cone_override;

private:
    void check_arg(const Eigen::VectorXd& x) const;

    std::string name_;
    Eigen::Index n_, m_;
    std::vector<Evaluator> selections_;
    std::vector<JacobianFn> jacobians_;
    Eigen::MatrixXd box_;
};

/// Max relative deviation between the analytic Jacobians and central
/// differences with step h, over all selections and entries. Denominator
/// max(1, |entry|).
double fd_check(const Instance& inst, const Eigen::VectorXd& x, double h);

/// Built-in test problems "test1", "test2", "test3", plus anything added
/// through register_instance. Throws EvaluationError for unknown names.
Instance builtin_instance(const std::string& name);

/// Registers a named instance factory (user extension point).
void register_instance(const std::string& name, std::function<Instance()> factory);

/// Names currently resolvable by builtin_instance.
std::vector<std::string> registered_instance_names();

/// Loads an instance from a JSON file: either {"builtin": "<name>"} or the
/// quadratic-family descriptor documented in the README.
Instance load_instance_file(const std::string& path);

/// Parses the JSON descriptor from a string (used by load_instance_file).
Instance parse_instance_json(const std::string& text);

}  // namespace setopt
