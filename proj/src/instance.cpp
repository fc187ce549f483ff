// SPDX-License-Identifier: Apache-2.0
#include "setopt/instance.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include <json.hpp>

namespace setopt {

Instance::Instance(std::string name, Eigen::Index n, Eigen::Index m,
                   std::vector<Evaluator> selections, std::vector<JacobianFn> jacobians,
                   Eigen::MatrixXd sampling_box)
    : name_(std::move(name)), n_(n), m_(m),
      selections_(std::move(selections)), jacobians_(std::move(jacobians)),
      box_(std::move(sampling_box)) {
    if (n_ < 1 || m_ < 1) throw DimensionMismatch("instance: n and m must be >= 1");
    if (selections_.empty()) throw DimensionMismatch("instance: needs p >= 1 selections");
    if (jacobians_.size() != selections_.size())
        throw DimensionMismatch("instance: selection/jacobian count mismatch");
    if (box_.rows() != n_ || box_.cols() != 2)
        throw DimensionMismatch("instance: sampling box must be n x 2");
}

void Instance::check_arg(const Eigen::VectorXd& x) const {
    if (x.size() != n_)
        throw DimensionMismatch("instance '" + name_ + "': argument has dimension " +
                                std::to_string(x.size()) + ", expected " + std::to_string(n_));
}

Eigen::VectorXd Instance::selection(int i, const Eigen::VectorXd& x) const {
    check_arg(x);
    if (i < 0 || i >= selection_count())
        throw DimensionMismatch("instance: selection index out of range");
    Eigen::VectorXd v = selections_[static_cast<std::size_t>(i)](x);
    if (v.size() != m_)
        throw EvaluationError(i, "instance '" + name_ + "': selection " + std::to_string(i) +
                              " returned wrong dimension");
    if (!v.allFinite())
        throw EvaluationError(i, "instance '" + name_ + "': selection " + std::to_string(i) +
                              " returned a non-finite value");
    return v;
}

Eigen::MatrixXd Instance::jacobian(int i, const Eigen::VectorXd& x) const {
    check_arg(x);
    if (i < 0 || i >= selection_count())
        throw DimensionMismatch("instance: selection index out of range");
    Eigen::MatrixXd j = jacobians_[static_cast<std::size_t>(i)](x);
    if (j.rows() != m_ || j.cols() != n_)
        throw EvaluationError(i, "instance '" + name_ + "': jacobian " + std::to_string(i) +
                              " has wrong shape");
    if (!j.allFinite())
        throw EvaluationError(i, "instance '" + name_ + "': jacobian " + std::to_string(i) +
                              " returned a non-finite value");
    return j;
}

FiniteVectorSet Instance::evaluate(const Eigen::VectorXd& x) const {
    check_arg(x);
    std::vector<Eigen::VectorXd> pts;
    pts.reserve(selections_.size());
    for (int i = 0; i < selection_count(); ++i) pts.push_back(selection(i, x));
    return FiniteVectorSet(std::move(pts));
}

double fd_check(const Instance& inst, const Eigen::VectorXd& x, double h) {
    if (h <= 0.0) throw DimensionMismatch("fd_check: h must be positive");
    const Eigen::Index n = inst.arg_dim();
    double worst = 0.0;
    for (int i = 0; i < inst.selection_count(); ++i) {
        const Eigen::MatrixXd analytic = inst.jacobian(i, x);
        for (Eigen::Index k = 0; k < n; ++k) {
            Eigen::VectorXd xp = x, xm = x;
            xp[k] += h;
            xm[k] -= h;
            const Eigen::VectorXd col = (inst.selection(i, xp) - inst.selection(i, xm)) / (2.0 * h);
            for (Eigen::Index r = 0; r < inst.image_dim(); ++r) {
                const double a = analytic(r, k);
                const double err = std::abs(col[r] - a) / std::max(1.0, std::abs(a));
                worst = std::max(worst, err);
            }
        }
    }
    return worst;
}

namespace {

Eigen::MatrixXd square_box(Eigen::Index n, double lo, double hi) {
    Eigen::MatrixXd box(n, 2);
    for (Eigen::Index i = 0; i < n; ++i) {
        box(i, 0) = lo;
        box(i, 1) = hi;
    }
    return box;
}

constexpr double kPi = 3.14159265358979323846;

// Five selections tracing the curve (x, x/2 sin x) with a segment offset
// sin^2(x) * c_i * (1, -1), c_i = (i-1)/2 - 1 in {-1,-1/2,0,1/2,1} (1-based i).
Instance make_test1() {
    std::vector<Instance::Evaluator> fs;
    std::vector<Instance::JacobianFn> js;
    for (int i = 0; i < 5; ++i) {
        const double c = 2.0 * (static_cast<double>(i) / 4.0) - 1.0;
        fs.push_back([c](const Eigen::VectorXd& x) {
            const double t = x[0];
            const double s2 = std::sin(t) * std::sin(t);
            Eigen::VectorXd v(2);
            v[0] = t + s2 * c;
            v[1] = 0.5 * t * std::sin(t) - s2 * c;
            return v;
        });
        js.push_back([c](const Eigen::VectorXd& x) {
            const double t = x[0];
            const double ds2 = std::sin(2.0 * t);  // d/dt sin^2 t
            Eigen::MatrixXd j(2, 1);
            j(0, 0) = 1.0 + ds2 * c;
            j(1, 0) = 0.5 * (std::sin(t) + t * std::cos(t)) - ds2 * c;
            return j;
        });
    }
    return Instance("test1", 1, 2, std::move(fs), std::move(js),
                    square_box(1, -5.0 * kPi, 5.0 * kPi));
}

// Robust location problem: three facilities, a 10x10 offset grid on
// [-1,1]^2, f^i(x) = 1/2 (|x-l1-u_i|^2, |x-l2-u_i|^2, |x-l3-u_i|^2).
// Every component has identity Hessian, so the selections are convex and
// first-order stationarity is also sufficient for this instance.
Instance make_test2() {
    std::vector<Eigen::VectorXd> locations;
    for (auto [a, b] : {std::pair{0.0, 0.0}, {8.0, 0.0}, {0.0, 8.0}}) {
        Eigen::VectorXd l(2);
        l << a, b;
        locations.push_back(l);
    }
    // Exact 10-point linspace on [-1,1]; row-major product enumeration.
    std::vector<Eigen::VectorXd> offsets;
    for (int a = 0; a < 10; ++a) {
        for (int b = 0; b < 10; ++b) {
            Eigen::VectorXd u(2);
            u << -1.0 + 2.0 * a / 9.0, -1.0 + 2.0 * b / 9.0;
            offsets.push_back(u);
        }
    }
    std::vector<Instance::Evaluator> fs;
    std::vector<Instance::JacobianFn> js;
    for (const auto& u : offsets) {
        fs.push_back([u, locations](const Eigen::VectorXd& x) {
            Eigen::VectorXd v(3);
            for (int k = 0; k < 3; ++k) v[k] = 0.5 * (x - locations[static_cast<std::size_t>(k)] - u).squaredNorm();
            return v;
        });
        js.push_back([u, locations](const Eigen::VectorXd& x) {
            Eigen::MatrixXd j(3, 2);
            for (int k = 0; k < 3; ++k) j.row(k) = (x - locations[static_cast<std::size_t>(k)] - u).transpose();
            return j;
        });
    }
    Instance inst("test2", 2, 3, std::move(fs), std::move(js), square_box(2, -50.0, 50.0));
    inst.landmarks = locations;
    for (const auto& l : locations)
        for (const auto& u : offsets) inst.landmark_cloud.push_back(l + u);
    return inst;
}

// 100 deformed-rhombus selections; the exponent denominators (2 and 20)
// differ between the two components by construction.
Instance make_test3() {
    std::vector<Instance::Evaluator> fs;
    std::vector<Instance::JacobianFn> js;
    for (int i = 0; i < 100; ++i) {
        const double theta = 2.0 * kPi * static_cast<double>(i) / 100.0;
        const double c3 = std::pow(std::cos(theta), 3);
        const double s3 = std::pow(std::sin(theta), 3);
        fs.push_back([c3, s3](const Eigen::VectorXd& x) {
            const double x1 = x[0], x2 = x[1];
            Eigen::VectorXd v(2);
            v[0] = std::exp(0.5 * x1) * std::cos(x2) + x1 * std::cos(x2) * c3 -
                   x2 * std::sin(x2) * s3;
            v[1] = std::exp(x2 / 20.0) * std::sin(x1) + x1 * std::sin(x2) * c3 +
                   x2 * std::cos(x2) * s3;
            return v;
        });
        js.push_back([c3, s3](const Eigen::VectorXd& x) {
            const double x1 = x[0], x2 = x[1];
            Eigen::MatrixXd j(2, 2);
            j(0, 0) = 0.5 * std::exp(0.5 * x1) * std::cos(x2) + std::cos(x2) * c3;
            j(0, 1) = -std::exp(0.5 * x1) * std::sin(x2) - x1 * std::sin(x2) * c3 -
                      (std::sin(x2) + x2 * std::cos(x2)) * s3;
            j(1, 0) = std::exp(x2 / 20.0) * std::cos(x1) + std::sin(x2) * c3;
            j(1, 1) = std::exp(x2 / 20.0) * std::sin(x1) / 20.0 + x1 * std::cos(x2) * c3 +
                      (std::cos(x2) - x2 * std::sin(x2)) * s3;
            return j;
        });
    }
    return Instance("test3", 2, 2, std::move(fs), std::move(js),
                    square_box(2, -10.0 * kPi, 10.0 * kPi));
}

std::map<std::string, std::function<Instance()>>& registry() {
    static std::map<std::string, std::function<Instance()>> reg = {
        {"test1", make_test1},
        {"test2", make_test2},
        {"test3", make_test3},
    };
    return reg;
}

std::mutex& registry_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

Instance builtin_instance(const std::string& name) {
    std::lock_guard<std::mutex> lock(registry_mutex());
    auto it = registry().find(name);
    if (it == registry().end())
        throw EvaluationError(-1, "unknown instance '" + name + "'");
    return it->second();
}

void register_instance(const std::string& name, std::function<Instance()> factory) {
    std::lock_guard<std::mutex> lock(registry_mutex());
    registry()[name] = std::move(factory);
}

std::vector<std::string> registered_instance_names() {
    std::lock_guard<std::mutex> lock(registry_mutex());
    std::vector<std::string> names;
    for (const auto& [k, v] : registry()) names.push_back(k);
    return names;
}

namespace {

Eigen::VectorXd vector_from_json(const nlohmann::json& j) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    Eigen::Index i = 0;
    for (const auto& x : j) v[i++] = x.get<double>();
    return v;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j) {
    const auto rows = static_cast<Eigen::Index>(j.size());
    if (rows == 0) throw IoError("instance json: empty matrix");
    const auto cols = static_cast<Eigen::Index>(j.front().size());
    Eigen::MatrixXd m(rows, cols);
    Eigen::Index r = 0;
    for (const auto& row : j) {
        if (static_cast<Eigen::Index>(row.size()) != cols)
            throw IoError("instance json: ragged matrix");
        Eigen::Index c = 0;
        for (const auto& x : row) m(r, c++) = x.get<double>();
        ++r;
    }
    return m;
}

}  // namespace

Instance parse_instance_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError(std::string("instance json: ") + e.what());
    }

    if (j.contains("builtin")) return builtin_instance(j["builtin"].get<std::string>());

    // Quadratic family: f^i_k(x) = 1/2 || x - locations[k] - offsets[i] ||^2.
    if (!j.contains("quadratic"))
        throw IoError("instance json: expected \"builtin\" or \"quadratic\"");
    const auto& q = j["quadratic"];
    std::vector<Eigen::VectorXd> locations;
    for (const auto& row : q.at("locations")) locations.push_back(vector_from_json(row));
    std::vector<Eigen::VectorXd> offsets;
    for (const auto& row : q.at("offsets")) offsets.push_back(vector_from_json(row));
    if (locations.empty() || offsets.empty())
        throw IoError("instance json: quadratic family needs locations and offsets");
    const Eigen::Index n = locations.front().size();
    const auto m = static_cast<Eigen::Index>(locations.size());
    for (const auto& l : locations)
        if (l.size() != n) throw IoError("instance json: mixed location dimensions");
    for (const auto& u : offsets)
        if (u.size() != n) throw IoError("instance json: offset dimension != location dimension");

    std::vector<Instance::Evaluator> fs;
    std::vector<Instance::JacobianFn> js;
    for (const auto& u : offsets) {
        fs.push_back([u, locations, m](const Eigen::VectorXd& x) {
            Eigen::VectorXd v(m);
            for (Eigen::Index k = 0; k < m; ++k)
                v[k] = 0.5 * (x - locations[static_cast<std::size_t>(k)] - u).squaredNorm();
            return v;
        });
        js.push_back([u, locations, m, n](const Eigen::VectorXd& x) {
            Eigen::MatrixXd jm(m, n);
            for (Eigen::Index k = 0; k < m; ++k)
                jm.row(k) = (x - locations[static_cast<std::size_t>(k)] - u).transpose();
            return jm;
        });
    }

    Eigen::MatrixXd box;
    if (j.contains("sampling_box")) {
        box = matrix_from_json(j["sampling_box"]);
        if (box.rows() != n || box.cols() != 2)
            throw IoError("instance json: sampling_box must be n x 2");
    } else {
        box = Eigen::MatrixXd(n, 2);
        box.col(0).setConstant(-50.0);
        box.col(1).setConstant(50.0);
    }

    const std::string name = j.value("name", std::string("quadratic"));
    Instance inst(name, n, m, std::move(fs), std::move(js), std::move(box));
    inst.landmarks = locations;
    for (const auto& l : locations)
        for (const auto& u : offsets) inst.landmark_cloud.push_back(l + u);

    if (j.contains("cone")) {
        const auto& c = j["cone"];
        inst.cone_override = Cone::validated(matrix_from_json(c.at("dual_rows")),
                                             vector_from_json(c.at("e")));
        if (inst.cone_override->dim() != m)
            throw IoError("instance json: cone dimension != m");
    }
    return inst;
}

Instance load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open instance file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_instance_json(ss.str());
}

}  // namespace setopt
