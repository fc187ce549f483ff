// SPDX-License-Identifier: Apache-2.0
#include "setopt/solver.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "setopt/finite_sets.hpp"

namespace setopt {

void SolveParams::validate() const {
    if (!(beta > 0.0 && beta < 1.0)) throw DimensionMismatch("params: beta must be in (0,1)");
    if (!(nu > 0.0 && nu < 1.0)) throw DimensionMismatch("params: nu must be in (0,1)");
    if (max_iters < 1) throw DimensionMismatch("params: max_iters must be >= 1");
    if (max_halvings < 0) throw DimensionMismatch("params: max_halvings must be >= 0");
    if (tol_stat <= 0.0) throw DimensionMismatch("params: tol_stat must be positive");
}

int RunTrace::iteration_count() const {
    int count = 0;
    for (const auto& rec : iterations)
        if (!std::isnan(rec.step)) ++count;
    return count;
}

std::string to_string(TerminationStatus s) {
    switch (s) {
        case TerminationStatus::StrongStationaryDeclared: return "StrongStationaryDeclared";
        case TerminationStatus::MaxIterations: return "MaxIterations";
        case TerminationStatus::LineSearchFailed: return "LineSearchFailed";
        case TerminationStatus::PartitionCapExceeded: return "PartitionCapExceeded";
        case TerminationStatus::SubproblemFailure: return "SubproblemFailure";
    }
    return "Unknown";
}

double armijo(const Instance& inst, const Cone& cone, const Eigen::VectorXd& x,
              const PartitionTuple& a, const Eigen::VectorXd& u, const SolveParams& params) {
    params.validate();
    if (u.norm() == 0.0) throw DimensionMismatch("armijo: zero direction");

    std::vector<Eigen::VectorXd> f0, slope;
    f0.reserve(a.size());
    slope.reserve(a.size());
    for (int sel : a) {
        f0.push_back(inst.selection(sel, x));
        slope.push_back(inst.jacobian(sel, x) * u);
    }

    double t = 1.0;
    for (int q = 0; q <= params.max_halvings; ++q, t *= params.nu) {
        bool ok = true;
        for (std::size_t j = 0; j < a.size() && ok; ++j) {
            const Eigen::VectorXd lhs =
                inst.selection(a[j], x + t * u) - f0[j] - params.beta * t * slope[j];
            if (!cone.contains(-lhs)) ok = false;
        }
        if (ok) return t;
    }
    throw LineSearchError("armijo: no acceptable step after " +
                          std::to_string(params.max_halvings) + " halvings");
}

RunTrace solve(const Instance& inst, const Cone& cone, const Eigen::VectorXd& x0,
               const SolveParams& params) {
    params.validate();
    if (x0.size() != inst.arg_dim())
        throw DimensionMismatch("solve: x0 has wrong dimension");

    using clock = std::chrono::steady_clock;
    RunTrace trace;
    Eigen::VectorXd x = x0;

    for (int k = 0;; ++k) {
        const auto tic = clock::now();
        IterationRecord rec;
        rec.iteration = k;
        rec.x = x;

        MinDecomposition decomp;
        DirectionResult dir;
        try {
            decomp = decompose(inst, cone, x);
            dir = best_direction(inst, cone, x, decomp, params.partition_cap);
        } catch (const CapExceeded& e) {
            trace.status = TerminationStatus::PartitionCapExceeded;
            trace.failure_detail = e.what();
            trace.final_partition_size = e.size;
            break;
        } catch (const SubproblemError& e) {
            trace.status = TerminationStatus::SubproblemFailure;
            trace.failure_detail = e.what();
            break;
        }

        if (params.record_sets) rec.image = decomp.points.points;
        rec.omega = decomp.omega();
        rec.tuple = dir.tuple;
        rec.u = dir.u;
        rec.phi = dir.phi;
        trace.final_error = dir.u.norm();
        trace.final_partition_size = decomp.partition_size();

        if (trace.final_error < params.tol_stat) {
            rec.step = std::numeric_limits<double>::quiet_NaN();
            rec.wall_nanos =
                std::chrono::duration_cast<std::chrono::nanoseconds>(clock::now() - tic).count();
            trace.iterations.push_back(std::move(rec));
            trace.status = TerminationStatus::StrongStationaryDeclared;
            trace.certificate = stationarity_certificate(dir, cone);
            break;
        }
        if (k >= params.max_iters) {
            rec.step = std::numeric_limits<double>::quiet_NaN();
            rec.wall_nanos =
                std::chrono::duration_cast<std::chrono::nanoseconds>(clock::now() - tic).count();
            trace.iterations.push_back(std::move(rec));
            trace.status = TerminationStatus::MaxIterations;
            break;
        }

        double t;
        try {
            t = armijo(inst, cone, x, dir.tuple, dir.u, params);
        } catch (const LineSearchError& e) {
            rec.step = std::numeric_limits<double>::quiet_NaN();
            rec.wall_nanos =
                std::chrono::duration_cast<std::chrono::nanoseconds>(clock::now() - tic).count();
            trace.iterations.push_back(std::move(rec));
            trace.status = TerminationStatus::LineSearchFailed;
            trace.failure_detail = e.what();
            break;
        }
        rec.step = t;
        x = x + t * dir.u;
        rec.wall_nanos =
            std::chrono::duration_cast<std::chrono::nanoseconds>(clock::now() - tic).count();
        trace.iterations.push_back(std::move(rec));
    }

    trace.final_x = trace.iterations.empty() ? x0 : x;
    return trace;
}

bool descent_inequality_check(const RunTrace& trace, const Cone& cone, double beta) {
    if (trace.iterations.size() < 2) return true;
    auto zeta = [&](const std::vector<Eigen::VectorXd>& image) {
        double z = std::numeric_limits<double>::infinity();
        for (const auto& y : image) z = std::min(z, cone.scalarize(y));
        return z;
    };
    for (std::size_t k = 0; k + 1 < trace.iterations.size(); ++k) {
        const auto& cur = trace.iterations[k];
        const auto& nxt = trace.iterations[k + 1];
        if (cur.image.empty() || nxt.image.empty())
            throw DimensionMismatch("descent_inequality_check: trace lacks image sets");
        if (std::isnan(cur.step)) continue;
        const double lhs = zeta(nxt.image);
        const double rhs = zeta(cur.image) +
                           beta * cur.step * (cur.phi - 0.5 * cur.u.squaredNorm());
        if (lhs > rhs + 1e-8) return false;
    }
    return true;
}

namespace {

nlohmann::json vec_json(const Eigen::VectorXd& v) {
    nlohmann::json a = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

}  // namespace

void write_trace_jsonl(const RunTrace& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open trace file '" + path + "'");
    for (const auto& rec : trace.iterations) {
        nlohmann::json j{
            {"iteration", rec.iteration},
            {"x", vec_json(rec.x)},
            {"u", vec_json(rec.u)},
            {"phi", rec.phi},
            {"omega", rec.omega},
            {"tuple", rec.tuple},
            {"wall_nanos", rec.wall_nanos},
        };
        if (std::isnan(rec.step))
            j["t"] = nullptr;
        else
            j["t"] = rec.step;
        out << j.dump() << "\n";
    }
    nlohmann::json terminal{
        {"status", to_string(trace.status)},
        {"final_error", trace.final_error},
        {"partition_size", trace.final_partition_size},
        {"iterations", trace.iteration_count()},
        {"x_final", vec_json(trace.final_x)},
    };
    if (!trace.certificate.empty()) {
        nlohmann::json mults = nlohmann::json::array();
        for (const auto& m : trace.certificate) mults.push_back(vec_json(m));
        terminal["certificate"] = {{"multipliers", mults}};
    }
    if (!trace.failure_detail.empty()) terminal["detail"] = trace.failure_detail;
    out << terminal.dump() << "\n";
    if (!out) throw IoError("failed writing trace file '" + path + "'");
}

}  // namespace setopt
