// SPDX-License-Identifier: Apache-2.0
#include "setopt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "setopt/direction.hpp"
#include "setopt/rng.hpp"

namespace setopt {

Eigen::VectorXd sample_x0(const Instance& inst, std::uint64_t seed, int run_index) {
    CounterRng rng(seed, static_cast<std::uint64_t>(run_index));
    const auto& box = inst.sampling_box();
    Eigen::VectorXd x(inst.arg_dim());
    for (Eigen::Index d = 0; d < inst.arg_dim(); ++d)
        x[d] = rng.uniform(box(d, 0), box(d, 1));
    return x;
}

namespace {

int resolve_threads(int requested, int runs) {
    int cap = requested;
    if (const char* env = std::getenv("SETOPT_THREADS")) {
        const int env_cap = std::atoi(env);
        if (env_cap > 0) cap = (cap > 0) ? std::min(cap, env_cap) : env_cap;
    }
    if (cap <= 0) cap = static_cast<int>(std::thread::hardware_concurrency());
    if (cap <= 0) cap = 1;
    return std::min(cap, runs);
}

}  // namespace

BatchResult run_batch(const Instance& inst, const Cone& cone, int runs, std::uint64_t seed,
                      const SolveParams& params, int threads, bool keep_traces) {
    if (runs < 1) throw DimensionMismatch("run_batch: runs must be >= 1");
    params.validate();

    BatchResult result;
    result.stats.runs = runs;
    result.stats.per_run.resize(static_cast<std::size_t>(runs));
    if (keep_traces) result.traces.resize(static_cast<std::size_t>(runs));

    std::atomic<int> cursor{0};
    auto worker = [&]() {
        for (;;) {
            const int r = cursor.fetch_add(1);
            if (r >= runs) return;
            RunSummary& summary = result.stats.per_run[static_cast<std::size_t>(r)];
            summary.run_index = r;
            summary.x0 = sample_x0(inst, seed, r);
            const auto tic = std::chrono::steady_clock::now();
            RunTrace trace = solve(inst, cone, summary.x0, params);
            summary.wall_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - tic).count();
            summary.status = trace.status;
            summary.iterations = trace.iteration_count();
            summary.final_error = trace.final_error;
            summary.x_final = trace.final_x;
            if (keep_traces) result.traces[static_cast<std::size_t>(r)] = std::move(trace);
        }
    };

    const int pool = resolve_threads(threads, runs);
    if (pool <= 1) {
        worker();
    } else {
        std::vector<std::thread> team;
        team.reserve(static_cast<std::size_t>(pool));
        for (int i = 0; i < pool; ++i) team.emplace_back(worker);
        for (auto& t : team) t.join();
    }

    BatchStats& s = result.stats;
    s.iter_min = std::numeric_limits<int>::max();
    double iter_sum = 0.0, time_sum = 0.0;
    for (const auto& run : s.per_run) {
        if (!run.solved()) continue;
        ++s.solved;
        s.iter_min = std::min(s.iter_min, run.iterations);
        s.iter_max = std::max(s.iter_max, run.iterations);
        iter_sum += run.iterations;
        time_sum += run.wall_seconds;
    }
    if (s.solved > 0) {
        s.iter_mean = iter_sum / s.solved;
        s.mean_wall_seconds = time_sum / s.solved;
    } else {
        s.iter_min = 0;
    }
    return result;
}

namespace {

// Full round-trip precision, locale-independent.
std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_display(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

std::string csv_vector(const Eigen::VectorXd& v) {
    std::string out;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) out += ';';
        out += fmt_full(v[i]);
    }
    return out;
}

Eigen::VectorXd parse_semicolon_vector(const std::string& field) {
    std::vector<double> vals;
    std::stringstream ss(field);
    std::string tok;
    while (std::getline(ss, tok, ';'))
        if (!tok.empty()) vals.push_back(std::stod(tok));
    Eigen::VectorXd v(static_cast<Eigen::Index>(vals.size()));
    for (std::size_t i = 0; i < vals.size(); ++i) v[static_cast<Eigen::Index>(i)] = vals[i];
    return v;
}

TerminationStatus status_from_string(const std::string& s) {
    if (s == "StrongStationaryDeclared") return TerminationStatus::StrongStationaryDeclared;
    if (s == "MaxIterations") return TerminationStatus::MaxIterations;
    if (s == "LineSearchFailed") return TerminationStatus::LineSearchFailed;
    if (s == "PartitionCapExceeded") return TerminationStatus::PartitionCapExceeded;
    if (s == "SubproblemFailure") return TerminationStatus::SubproblemFailure;
    throw IoError("unknown status '" + s + "'");
}

}  // namespace

void export_stats_csv(const BatchStats& stats, const std::string& path, bool include_timing) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "'");
    out << "kind,runs,solved,iter_min,iter_mean,iter_max,iter_mean_display";
    if (include_timing) out << ",mean_wall_seconds";
    out << "\n";
    out << "summary," << stats.runs << ',' << stats.solved << ',';
    if (stats.solved > 0)
        out << stats.iter_min << ',' << fmt_full(stats.iter_mean) << ',' << stats.iter_max
            << ',' << fmt_display(stats.iter_mean);
    else
        out << ",,,";
    if (include_timing) out << ',' << fmt_full(stats.mean_wall_seconds);
    out << "\n";

    out << "kind,run,status,iterations,final_error,final_error_display,x0,x_final";
    if (include_timing) out << ",wall_seconds";
    out << "\n";
    for (const auto& run : stats.per_run) {
        out << "run," << run.run_index << ',' << to_string(run.status) << ','
            << run.iterations << ',' << fmt_full(run.final_error) << ','
            << fmt_display(run.final_error) << ',' << csv_vector(run.x0) << ','
            << csv_vector(run.x_final);
        if (include_timing) out << ',' << fmt_full(run.wall_seconds);
        out << "\n";
    }
    if (!out) throw IoError("failed writing '" + path + "'");
}

BatchStats import_stats_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    BatchStats stats;
    std::string line;
    bool timing = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) fields.push_back(tok);
        if (fields.empty()) continue;
        if (fields[0] == "kind") {
            timing = line.find("wall") != std::string::npos;
            continue;
        }
        if (fields[0] == "summary") {
            stats.runs = std::stoi(fields.at(1));
            stats.solved = std::stoi(fields.at(2));
            if (stats.solved > 0) {
                stats.iter_min = std::stoi(fields.at(3));
                stats.iter_mean = std::stod(fields.at(4));
                stats.iter_max = std::stoi(fields.at(5));
            }
            if (timing && fields.size() > 7) stats.mean_wall_seconds = std::stod(fields.at(7));
        } else if (fields[0] == "run") {
            RunSummary run;
            run.run_index = std::stoi(fields.at(1));
            run.status = status_from_string(fields.at(2));
            run.iterations = std::stoi(fields.at(3));
            run.final_error = std::stod(fields.at(4));
            run.x0 = parse_semicolon_vector(fields.at(6));
            run.x_final = parse_semicolon_vector(fields.at(7));
            if (timing && fields.size() > 8) run.wall_seconds = std::stod(fields.at(8));
            stats.per_run.push_back(std::move(run));
        }
    }
    return stats;
}

void export_stats_json(const BatchStats& stats, const std::string& path, bool include_timing) {
    nlohmann::json j{
        {"runs", stats.runs},
        {"solved", stats.solved},
    };
    if (stats.solved > 0) {
        j["iterations"] = {{"min", stats.iter_min},
                           {"mean", stats.iter_mean},
                           {"max", stats.iter_max}};
    }
    if (include_timing) j["mean_wall_seconds"] = stats.mean_wall_seconds;
    nlohmann::json runs = nlohmann::json::array();
    for (const auto& run : stats.per_run) {
        nlohmann::json r{
            {"run", run.run_index},
            {"status", to_string(run.status)},
            {"iterations", run.iterations},
            {"final_error", run.final_error},
        };
        nlohmann::json x0 = nlohmann::json::array(), xf = nlohmann::json::array();
        for (Eigen::Index i = 0; i < run.x0.size(); ++i) x0.push_back(run.x0[i]);
        for (Eigen::Index i = 0; i < run.x_final.size(); ++i) xf.push_back(run.x_final[i]);
        r["x0"] = x0;
        r["x_final"] = xf;
        if (include_timing) r["wall_seconds"] = run.wall_seconds;
        runs.push_back(std::move(r));
    }
    j["per_run"] = std::move(runs);
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "'");
    out << j.dump(2) << "\n";
    if (!out) throw IoError("failed writing '" + path + "'");
}

double hull_distance(const std::vector<Eigen::VectorXd>& points, const Eigen::VectorXd& x) {
    std::vector<Eigen::VectorXd> shifted;
    shifted.reserve(points.size());
    for (const auto& p : points) shifted.push_back(p - x);
    return min_norm_point(shifted).point.norm();
}

}  // namespace setopt
