// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "setopt/harness.hpp"

namespace setopt {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 48.0;

const char* kBlack = "#000000";
const char* kGray = "#b3b3b3";
const char* kRed = "#d40000";

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Bounds {
    double xmin = std::numeric_limits<double>::infinity();
    double xmax = -std::numeric_limits<double>::infinity();
    double ymin = std::numeric_limits<double>::infinity();
    double ymax = -std::numeric_limits<double>::infinity();

    void add(double x, double y) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }

    void pad() {
        const double dx = (xmax > xmin) ? 0.05 * (xmax - xmin) : 1.0;
        const double dy = (ymax > ymin) ? 0.05 * (ymax - ymin) : 1.0;
        xmin -= dx;
        xmax += dx;
        ymin -= dy;
        ymax += dy;
    }
};

// Maps data coordinates into the SVG viewport; SVG y grows downward.
struct Mapper {
    Bounds b;
    double px(double x) const {
        return kMargin + (x - b.xmin) / (b.xmax - b.xmin) * (kWidth - 2 * kMargin);
    }
    double py(double y) const {
        return kHeight - kMargin - (y - b.ymin) / (b.ymax - b.ymin) * (kHeight - 2 * kMargin);
    }
};

class Svg {
public:
    explicit Svg(const std::string& path) : out_(path), path_(path) {
        if (!out_) throw IoError("cannot open '" + path + "'");
        out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth)
             << "\" height=\"" << num(kHeight) << "\" viewBox=\"0 0 " << num(kWidth) << " "
             << num(kHeight) << "\">\n";
        out_ << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    }

    void axes(const Mapper& m) {
        line(kMargin, kHeight - kMargin, kWidth - kMargin, kHeight - kMargin, "#444444", 1.0);
        line(kMargin, kHeight - kMargin, kMargin, kMargin, "#444444", 1.0);
        text(kWidth - kMargin, kHeight - kMargin + 16.0, num(m.b.xmax));
        text(kMargin, kHeight - kMargin + 16.0, num(m.b.xmin));
        text(kMargin - 4.0, kMargin, num(m.b.ymax), true);
        text(kMargin - 4.0, kHeight - kMargin, num(m.b.ymin), true);
    }

    void line(double x1, double y1, double x2, double y2, const char* color, double w) {
        out_ << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2)
             << "\" y2=\"" << num(y2) << "\" stroke=\"" << color << "\" stroke-width=\""
             << num(w) << "\"/>\n";
    }

    void circle(double cx, double cy, double r, const char* color) {
        out_ << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"" << num(r)
             << "\" fill=\"" << color << "\"/>\n";
    }

    void polyline(const std::vector<std::pair<double, double>>& pts, const char* color) {
        out_ << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"0.8\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) out_ << ' ';
            out_ << num(pts[i].first) << ',' << num(pts[i].second);
        }
        out_ << "\"/>\n";
    }

    void text(double x, double y, const std::string& s, bool anchor_end = false) {
        out_ << "<text x=\"" << num(x) << "\" y=\"" << num(y)
             << "\" font-size=\"11\" font-family=\"sans-serif\"";
        if (anchor_end) out_ << " text-anchor=\"end\"";
        out_ << ">" << s << "</text>\n";
    }

    void close() {
        out_ << "</svg>\n";
        if (!out_) throw IoError("failed writing '" + path_ + "'");
        out_.close();
    }

private:
    std::ofstream out_;
    std::string path_;
};

}  // namespace

void export_trajectory_plot(const RunTrace& trace, const Instance& inst,
                            const std::string& path) {
    if (inst.image_dim() != 2)
        throw UnsupportedDimension("trajectory plot requires image dimension 2");
    if (trace.iterations.empty() || trace.iterations.front().image.empty())
        throw DimensionMismatch("trajectory plot requires a trace with recorded image sets");

    Bounds b;
    for (const auto& rec : trace.iterations)
        for (const auto& y : rec.image) b.add(y[0], y[1]);

    // Selection curves over the sampling interval for 1-D arguments.
    std::vector<std::vector<std::pair<double, double>>> curves;
    if (inst.arg_dim() == 1) {
        const double lo = inst.sampling_box()(0, 0);
        const double hi = inst.sampling_box()(0, 1);
        const int samples = 600;
        for (int i = 0; i < inst.selection_count(); ++i) {
            std::vector<std::pair<double, double>> curve;
            curve.reserve(samples + 1);
            for (int s = 0; s <= samples; ++s) {
                Eigen::VectorXd x(1);
                x[0] = lo + (hi - lo) * s / samples;
                const Eigen::VectorXd y = inst.selection(i, x);
                curve.emplace_back(y[0], y[1]);
                b.add(y[0], y[1]);
            }
            curves.push_back(std::move(curve));
        }
    }
    b.pad();
    Mapper m{b};

    Svg svg(path);
    for (auto& curve : curves) {
        for (auto& pt : curve) pt = {m.px(pt.first), m.py(pt.second)};
        svg.polyline(curve, "#dddddd");
    }
    // Intermediate sets first so the endpoints stay visible.
    const std::size_t last = trace.iterations.size() - 1;
    for (std::size_t k = 1; k + 1 <= last && last > 0; ++k) {
        for (const auto& y : trace.iterations[k].image)
            svg.circle(m.px(y[0]), m.py(y[1]), 2.0, kGray);
    }
    for (const auto& y : trace.iterations[0].image)
        svg.circle(m.px(y[0]), m.py(y[1]), 2.6, kBlack);
    if (last > 0) {
        for (const auto& y : trace.iterations[last].image)
            svg.circle(m.px(y[0]), m.py(y[1]), 2.6, kRed);
    }
    svg.axes(m);
    svg.close();
}

void export_solutions_plot(const BatchStats& stats, const Instance& inst,
                           const std::string& path) {
    if (inst.arg_dim() != 2)
        throw UnsupportedDimension("solutions plot requires argument dimension 2");

    Bounds b;
    for (const auto& p : inst.landmark_cloud) b.add(p[0], p[1]);
    for (const auto& p : inst.landmarks) b.add(p[0], p[1]);
    for (const auto& run : stats.per_run)
        if (run.solved()) b.add(run.x_final[0], run.x_final[1]);
    if (!(b.xmin <= b.xmax)) b.add(0.0, 0.0);
    b.pad();
    Mapper m{b};

    Svg svg(path);
    for (const auto& p : inst.landmark_cloud)
        svg.circle(m.px(p[0]), m.py(p[1]), 2.0, kGray);
    for (const auto& run : stats.per_run)
        if (run.solved()) svg.circle(m.px(run.x_final[0]), m.py(run.x_final[1]), 2.6, kRed);
    for (const auto& p : inst.landmarks)
        svg.circle(m.px(p[0]), m.py(p[1]), 3.2, kBlack);
    svg.axes(m);
    svg.close();
}

}  // namespace setopt
