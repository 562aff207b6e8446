#pragma once

#include <array>
#include <cstdio>
#include <sstream>

#include "spshadow/polynomial.hpp"

namespace spshadow {

/// Static 2D scene: a window, implicit curves traced on a sign grid, shadow
/// boundary polylines, and labeled points.
struct SvgScene {
    double xmin = -2, xmax = 2, ymin = -2, ymax = 2;
    int grid = 256;

    struct Curve {
        Polynomial poly;  // in a 2-variable ring
        std::string label;
    };
    std::vector<Curve> curves;
    std::vector<std::vector<std::array<double, 2>>> regions;  // closed polylines
    struct Point {
        double x = 0, y = 0;
        std::string label;
    };
    std::vector<Point> points;
};

namespace detail {

inline std::string fmt3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    // normalize negative zero for byte-stable output
    if (std::string(buf) == "-0.000") return "0.000";
    return buf;
}

}  // namespace detail

/// Deterministic SVG: a frame, one path layer per implicit curve (marching
/// squares on the sign grid of evaluate_float), region polylines, labels.
inline std::string render_curves(const SvgScene& scene) {
    if (!(scene.xmin < scene.xmax) || !(scene.ymin < scene.ymax))
        throw std::invalid_argument("render_curves: empty window");
    if (!std::isfinite(scene.xmin) || !std::isfinite(scene.xmax) || !std::isfinite(scene.ymin) ||
        !std::isfinite(scene.ymax))
        throw std::invalid_argument("render_curves: non-finite window");
    if (scene.grid < 16) throw std::invalid_argument("render_curves: grid must be >= 16");

    const double W = 640, H = 640;
    auto px = [&](double x) { return (x - scene.xmin) / (scene.xmax - scene.xmin) * W; };
    auto py = [&](double y) { return H - (y - scene.ymin) / (scene.ymax - scene.ymin) * H; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H
        << "\" fill=\"white\" stroke=\"black\"/>\n";

    for (const auto& region : scene.regions) {
        if (region.empty()) continue;
        svg << "<polygon fill=\"#9ecae1\" fill-opacity=\"0.55\" stroke=\"#3182bd\" "
               "stroke-width=\"1.5\" points=\"";
        for (const auto& pt : region)
            svg << detail::fmt3(px(pt[0])) << "," << detail::fmt3(py(pt[1])) << " ";
        svg << "\"/>\n";
    }

    static const char* kCurveColors[] = {"#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    int color_index = 0;
    for (const auto& curve : scene.curves) {
        if (curve.poly.nvars() != 2)
            throw std::invalid_argument("render_curves: curve polynomials must have 2 variables");
        const int g = scene.grid;
        std::vector<double> values(static_cast<std::size_t>(g + 1) * (g + 1));
        std::vector<double> xs(static_cast<std::size_t>(g + 1)), ys(static_cast<std::size_t>(g + 1));
        for (int i = 0; i <= g; ++i) {
            xs[static_cast<std::size_t>(i)] = scene.xmin + (scene.xmax - scene.xmin) * i / g;
            ys[static_cast<std::size_t>(i)] = scene.ymin + (scene.ymax - scene.ymin) * i / g;
        }
        for (int i = 0; i <= g; ++i)
            for (int j = 0; j <= g; ++j)
                values[static_cast<std::size_t>(i) * (g + 1) + j] =
                    curve.poly.evaluate_float({xs[static_cast<std::size_t>(i)], ys[static_cast<std::size_t>(j)]});

        svg << "<path fill=\"none\" stroke=\"" << kCurveColors[color_index % 5]
            << "\" stroke-width=\"1.2\" d=\"";
        auto val = [&](int i, int j) { return values[static_cast<std::size_t>(i) * (g + 1) + j]; };
        auto cross = [](double a, double b) { return a == 0 ? 0.0 : a / (a - b); };
        // marching squares: emit one segment per sign-crossing cell edge pair
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < g; ++j) {
                double v00 = val(i, j), v10 = val(i + 1, j), v01 = val(i, j + 1),
                       v11 = val(i + 1, j + 1);
                std::vector<std::array<double, 2>> hits;
                auto edge = [&](double a, double b, double ax, double ay, double bx, double by) {
                    if ((a > 0) == (b > 0)) return;
                    double s = cross(a, b);
                    hits.push_back({ax + s * (bx - ax), ay + s * (by - ay)});
                };
                double x0 = xs[static_cast<std::size_t>(i)], x1 = xs[static_cast<std::size_t>(i + 1)];
                double y0 = ys[static_cast<std::size_t>(j)], y1 = ys[static_cast<std::size_t>(j + 1)];
                edge(v00, v10, x0, y0, x1, y0);
                edge(v10, v11, x1, y0, x1, y1);
                edge(v11, v01, x1, y1, x0, y1);
                edge(v01, v00, x0, y1, x0, y0);
                for (std::size_t k = 0; k + 1 < hits.size(); k += 2) {
                    svg << "M" << detail::fmt3(px(hits[k][0])) << " " << detail::fmt3(py(hits[k][1]))
                        << "L" << detail::fmt3(px(hits[k + 1][0])) << " "
                        << detail::fmt3(py(hits[k + 1][1]));
                }
            }
        svg << "\"/>\n";
        ++color_index;
    }

    for (const auto& pt : scene.points) {
        svg << "<circle cx=\"" << detail::fmt3(px(pt.x)) << "\" cy=\"" << detail::fmt3(py(pt.y))
            << "\" r=\"3\" fill=\"black\"/>\n";
        if (!pt.label.empty())
            svg << "<text x=\"" << detail::fmt3(px(pt.x) + 5) << "\" y=\""
                << detail::fmt3(py(pt.y) - 5) << "\" font-size=\"12\">" << pt.label << "</text>\n";
    }

    svg << "</svg>\n";
    return svg.str();
}

}  // namespace spshadow
