#pragma once

// Static SVG renderings: barcodes, edge lifespan heatmaps and complex
// skeletons. Output is a pure function of the input (no timestamps).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "topo_recon/embed.hpp"
#include "topo_recon/mscan.hpp"
#include "topo_recon/persistence.hpp"
#include "topo_recon/witness.hpp"

namespace topo_recon::svg {

namespace detail {

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string header(double w, double h) {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w) + "\" height=\"" + num(h) +
           "\" viewBox=\"0 0 " + num(w) + " " + num(h) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

inline std::string line(double x1, double y1, double x2, double y2, const std::string& stroke, double width,
                        const std::string& extra = "") {
    return "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" + num(y2) +
           "\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) + "\"" + extra + "/>\n";
}

inline std::string text(double x, double y, const std::string& s, const std::string& anchor = "start") {
    return "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"" +
           anchor + "\">" + s + "</text>\n";
}

} // namespace detail

// Discrete lifespan palette: index = Delta m, 0 is white; lifespans above
// the table reuse the last color.
inline constexpr std::array<const char*, 10> kLifespanPalette = {
    "#ffffff", "#1f3fbf", "#2ca02c", "#17becf", "#bcbd22", "#ff7f0e", "#d62728", "#9467bd", "#8c564b", "#000000"};

inline const char* lifespan_color(std::uint32_t v) {
    return kLifespanPalette[std::min<std::size_t>(v, kLifespanPalette.size() - 1)];
}

struct BarcodeStyle {
    double width = 800;
    double bar_height = 4;
    double bar_gap = 2;
    // Upper end of the axis; 0 picks 1.05 x the largest finite endpoint.
    double x_max = 0;
};

// One panel per homology dimension; infinite bars run to the right edge.
inline std::string render_barcode(const Barcode& bc, const BarcodeStyle& style = {}) {
    const double left = 50, right = 20, top = 20, panel_gap = 30, axis_h = 30;
    double x_max = style.x_max;
    if (x_max <= 0) {
        for (const auto& iv : bc.intervals) {
            x_max = std::max(x_max, iv.birth);
            if (!iv.infinite()) x_max = std::max(x_max, iv.death);
        }
        x_max = x_max > 0 ? 1.05 * x_max : 1.0;
    }
    const std::size_t dims = std::max<std::size_t>(bc.dim_cap, 1);
    std::vector<std::vector<const Interval*>> panels(dims);
    for (const auto& iv : bc.intervals)
        if (iv.k < dims) panels[iv.k].push_back(&iv);
    for (auto& p : panels)
        std::stable_sort(p.begin(), p.end(), [](const Interval* a, const Interval* b) { return a->birth < b->birth; });

    double height = top + axis_h;
    for (const auto& p : panels) height += std::max<double>(p.size(), 1) * (style.bar_height + style.bar_gap) + panel_gap;
    const double plot_w = style.width - left - right;
    auto xpos = [&](double v) { return left + plot_w * std::min(v, x_max) / x_max; };

    std::string out = detail::header(style.width, height);
    double y = top;
    for (std::size_t k = 0; k < dims; ++k) {
        out += detail::text(5, y + 10, "H" + std::to_string(k));
        for (const Interval* iv : panels[k]) {
            const double x1 = xpos(iv->birth);
            const double x2 = iv->infinite() ? left + plot_w : xpos(iv->death);
            out += "<rect x=\"" + detail::num(x1) + "\" y=\"" + detail::num(y) + "\" width=\"" +
                   detail::num(std::max(x2 - x1, 0.5)) + "\" height=\"" + detail::num(style.bar_height) +
                   "\" fill=\"" + (iv->infinite() ? "#d62728" : "#1f3fbf") + "\"/>\n";
            y += style.bar_height + style.bar_gap;
        }
        if (panels[k].empty()) y += style.bar_height + style.bar_gap;
        y += panel_gap;
    }
    const double axis_y = y - panel_gap + 10;
    out += detail::line(left, axis_y, left + plot_w, axis_y, "black", 1);
    out += detail::line(left, top - 5, left, axis_y, "black", 1);
    for (int t = 0; t <= 5; ++t) {
        const double v = x_max * t / 5.0;
        out += detail::line(xpos(v), axis_y, xpos(v), axis_y + 4, "black", 1);
        out += detail::text(xpos(v), axis_y + 16, detail::num(v), "middle");
    }
    out += "</svg>\n";
    return out;
}

// l x l grid, one cell per landmark pair, colored by lifespan.
inline std::string render_heatmap(const LifespanMatrix& lm, double cell = 3.0) {
    const std::size_t n = lm.size();
    const double margin = 20, legend_w = 90;
    const double side = std::max(n * cell, 1.0);
    std::string out = detail::header(side + 2 * margin + legend_w, side + 2 * margin);
    out += "<rect x=\"" + detail::num(margin) + "\" y=\"" + detail::num(margin) + "\" width=\"" + detail::num(side) +
           "\" height=\"" + detail::num(side) + "\" fill=\"white\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
    std::uint32_t max_v = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto v = lm(i, j);
            max_v = std::max(max_v, v);
            if (v == 0) continue;
            out += "<rect x=\"" + detail::num(margin + j * cell) + "\" y=\"" + detail::num(margin + i * cell) +
                   "\" width=\"" + detail::num(cell) + "\" height=\"" + detail::num(cell) + "\" fill=\"" +
                   lifespan_color(v) + "\"/>\n";
        }
    const double lx = side + 2 * margin;
    for (std::uint32_t v = 1; v <= std::max<std::uint32_t>(max_v, 1); ++v) {
        const double ly = margin + (v - 1) * 16.0;
        out += "<rect x=\"" + detail::num(lx) + "\" y=\"" + detail::num(ly) + "\" width=\"12\" height=\"12\" fill=\"" +
               lifespan_color(v) + "\" stroke=\"black\" stroke-width=\"0.3\"/>\n";
        out += detail::text(lx + 16, ly + 10, "dm=" + std::to_string(v));
    }
    out += "</svg>\n";
    return out;
}

struct SkeletonView {
    // Orthographic view angles in degrees. Without a view, coordinates past
    // the second are dropped.
    bool rotate = false;
    double azimuth = 0;
    double elevation = 0;
    double size = 600;
};

// Planar image of a landmark point under the view.
inline std::pair<double, double> view_project(std::span<const double> p, const SkeletonView& view) {
    const double x = p[0];
    const double y = p.size() > 1 ? p[1] : 0.0;
    if (!view.rotate) return {x, y};
    const double z = p.size() > 2 ? p[2] : 0.0;
    const double az = view.azimuth * std::numbers::pi / 180.0, el = view.elevation * std::numbers::pi / 180.0;
    const double xr = x * std::cos(az) - y * std::sin(az);
    const double yr = x * std::sin(az) + y * std::cos(az);
    return {xr, yr * std::sin(el) + z * std::cos(el)};
}

// Edges drawn thin and dashed unless listed in `emphasized` (e.g. long
// lifespan edges); landmarks drawn as red dots.
inline std::string render_skeleton(const PointCloud& landmarks, const std::vector<Edge>& edges,
                                   const SkeletonView& view = {},
                                   const std::set<std::pair<std::uint32_t, std::uint32_t>>& emphasized = {}) {
    const double margin = 20, size = view.size;
    std::vector<std::pair<double, double>> pts;
    double xmin = kInfinity, xmax = -kInfinity, ymin = kInfinity, ymax = -kInfinity;
    for (std::size_t i = 0; i < landmarks.size(); ++i) {
        const auto q = view_project(landmarks.point(i), view);
        pts.push_back(q);
        xmin = std::min(xmin, q.first), xmax = std::max(xmax, q.first);
        ymin = std::min(ymin, q.second), ymax = std::max(ymax, q.second);
    }
    const double span = std::max({xmax - xmin, ymax - ymin, 1e-12});
    auto sx = [&](double x) { return margin + (x - xmin) / span * (size - 2 * margin); };
    auto sy = [&](double y) { return size - margin - (y - ymin) / span * (size - 2 * margin); };

    std::string out = detail::header(size, size);
    for (const Edge& e : edges) {
        if (e.i >= pts.size() || e.j >= pts.size()) continue;
        const bool strong = emphasized.count({e.i, e.j}) > 0;
        out += detail::line(sx(pts[e.i].first), sy(pts[e.i].second), sx(pts[e.j].first), sy(pts[e.j].second),
                            strong ? "black" : "#555555", strong ? 1.5 : 0.5,
                            emphasized.empty() || strong ? "" : " stroke-dasharray=\"2,2\"");
    }
    for (const auto& [x, y] : pts)
        out += "<circle cx=\"" + detail::num(sx(x)) + "\" cy=\"" + detail::num(sy(y)) + "\" r=\"2\" fill=\"red\"/>\n";
    out += "</svg>\n";
    return out;
}

} // namespace topo_recon::svg
