#pragma once

#include <span>
#include <string>
#include <vector>

namespace fanocav {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;  // NaN entries break the polyline
};

struct PlotStyle {
    std::string title;
    std::string x_label = "Omega/Omega_m";
    std::string y_label = "T_b";
    int width = 720;
    int height = 480;
};

/// Standalone SVG line plot: axes with tick labels, one polyline per contiguous run of finite
/// points, and a legend. Output bytes depend only on the inputs.
/// Throws DomainError for an empty series list or a series without points.
std::string render_svg(std::span<const PlotSeries> series, const PlotStyle& style);

}  // namespace fanocav
