#include "fanocav/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

#include "fanocav/errors.hpp"

namespace fanocav {

namespace {

constexpr std::array<const char*, 8> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                              "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string num(double v, const char* fmt = "%.2f") {
    char buf[48];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

double nice_step(double span, int target) {
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double frac = raw / mag;
    const double nice = frac < 1.5 ? 1.0 : frac < 3.0 ? 2.0 : frac < 7.0 ? 5.0 : 10.0;
    return nice * mag;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
        if (hi - lo <= 0.0) {
            const double d = lo == 0.0 ? 1.0 : std::abs(lo) * 0.05;
            lo -= d;
            hi += d;
        }
    }
};

}  // namespace

std::string render_svg(std::span<const PlotSeries> series, const PlotStyle& style) {
    if (series.empty()) throw DomainError("render_svg: no series");
    Range xr, yr;
    for (const auto& s : series) {
        if (s.x.empty() || s.x.size() != s.y.size()) throw DomainError("render_svg: empty or ragged series '" + s.label + "'");
        for (double v : s.x) xr.add(v);
        for (double v : s.y) yr.add(v);
    }
    xr.pad();
    yr.pad();

    const double left = 80, right = 170, top = 40, bottom = 60;
    const double pw = style.width - left - right;
    const double ph = style.height - top - bottom;
    auto px = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto py = [&](double y) { return top + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(style.width) + "\" height=\"" +
           std::to_string(style.height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!style.title.empty()) {
        out += "<text x=\"" + num(left + pw / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" +
               escape(style.title) + "</text>\n";
    }
    out += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
           "\" fill=\"none\" stroke=\"black\"/>\n";

    const double xs = nice_step(xr.hi - xr.lo, 5);
    for (double t = std::ceil(xr.lo / xs) * xs; t <= xr.hi + 1e-9 * xs; t += xs) {
        const double x = px(t);
        out += "<line x1=\"" + num(x) + "\" y1=\"" + num(top + ph) + "\" x2=\"" + num(x) + "\" y2=\"" +
               num(top + ph + 5) + "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + num(x) + "\" y=\"" + num(top + ph + 18) + "\" text-anchor=\"middle\">" +
               num(std::abs(t) < 1e-12 * xs ? 0.0 : t, "%.6g") + "</text>\n";
    }
    const double ys = nice_step(yr.hi - yr.lo, 5);
    for (double t = std::ceil(yr.lo / ys) * ys; t <= yr.hi + 1e-9 * ys; t += ys) {
        const double y = py(t);
        out += "<line x1=\"" + num(left - 5) + "\" y1=\"" + num(y) + "\" x2=\"" + num(left) + "\" y2=\"" + num(y) +
               "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + num(left - 8) + "\" y=\"" + num(y + 4) + "\" text-anchor=\"end\">" +
               num(std::abs(t) < 1e-12 * ys ? 0.0 : t, "%.6g") + "</text>\n";
    }
    out += "<text x=\"" + num(left + pw / 2) + "\" y=\"" + num(style.height - 15.0) + "\" text-anchor=\"middle\">" +
           escape(style.x_label) + "</text>\n";
    out += "<text x=\"20\" y=\"" + num(top + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " +
           num(top + ph / 2) + ")\">" + escape(style.y_label) + "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* color = kPalette[k % kPalette.size()];
        std::string pts;
        auto flush = [&] {
            if (pts.empty()) return;
            out += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"" +
                   pts + "\"/>\n";
            pts.clear();
        };
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
                flush();
                continue;
            }
            if (!pts.empty()) pts += ' ';
            pts += num(px(s.x[i])) + "," + num(py(s.y[i]));
        }
        flush();

        const double ly = top + 10 + 18.0 * static_cast<double>(k);
        const double lx = left + pw + 15;
        out += "<g class=\"legend-entry\"><line x1=\"" + num(lx) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(lx + 20) +
               "\" y2=\"" + num(ly) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/><text x=\"" + num(lx + 26) +
               "\" y=\"" + num(ly + 4) + "\">" + escape(s.label) + "</text></g>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace fanocav
