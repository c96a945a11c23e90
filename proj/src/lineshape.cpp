#include "fanocav/lineshape.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fanocav/errors.hpp"

namespace fanocav {

namespace {

// Vertex of the parabola through three points with x0 < x1 < x2 and y1 < y0, y1 < y2.
std::pair<double, double> parabola_vertex(double x0, double y0, double x1, double y1, double x2, double y2) {
    const double s01 = (y1 - y0) / (x1 - x0);
    const double s12 = (y2 - y1) / (x2 - x1);
    const double curvature = (s12 - s01) / (x2 - x0);  // leading coefficient, > 0 for a minimum
    if (!(curvature > 0.0)) return {x1, y1};
    const double b = s01 - curvature * (x0 + x1);
    const double xv = std::clamp(-b / (2.0 * curvature), x0, x2);
    const double yv = y1 + (xv - x1) * (s01 + curvature * (xv - x0));
    return {xv, std::min(yv, y1)};
}

}  // namespace

std::vector<DipFeature> find_dips(std::span<const double> x, std::span<const double> y, double prominence) {
    if (x.size() != y.size()) throw DomainError("find_dips: x and y differ in length");
    std::vector<DipFeature> dips;
    const std::size_t n = y.size();
    if (n < 3) return dips;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(y[i] < y[i - 1] && y[i] < y[i + 1])) continue;
        std::size_t l = i - 1;
        while (l > 0 && y[l - 1] >= y[l]) --l;
        std::size_t r = i + 1;
        while (r + 1 < n && y[r + 1] >= y[r]) ++r;
        const double prom = std::min(y[l], y[r]) - y[i];
        if (prom < prominence) continue;
        const auto [xv, yv] = parabola_vertex(x[i - 1], y[i - 1], x[i], y[i], x[i + 1], y[i + 1]);
        dips.push_back({xv, std::max(yv, 0.0), i, prom});
    }
    return dips;
}

std::vector<DipFeature> find_dips(const Spectrum& spec, double prominence) {
    const auto x = spec.omegas();
    const auto y = spec.reflection();
    return find_dips(x, y, prominence);
}

double fano_separation(const Spectrum& spec, double prominence) {
    auto dips = find_dips(spec, prominence);
    if (dips.size() < 2) {
        throw InsufficientFeaturesError("fano_separation: found " + std::to_string(dips.size()) +
                                        " dip(s), need two (single-Fano regime?)");
    }
    std::stable_sort(dips.begin(), dips.end(),
                     [](const DipFeature& a, const DipFeature& b) { return a.prominence > b.prominence; });
    return std::abs(dips[0].position_over_om - dips[1].position_over_om);
}

SeparationCurve separation_vs_g(const PhysicalParams& p, const GridSpec& grid, double g_min, double g_max, int n_g,
                                const SeparationOptions& opts) {
    if (!(g_min >= 0.0 && g_min < g_max)) throw DomainError("separation_vs_g: need 0 <= g_min < g_max");
    if (n_g < 2) throw DomainError("separation_vs_g: n_g must be at least 2");
    grid.validate();

    SeparationCurve curve;
    curve.scale = opts.scale;
    curve.rows.resize(static_cast<std::size_t>(n_g));
    for (int k = 0; k < n_g; ++k) {
        const double g = k == n_g - 1 ? g_max : g_min + (g_max - g_min) * k / static_cast<double>(n_g - 1);
        auto& row = curve.rows[static_cast<std::size_t>(k)];
        row.g_over_om = g;
        PhysicalParams q = p;
        q.tunneling = g * p.omega_m();
        try {
            const auto spec = compute_spectrum(q, Topology::DoubleMovable, grid, Method::MatrixSolve, opts.spectrum);
            row.x1_scaled = spec.steady.x1_bar * opts.scale;
            row.x2_scaled = spec.steady.x2_bar * opts.scale;
            row.separation_over_om = fano_separation(spec, opts.prominence);
        } catch (const Error&) {
            // separation stays absent; displacements are kept when the steady state succeeded
        }
    }
    return curve;
}

namespace {

std::vector<double> ranks(std::span<const double> v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
        i = j + 1;
    }
    return r;
}

}  // namespace

double rank_correlation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.size() < 2) throw DomainError("rank_correlation: need equal sizes >= 2");
    const auto ra = ranks(a);
    const auto rb = ranks(b);
    const double n = static_cast<double>(a.size());
    const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
    const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        sab += (ra[i] - ma) * (rb[i] - mb);
        saa += (ra[i] - ma) * (ra[i] - ma);
        sbb += (rb[i] - mb) * (rb[i] - mb);
    }
    if (saa == 0.0 || sbb == 0.0) return 0.0;
    return sab / std::sqrt(saa * sbb);
}

}  // namespace fanocav
