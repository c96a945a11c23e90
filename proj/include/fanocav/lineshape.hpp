#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fanocav/spectrum.hpp"

namespace fanocav {

inline constexpr double kDefaultProminence = 1e-4;

struct DipFeature {
    double position_over_om = 0.0;  // parabola vertex
    double depth = 0.0;             // T_b at the refined minimum, clamped at 0
    std::size_t grid_index = 0;
    double prominence = 0.0;        // lower adjacent local maximum minus the grid minimum
};

/// Strict interior local minima of y(x), refined by a three-point parabola and filtered by
/// prominence. x must be strictly increasing. Result sorted by position.
std::vector<DipFeature> find_dips(std::span<const double> x, std::span<const double> y,
                                  double prominence = kDefaultProminence);

std::vector<DipFeature> find_dips(const Spectrum& spec, double prominence = kDefaultProminence);

/// Distance in Omega/Omega_m between the two most prominent dips.
/// Throws InsufficientFeaturesError when fewer than two dips are found.
double fano_separation(const Spectrum& spec, double prominence = kDefaultProminence);

struct SeparationRow {
    double g_over_om = 0.0;
    std::optional<double> separation_over_om;
    double x1_scaled = 0.0;
    double x2_scaled = 0.0;
};

struct SeparationCurve {
    std::vector<SeparationRow> rows;  // sorted by g_over_om
    double scale = 1e11;
};

struct SeparationOptions {
    double scale = 1e11;
    double prominence = kDefaultProminence;
    SpectrumOptions spectrum;
};

/// Dip-to-dip separation of the two-movable-mirror spectrum at n_g evenly spaced tunneling
/// rates in [g_min, g_max] (units of Omega_m), alongside the scaled steady displacements.
/// Rows whose spectrum or dip search fails carry no separation.
SeparationCurve separation_vs_g(const PhysicalParams& p, const GridSpec& grid, double g_min, double g_max, int n_g,
                                const SeparationOptions& opts = {});

/// Spearman rank correlation (average ranks for ties). Requires equal sizes >= 2.
double rank_correlation(std::span<const double> a, std::span<const double> b);

}  // namespace fanocav
