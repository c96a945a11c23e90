#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fanocav/lineshape.hpp"
#include "fanocav/model.hpp"
#include "fanocav/spectrum.hpp"

namespace fanocav {

/// Separation-curve settings. The default window is wider than the spectrum window because
/// the lower Fano dip leaves [0.98, 1.02] Omega_m once g exceeds ~0.8 Omega_m.
struct SeparationSettings {
    GridSpec grid{0.9, 1.1, 20001};
    double g_min = 0.4;
    double g_max = 1.0;
    int n_g = 25;
};

struct RunConfig {
    PhysicalParams params = paper_preset();
    Topology topology = Topology::DoubleMovable;
    GridSpec grid;
    std::vector<double> g_over_om{0.0, 0.1, 0.2, 0.3, 0.4, 0.6};
    Method method = Method::MatrixSolve;
    std::filesystem::path output_dir = ".";
    bool emit_svg = false;
    double prominence = kDefaultProminence;
    double scale_xbar = 1e11;
    SeparationSettings separation;
    std::filesystem::path fit_input;  // CSV consumed by the `fit` command
};

/// Parses a flat `key = value` document. Lines starting with '#' are comments, lists use
/// `[a, b, c]`. Frequencies are ordinary frequencies in Hz and are converted to rad/s;
/// detunings are given in units of Omega_m. Missing keys keep the reference-device values.
/// Throws ParseError (with line number) for malformed lines, unknown or repeated keys and
/// invalid values.
RunConfig parse_config(std::string_view text);

RunConfig load_config(const std::filesystem::path& path);

/// Recognized keys in documentation order.
const std::vector<std::string_view>& config_keys();

}  // namespace fanocav
