#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fanocav/config.hpp"
#include "fanocav/csv.hpp"
#include "fanocav/fit.hpp"
#include "fanocav/lineshape.hpp"
#include "fanocav/spectrum.hpp"

namespace fanocav {

enum class Command { Steady, Spectrum, Fig3, Fig4, Fig5, Fig7, Fit };

Command parse_command(std::string_view text);
std::string_view to_string(Command c) noexcept;

/// Column sets written by each command.
namespace schema {
inline const std::vector<std::string> kSpectrum{"omega_over_Om", "T_b"};
inline const std::vector<std::string> kSeparation{"g_over_Om", "separation_over_Om", "x1_bar_scaled", "x2_bar_scaled"};
inline const std::vector<std::string> kIntensity{"g_over_Om", "n_a", "n_b", "ratio"};
inline const std::vector<std::string> kFitReport{"model", "param_name", "value"};
}  // namespace schema

struct CommandResult {
    int exit_code = 0;
    std::vector<std::filesystem::path> files;  // final names (with .partial on failure)
};

/// Runs one subcommand against cfg, writing into cfg.output_dir. Errors produce a nonzero exit
/// code, a diagnostic line on `err`, and any files already written renamed with `.partial`.
CommandResult run_command(Command cmd, const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Building blocks shared with the Python bindings and tests.

std::vector<CsvRow> spectrum_rows(const Spectrum& spec);
std::vector<CsvRow> separation_rows(const SeparationCurve& curve);
std::vector<CsvRow> intensity_rows(const std::vector<IntensityRow>& rows);
std::vector<CsvRow> fit_report_rows(const FitResult& fit);
std::string steady_report(const PhysicalParams& p, const SteadyState& s);

/// Fits both models to the rows of curve that carry a separation.
std::vector<FitResult> fit_separation_curve(const SeparationCurve& curve);

/// File stem for a spectrum at the given tunneling rate, e.g. "fig4_g0.400".
std::string spectrum_stem(std::string_view prefix, double g_over_om);

}  // namespace fanocav
