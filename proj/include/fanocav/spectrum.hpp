#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fanocav/sideband.hpp"
#include "fanocav/steady_state.hpp"

namespace fanocav {

/// Uniform grid of probe detunings in units of Omega_m.
struct GridSpec {
    double omega_min_over_om = 0.98;
    double omega_max_over_om = 1.02;
    int n_points = 4001;

    void validate() const;
    /// i-th grid value; the last point is exactly omega_max_over_om.
    double at(int i) const;
};

enum class Method { MatrixSolve, ClosedForm };

std::string_view to_string(Method m) noexcept;
Method parse_method(std::string_view text);

/// A grid point whose evaluation failed (singular closed form, ill-conditioned system).
struct GapPoint {
    double omega_over_om = 0.0;
    std::string reason;
};

struct Spectrum {
    GridSpec grid;
    std::vector<ReflectionPoint> points;  // strictly increasing omega_over_om
    std::vector<GapPoint> gaps;
    double g_over_om = 0.0;
    Topology topology = Topology::FixedEnds;
    Method method = Method::MatrixSolve;
    SteadyState steady;

    std::vector<double> omegas() const;
    std::vector<double> reflection() const;
};

struct SpectrumOptions {
    SolveOptions solve;
    /// Worker threads for grid points; 0 selects std::thread::hardware_concurrency().
    unsigned threads = 0;
};

/// One steady-state solve followed by independent per-point sideband evaluations.
/// ClosedForm uses the single-Fano formula for FixedEnds and the double-Fano one for
/// DoubleMovable; points violating their assumptions become gaps.
Spectrum compute_spectrum(const PhysicalParams& p, Topology t, const GridSpec& grid,
                          Method method = Method::MatrixSolve, const SpectrumOptions& opts = {});

/// Spectrum from a caller-supplied steady state (e.g. one with manufactured detunings).
Spectrum compute_spectrum_from_state(const PhysicalParams& p, const SteadyState& s, const GridSpec& grid,
                                     Method method = Method::MatrixSolve, unsigned threads = 0);

struct SweepEntry {
    double g_over_om = 0.0;
    std::optional<Spectrum> spectrum;
    std::string error;  // set when spectrum is empty
};

/// Independent compute_spectrum per tunneling rate g = g_over_om * Omega_m; order preserved.
std::vector<SweepEntry> sweep_tunneling(const PhysicalParams& p, Topology t, const GridSpec& grid,
                                        std::span<const double> g_over_om,
                                        Method method = Method::MatrixSolve, const SpectrumOptions& opts = {});

struct IntensityRow {
    double g_over_om = 0.0;
    double n_a = 0.0;
    double n_b = 0.0;
    double ratio = 0.0;
};

/// Steady photon numbers per tunneling rate. Solver errors propagate.
std::vector<IntensityRow> intensity_table(const PhysicalParams& p, Topology t, std::span<const double> g_over_om,
                                          const SolveOptions& opts = {});

/// Runs body(i) for i in [0, n) on up to `threads` workers. Each index is visited exactly once.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace fanocav
