#include "fanocav/spectrum.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "fanocav/errors.hpp"

namespace fanocav {

void GridSpec::validate() const {
    if (!std::isfinite(omega_min_over_om) || !std::isfinite(omega_max_over_om) ||
        !(omega_min_over_om < omega_max_over_om)) {
        throw DomainError("GridSpec: need omega_min < omega_max");
    }
    if (n_points < 2) throw DomainError("GridSpec: n_points must be at least 2");
}

double GridSpec::at(int i) const {
    if (i == n_points - 1) return omega_max_over_om;
    const double step = (omega_max_over_om - omega_min_over_om) / static_cast<double>(n_points - 1);
    return omega_min_over_om + step * static_cast<double>(i);
}

std::string_view to_string(Method m) noexcept {
    return m == Method::MatrixSolve ? "matrix" : "closed";
}

Method parse_method(std::string_view text) {
    if (text == "matrix") return Method::MatrixSolve;
    if (text == "closed") return Method::ClosedForm;
    throw DomainError("unknown method '" + std::string(text) + "' (expected matrix|closed)");
}

std::vector<double> Spectrum::omegas() const {
    std::vector<double> out;
    out.reserve(points.size());
    for (const auto& pt : points) out.push_back(pt.omega_over_om);
    return out;
}

std::vector<double> Spectrum::reflection() const {
    std::vector<double> out;
    out.reserve(points.size());
    for (const auto& pt : points) out.push_back(pt.t_b);
    return out;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) {
                    try {
                        body(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

namespace {

struct PointOutcome {
    std::optional<ReflectionPoint> point;
    std::string error;
};

PointOutcome evaluate_point(const PhysicalParams& p, const SteadyState& s, double omega_over_om, Method method) {
    PointOutcome out;
    const double omega = omega_over_om * p.omega_m();
    try {
        ReflectionPoint pt;
        pt.omega_over_om = omega_over_om;
        if (method == Method::MatrixSolve) {
            const double eps_p = p.probe_amplitude();
            pt = reflection_point(p, solve_sidebands(p, s, omega, eps_p), eps_p);
            pt.omega_over_om = omega_over_om;
        } else {
            pt.t_b = s.topology == Topology::FixedEnds ? closed_form_single_fano_tb(p, s, omega)
                                                       : closed_form_double_fano_tb(p, s, omega);
            pt.c_pb_over_eps_p = std::sqrt(pt.t_b);  // phase is not available in closed form
        }
        if (!std::isfinite(pt.t_b) || pt.t_b < 0.0) {
            out.error = "non-finite reflection";
        } else {
            out.point = pt;
        }
    } catch (const Error& e) {
        out.error = e.what();
    }
    return out;
}

}  // namespace

Spectrum compute_spectrum_from_state(const PhysicalParams& p, const SteadyState& s, const GridSpec& grid,
                                     Method method, unsigned threads) {
    grid.validate();
    std::vector<PointOutcome> outcomes(static_cast<std::size_t>(grid.n_points));
    parallel_for(outcomes.size(), threads, [&](std::size_t i) {
        outcomes[i] = evaluate_point(p, s, grid.at(static_cast<int>(i)), method);
    });

    Spectrum spec;
    spec.grid = grid;
    spec.g_over_om = p.tunneling / p.omega_m();
    spec.topology = s.topology;
    spec.method = method;
    spec.steady = s;
    spec.points.reserve(outcomes.size());
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        if (outcomes[i].point) {
            spec.points.push_back(*outcomes[i].point);
        } else {
            spec.gaps.push_back({grid.at(static_cast<int>(i)), std::move(outcomes[i].error)});
        }
    }
    return spec;
}

Spectrum compute_spectrum(const PhysicalParams& p, Topology t, const GridSpec& grid, Method method,
                          const SpectrumOptions& opts) {
    grid.validate();
    const auto steady = solve_steady_state(p, t, opts.solve);
    return compute_spectrum_from_state(p, steady, grid, method, opts.threads);
}

std::vector<SweepEntry> sweep_tunneling(const PhysicalParams& p, Topology t, const GridSpec& grid,
                                        std::span<const double> g_over_om, Method method,
                                        const SpectrumOptions& opts) {
    if (g_over_om.empty()) throw DomainError("sweep_tunneling: empty g list");
    for (double g : g_over_om) {
        if (!(g >= 0.0)) throw DomainError("sweep_tunneling: g/Omega_m must be non-negative");
    }
    std::vector<SweepEntry> out;
    out.reserve(g_over_om.size());
    for (double g : g_over_om) {
        SweepEntry entry;
        entry.g_over_om = g;
        PhysicalParams q = p;
        q.tunneling = g * p.omega_m();
        try {
            entry.spectrum = compute_spectrum(q, t, grid, method, opts);
        } catch (const Error& e) {
            entry.error = e.what();
        }
        out.push_back(std::move(entry));
    }
    return out;
}

std::vector<IntensityRow> intensity_table(const PhysicalParams& p, Topology t, std::span<const double> g_over_om,
                                          const SolveOptions& opts) {
    std::vector<IntensityRow> rows;
    rows.reserve(g_over_om.size());
    for (double g : g_over_om) {
        PhysicalParams q = p;
        q.tunneling = g * p.omega_m();
        const auto s = solve_steady_state(q, t, opts);
        rows.push_back({g, std::norm(s.a_bar), std::norm(s.b_bar), intensity_ratio(s)});
    }
    return rows;
}

}  // namespace fanocav
