#include "fanocav/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fanocav/errors.hpp"

namespace fanocav {

void SolveOptions::validate() const {
    if (!(tol > 0.0)) throw DomainError("SolveOptions: tol must be positive");
    if (max_iter < 1) throw DomainError("SolveOptions: max_iter must be at least 1");
    if (!(damping > 0.0 && damping <= 1.0)) throw DomainError("SolveOptions: damping must lie in (0, 1]");
    if (!std::isfinite(initial_x1) || !std::isfinite(initial_x2)) {
        throw DomainError("SolveOptions: initial displacements must be finite");
    }
}

CavityFields cavity_fields_given_positions(const PhysicalParams& p, Topology t, double x1, double x2) {
    const auto det = effective_detunings(p, t, x1, x2);
    const cdouble theta1(-p.kappa / 2.0, det.first);
    const cdouble theta2(-p.kappa / 2.0, det.second);
    const double g = p.tunneling;
    const cdouble denom = theta1 * theta2 + g * g;
    // |theta1 theta2 + g^2| >= (kappa/2)^2 for any real detunings; only kappa -> 0 gets here.
    if (std::abs(denom) <= std::numeric_limits<double>::epsilon() * (std::norm(theta1) + std::norm(theta2) + g * g)) {
        throw SingularityError("cavity_fields_given_positions: degenerate cavity resonance");
    }
    const double drive = std::sqrt(p.external_rate()) * p.pump_amplitude();
    CavityFields f;
    f.a = -drive * theta2 / denom;
    f.b = cdouble(0.0, g) * f.a / theta2;
    return f;
}

namespace {

struct Displacements {
    double x1 = 0.0;
    double x2 = 0.0;
};

Displacements radiation_pressure_balance(const PhysicalParams& p, Topology t, const CavityFields& f) {
    const double na = std::norm(f.a);
    const double nb = std::norm(f.b);
    Displacements d;
    d.x1 = kHbar * (p.pull1 * na - p.pull2 * nb) / (p.mass1 * p.mech_freq1 * p.mech_freq1);
    if (t == Topology::DoubleMovable) {
        d.x2 = kHbar * p.pull2 * nb / (p.mass2 * p.mech_freq2 * p.mech_freq2);
    }
    return d;
}

SteadyState make_state(const PhysicalParams& p, Topology t, double x1, double x2, int iterations) {
    SteadyState s;
    s.topology = t;
    s.x1_bar = x1;
    s.x2_bar = t == Topology::DoubleMovable ? x2 : 0.0;
    const auto f = cavity_fields_given_positions(p, t, s.x1_bar, s.x2_bar);
    s.a_bar = f.a;
    s.b_bar = f.b;
    const auto det = effective_detunings(p, t, s.x1_bar, s.x2_bar);
    s.detuning1_eff = det.first;
    s.detuning2_eff = det.second;
    s.iterations = iterations;
    s.residual = steady_residual(p, t, s);
    return s;
}

}  // namespace

SteadyState solve_steady_state(const PhysicalParams& p, Topology t, const SolveOptions& opts) {
    opts.validate();
    const double zp1 = zero_point_motion(p.mass1, p.mech_freq1);
    const double zp2 = zero_point_motion(p.mass2, p.mech_freq2);

    double x1 = opts.initial_x1;
    double x2 = t == Topology::DoubleMovable ? opts.initial_x2 : 0.0;
    for (int it = 1; it <= opts.max_iter; ++it) {
        const auto target = radiation_pressure_balance(p, t, cavity_fields_given_positions(p, t, x1, x2));
        const double nx1 = (1.0 - opts.damping) * x1 + opts.damping * target.x1;
        const double nx2 = (1.0 - opts.damping) * x2 + opts.damping * target.x2;
        if (!std::isfinite(nx1) || !std::isfinite(nx2)) {
            throw DivergenceError("solve_steady_state: non-finite iterate at iteration " + std::to_string(it));
        }
        const double change = std::max(std::abs(nx1 - x1) / std::max(std::abs(nx1), zp1),
                                       std::abs(nx2 - x2) / std::max(std::abs(nx2), zp2));
        x1 = nx1;
        x2 = nx2;
        if (change < opts.tol) {
            auto s = make_state(p, t, x1, x2, it);
            if (s.residual <= opts.tol) return s;
        }
    }
    throw ConvergenceError("solve_steady_state: no convergence within " + std::to_string(opts.max_iter) +
                               " iterations (possible bistability)",
                           x1, x2, opts.max_iter);
}

double steady_residual(const PhysicalParams& p, Topology t, const SteadyState& s) {
    const auto det = effective_detunings(p, t, s.x1_bar, s.x2_bar);
    const cdouble theta1(-p.kappa / 2.0, det.first);
    const cdouble theta2(-p.kappa / 2.0, det.second);
    const cdouble ig(0.0, p.tunneling);
    const double drive = std::sqrt(p.external_rate()) * p.pump_amplitude();
    const double field_scale = drive > 0.0 ? drive : 1.0;

    double r = std::abs(theta1 * s.a_bar - ig * s.b_bar + drive) / field_scale;
    r = std::max(r, std::abs(theta2 * s.b_bar - ig * s.a_bar) / field_scale);

    const double na = std::norm(s.a_bar);
    const double nb = std::norm(s.b_bar);
    const double k1 = p.mass1 * p.mech_freq1 * p.mech_freq1;
    const double f1 = k1 * s.x1_bar - kHbar * (p.pull1 * na - p.pull2 * nb);
    r = std::max(r, std::abs(f1) / (k1 * std::max(std::abs(s.x1_bar), zero_point_motion(p.mass1, p.mech_freq1))));

    const double k2 = p.mass2 * p.mech_freq2 * p.mech_freq2;
    const double scale2 = k2 * std::max(std::abs(s.x2_bar), zero_point_motion(p.mass2, p.mech_freq2));
    if (t == Topology::DoubleMovable) {
        r = std::max(r, std::abs(k2 * s.x2_bar - kHbar * p.pull2 * nb) / scale2);
    } else {
        r = std::max(r, std::abs(k2 * s.x2_bar) / scale2);
    }
    return r;
}

double intensity_ratio(const SteadyState& s) {
    const double na = std::norm(s.a_bar);
    if (na == 0.0) throw DomainError("intensity_ratio: cavity A is empty");
    return std::norm(s.b_bar) / na;
}

}  // namespace fanocav
