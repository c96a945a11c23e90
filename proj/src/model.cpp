#include "fanocav/model.hpp"

#include <cmath>
#include <string>

#include "fanocav/errors.hpp"

namespace fanocav {

std::string_view to_string(Topology t) noexcept {
    switch (t) {
        case Topology::FixedEnds: return "fixed_ends";
        case Topology::DoubleMovable: return "double_movable";
    }
    return "unknown";
}

Topology parse_topology(std::string_view text) {
    if (text == "fixed_ends" || text == "fixed") return Topology::FixedEnds;
    if (text == "double_movable" || text == "double") return Topology::DoubleMovable;
    throw DomainError("unknown topology '" + std::string(text) + "'");
}

double PhysicalParams::pump_frequency() const {
    if (!(pump_wavelength > 0.0)) throw DomainError("pump_wavelength must be positive");
    return kTwoPi * kSpeedOfLight / pump_wavelength;
}

double PhysicalParams::pump_amplitude() const { return drive_amplitude(pump_power, pump_frequency()); }

double PhysicalParams::probe_amplitude() const { return drive_amplitude(probe_power, pump_frequency()); }

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw DomainError(what);
}

}  // namespace

void PhysicalParams::validate() const {
    auto finite = [](double v) { return std::isfinite(v); };
    require(finite(mass1) && mass1 > 0.0, "mass1 must be positive");
    require(finite(mass2) && mass2 > 0.0, "mass2 must be positive");
    require(finite(mech_freq1) && mech_freq1 > 0.0, "mech_freq1 must be positive");
    require(finite(mech_freq2) && mech_freq2 > 0.0, "mech_freq2 must be positive");
    require(finite(damping1) && damping1 >= 0.0, "damping1 must be non-negative");
    require(finite(damping2) && damping2 >= 0.0, "damping2 must be non-negative");
    require(finite(pull1) && finite(pull2), "pull1/pull2 must be finite");
    require(finite(kappa) && kappa > 0.0, "kappa must be positive");
    require(finite(eta) && eta > 0.0 && eta <= 1.0, "eta must lie in (0, 1]");
    require(finite(tunneling) && tunneling >= 0.0, "tunneling must be non-negative");
    require(finite(detuning1) && finite(detuning2), "detunings must be finite");
    require(finite(pump_power) && pump_power > 0.0, "pump_power must be positive");
    require(finite(probe_power) && probe_power > 0.0, "probe_power must be positive");
    require(finite(pump_wavelength) && pump_wavelength > 0.0, "pump_wavelength must be positive");
}

PhysicalParams paper_preset() {
    PhysicalParams p;
    const double omega_m = kTwoPi * 51.8e6;
    p.mass1 = p.mass2 = 2e-11;
    p.mech_freq1 = p.mech_freq2 = omega_m;
    p.damping1 = p.damping2 = kTwoPi * 41e3;
    p.pull1 = p.pull2 = kTwoPi * 1.3e19;
    p.kappa = kTwoPi * 15e6;
    p.eta = 0.5;
    p.tunneling = 0.0;
    p.detuning1 = p.detuning2 = -omega_m;
    p.pump_power = 1e-3;
    p.probe_power = p.pump_power / 100.0;
    p.pump_wavelength = 1.064e-6;
    return p;
}

double drive_amplitude(double power, double omega) {
    if (!(omega > 0.0)) throw DomainError("drive_amplitude: omega must be positive");
    if (power < 0.0) throw DomainError("drive_amplitude: power must be non-negative");
    return std::sqrt(power / (kHbar * omega));
}

EffectiveDetunings effective_detunings(const PhysicalParams& p, Topology t, double x1, double x2) {
    EffectiveDetunings d;
    d.first = p.detuning1 + p.pull1 * x1;
    d.second = t == Topology::DoubleMovable ? p.detuning2 + p.pull2 * (x2 - x1)
                                            : p.detuning2 - p.pull2 * x1;
    return d;
}

cdouble mechanical_susceptibility(double mass, double mech_freq, double damping, double omega) {
    if (!(mass > 0.0)) throw DomainError("mechanical_susceptibility: mass must be positive");
    const cdouble denom = mass * cdouble(mech_freq * mech_freq - omega * omega, -damping * omega / 2.0);
    if (denom == cdouble(0.0, 0.0)) {
        throw SingularityError("mechanical_susceptibility: undamped oscillator driven on resonance");
    }
    return 1.0 / denom;
}

DerivedCoefficients derived_coefficients(const PhysicalParams& p, double detuning1_eff,
                                         double detuning2_eff, double omega) {
    DerivedCoefficients c;
    c.detuning1_eff = detuning1_eff;
    c.detuning2_eff = detuning2_eff;
    c.theta1 = cdouble(-p.kappa / 2.0, detuning1_eff);
    c.theta2 = cdouble(-p.kappa / 2.0, detuning2_eff);
    const cdouble i_omega(0.0, omega);
    c.d1 = c.theta1 + i_omega;
    c.d2 = c.theta1 - i_omega;
    c.d3 = c.theta2 + i_omega;
    c.d4 = c.theta2 - i_omega;
    return c;
}

double zero_point_motion(double mass, double mech_freq) {
    return std::sqrt(kHbar / (2.0 * mass * mech_freq));
}

}  // namespace fanocav
