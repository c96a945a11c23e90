#pragma once

#include <complex>
#include <string_view>

namespace fanocav {

using cdouble = std::complex<double>;

inline constexpr double kHbar = 1.054571817e-34;       // J s
inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Which mirrors are dynamical.
///  FixedEnds:     only the transmissive middle mirror M1 moves; cavity B sees -x1.
///  DoubleMovable: M1 and the far end mirror M2 both move; cavity B sees x2 - x1.
enum class Topology { FixedEnds, DoubleMovable };

std::string_view to_string(Topology t) noexcept;
/// Accepts "fixed_ends"/"fixed" and "double_movable"/"double". Throws DomainError otherwise.
Topology parse_topology(std::string_view text);

/// Device and drive constants. SI units throughout; every frequency is angular (rad/s).
struct PhysicalParams {
    double mass1 = 0.0;            // kg, middle mirror M1
    double mass2 = 0.0;            // kg, end mirror M2
    double mech_freq1 = 0.0;       // rad/s
    double mech_freq2 = 0.0;       // rad/s
    double damping1 = 0.0;         // rad/s
    double damping2 = 0.0;         // rad/s
    double pull1 = 0.0;            // frequency pull G1, rad/s per m
    double pull2 = 0.0;            // frequency pull G2, rad/s per m
    double kappa = 0.0;            // total cavity decay rate, rad/s
    double eta = 0.0;              // kappa_ex / kappa
    double tunneling = 0.0;        // photon tunneling rate g, rad/s
    double detuning1 = 0.0;        // bare pump detuning of cavity A, rad/s
    double detuning2 = 0.0;        // bare pump detuning of cavity B, rad/s
    double pump_power = 0.0;       // W
    double probe_power = 0.0;      // W
    double pump_wavelength = 0.0;  // m

    /// Reference mechanical frequency used to normalize probe detunings (Omega_m).
    double omega_m() const noexcept { return mech_freq1; }
    double pump_frequency() const;  // omega_c = 2 pi c / lambda_c
    double pump_amplitude() const;  // eps_c
    /// eps_p. Evaluated at omega_c: the linear response is independent of eps_p, so the
    /// probe's frequency offset only matters for the nominal scale.
    double probe_amplitude() const;
    double external_rate() const noexcept { return eta * kappa; }

    /// Throws DomainError naming the first violated invariant.
    void validate() const;
};

/// Parameter set of the reference device: 20 ng mirrors at 2pi*51.8 MHz, 2pi*41 kHz damping,
/// G = 2pi*13 GHz/nm, kappa = 2pi*15 MHz, critical coupling, 1 mW pump red-detuned by Omega_m,
/// probe at 1% of the pump, 1064 nm pump, g = 0.
PhysicalParams paper_preset();

/// Field amplitude sqrt(P / (hbar omega)) in s^-1/2.
double drive_amplitude(double power, double omega);

struct EffectiveDetunings {
    double first = 0.0;   // DeltaBar1
    double second = 0.0;  // DeltaBar2
};

EffectiveDetunings effective_detunings(const PhysicalParams& p, Topology t, double x1, double x2);

/// chi(Omega) = 1 / (m (Omega_j^2 - Omega^2 - i gamma_j Omega / 2)), in m/N. The gamma/2
/// factor follows from the -(gamma/2) p damping term of the momentum equation.
cdouble mechanical_susceptibility(double mass, double mech_freq, double damping, double omega);

struct DerivedCoefficients {
    cdouble theta1, theta2;  // i DeltaBar_j - kappa/2
    cdouble d1, d2, d3, d4;  // theta1 +/- i Omega, theta2 +/- i Omega
    double detuning1_eff = 0.0;
    double detuning2_eff = 0.0;
};

DerivedCoefficients derived_coefficients(const PhysicalParams& p, double detuning1_eff,
                                         double detuning2_eff, double omega);

/// Zero-point displacement sqrt(hbar / (2 m Omega)).
double zero_point_motion(double mass, double mech_freq);

}  // namespace fanocav
