#include "fanocav/sideband.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fanocav/errors.hpp"

namespace fanocav {

namespace {

constexpr cdouble kI(0.0, 1.0);

cdouble checked_ratio(cdouble num, cdouble den, const char* what) {
    if (den == cdouble(0.0, 0.0) || !std::isfinite(std::abs(den))) {
        throw SingularityError(std::string("closed form: vanishing ") + what);
    }
    return num / den;
}

}  // namespace

SidebandSystem assemble_sideband_system(const PhysicalParams& p, const SteadyState& s, double omega,
                                        double eps_p) {
    const auto c = derived_coefficients(p, s.detuning1_eff, s.detuning2_eff, omega);
    const bool both = s.topology == Topology::DoubleMovable;
    const cdouble a = s.a_bar;
    const cdouble b = s.b_bar;
    const double g = p.tunneling;
    const double g1 = p.pull1;
    const double g2 = p.pull2;

    SidebandSystem sys;
    auto& m = sys.matrix;
    m.setZero();
    sys.rhs.setZero();

    m(0, kAMinus) = c.d1;
    m(0, kBMinus) = -kI * g;
    m(0, kQ1) = kI * g1 * a;
    sys.rhs(0) = -std::sqrt(p.external_rate()) * eps_p;

    m(1, kAPlusConj) = std::conj(c.d2);
    m(1, kBPlusConj) = kI * g;
    m(1, kQ1) = -kI * g1 * std::conj(a);

    m(2, kBMinus) = c.d3;
    m(2, kAMinus) = -kI * g;
    m(2, kQ1) = -kI * g2 * b;
    if (both) m(2, kQ2) = kI * g2 * b;

    m(3, kBPlusConj) = std::conj(c.d4);
    m(3, kAPlusConj) = kI * g;
    m(3, kQ1) = kI * g2 * std::conj(b);
    if (both) m(3, kQ2) = -kI * g2 * std::conj(b);

    m(4, kQ1) = 1.0 / mechanical_susceptibility(p.mass1, p.mech_freq1, p.damping1, omega);
    m(4, kAMinus) = -kHbar * g1 * std::conj(a);
    m(4, kAPlusConj) = -kHbar * g1 * a;
    m(4, kBMinus) = kHbar * g2 * std::conj(b);
    m(4, kBPlusConj) = kHbar * g2 * b;

    if (both) {
        m(5, kQ2) = 1.0 / mechanical_susceptibility(p.mass2, p.mech_freq2, p.damping2, omega);
        m(5, kBMinus) = -kHbar * g2 * std::conj(b);
        m(5, kBPlusConj) = -kHbar * g2 * b;
    } else {
        m(5, kQ2) = 1.0;
    }
    return sys;
}

SidebandSolution solve_sidebands(const PhysicalParams& p, const SteadyState& s, double omega, double eps_p) {
    const auto sys = assemble_sideband_system(p, s, omega, eps_p);

    Eigen::Matrix<double, 6, 1> col_scale = Eigen::Matrix<double, 6, 1>::Ones();
    Eigen::Matrix<double, 6, 1> row_scale = Eigen::Matrix<double, 6, 1>::Ones();
    col_scale(kQ1) = zero_point_motion(p.mass1, p.mech_freq1);
    col_scale(kQ2) = zero_point_motion(p.mass2, p.mech_freq2);
    // Without optomechanical coupling the force rows are scaled by the mirror stiffness instead.
    const double coupling = kHbar * std::abs(p.pull1) * std::max(std::abs(s.a_bar), 1.0);
    const double stiffness = p.mass1 * p.mech_freq1 * p.mech_freq1 * col_scale(kQ1);
    const double force_scale = 1.0 / (coupling > 0.0 ? coupling : stiffness);
    row_scale(kQ1) = force_scale;
    row_scale(kQ2) = s.topology == Topology::DoubleMovable ? force_scale : 1.0 / col_scale(kQ2);

    const Matrix6c scaled = row_scale.asDiagonal() * sys.matrix * col_scale.asDiagonal();
    const Vector6c rhs = row_scale.asDiagonal() * sys.rhs;

    const Eigen::PartialPivLU<Matrix6c> lu(scaled);
    Vector6c y = lu.solve(rhs);
    y += lu.solve(rhs - scaled * y);

    const double rhs_norm = rhs.norm();
    const double res_norm = (scaled * y - rhs).norm();
    if (!std::isfinite(res_norm) || res_norm > 1e-10 * rhs_norm) {
        const double rcond = lu.rcond();
        throw ConditioningError("solve_sidebands: residual " + std::to_string(res_norm) +
                                    " exceeds tolerance (rcond estimate " + std::to_string(rcond) + ")",
                                rcond);
    }

    const Vector6c u = col_scale.asDiagonal() * y;
    SidebandSolution sol;
    sol.a_minus = u(kAMinus);
    sol.a_plus_conj = u(kAPlusConj);
    sol.b_minus = u(kBMinus);
    sol.b_plus_conj = u(kBPlusConj);
    sol.q1 = u(kQ1);
    sol.q2 = s.topology == Topology::DoubleMovable ? u(kQ2) : cdouble(0.0, 0.0);
    sol.omega = omega;
    return sol;
}

ReflectionPoint reflection_point(const PhysicalParams& p, const SidebandSolution& sol, double eps_p) {
    if (!(eps_p > 0.0)) throw DomainError("reflection_point: eps_p must be positive");
    ReflectionPoint r;
    r.omega_over_om = sol.omega / p.omega_m();
    r.c_pb_over_eps_p = 1.0 - std::sqrt(p.external_rate()) * sol.a_minus / eps_p;
    r.t_b = std::norm(r.c_pb_over_eps_p);
    return r;
}

cdouble steady_reflection(const PhysicalParams& p, const SteadyState& s) {
    return p.pump_amplitude() - std::sqrt(p.external_rate()) * s.a_bar;
}

double matrix_tb(const PhysicalParams& p, const SteadyState& s, double omega) {
    const double eps_p = p.probe_amplitude();
    return reflection_point(p, solve_sidebands(p, s, omega, eps_p), eps_p).t_b;
}

double closed_form_single_fano_tb(const PhysicalParams& p, const SteadyState& s, double omega) {
    if (s.topology != Topology::FixedEnds) {
        throw AssumptionError("single-Fano closed form requires the FixedEnds topology");
    }
    if (std::abs(p.pull1 - p.pull2) > 1e-12 * std::max(std::abs(p.pull1), std::abs(p.pull2))) {
        throw AssumptionError("single-Fano closed form requires G1 == G2");
    }
    const auto c = derived_coefficients(p, s.detuning1_eff, s.detuning2_eff, omega);
    const double g = p.tunneling;
    const double pull = p.pull1;
    const cdouble a = s.a_bar;
    const cdouble b = s.b_bar;
    const double na = std::norm(a);
    const double nb = std::norm(b);
    const cdouble cross = std::conj(a) * b + a * std::conj(b);
    const cdouble d2c = std::conj(c.d2);
    const cdouble d4c = std::conj(c.d4);

    const cdouble anti_stokes_den = c.d1 * c.d3 + g * g;
    const cdouble stokes_den = d2c * d4c + g * g;
    if (pull == 0.0) {
        // No radiation-pressure coupling: plain coupled-cavity reflection.
        return std::norm(1.0 + p.external_rate() * checked_ratio(c.d3, anti_stokes_den, "D1 D3 + g^2"));
    }
    // Imaginary terms carry the signs produced by eliminating B-, A+*, B+* from the
    // linearized equations.
    const cdouble c1 = checked_ratio(-g * pull * cross - kI * pull * (c.d3 * na + c.d1 * nb), anti_stokes_den,
                                     "D1 D3 + g^2");
    const cdouble c2 = checked_ratio(-g * pull * cross + kI * pull * (d4c * na + d2c * nb), stokes_den,
                                     "D2* D4* + g^2");
    const cdouble c3 = -1.0 / (kHbar * pull * mechanical_susceptibility(p.mass1, p.mech_freq1, p.damping1, omega));
    const cdouble csum = c1 + c2 + c3;
    if (csum == cdouble(0.0, 0.0)) throw SingularityError("closed form: vanishing C1' + C2' + C3'");

    const cdouble numerator = kI * g * g * pull * nb - kI * pull * c.d3 * c.d3 * na - g * c.d3 * pull * cross;
    const cdouble bracket = numerator / (anti_stokes_den * anti_stokes_den * csum) - c.d3 / anti_stokes_den;
    return std::norm(1.0 - p.external_rate() * bracket);
}

double closed_form_double_fano_tb(const PhysicalParams& p, const SteadyState& s, double omega,
                                  double detuning_tolerance) {
    if (s.topology != Topology::DoubleMovable) {
        throw AssumptionError("double-Fano closed form requires the DoubleMovable topology");
    }
    const double tol = detuning_tolerance < 0.0 ? 1e-9 * p.kappa : detuning_tolerance;
    if (std::abs(s.detuning1_eff - s.detuning2_eff) > tol) {
        throw AssumptionError("double-Fano closed form requires equal effective detunings (|dDelta| = " +
                              std::to_string(std::abs(s.detuning1_eff - s.detuning2_eff)) + " rad/s)");
    }
    const auto c = derived_coefficients(p, s.detuning1_eff, s.detuning2_eff, omega);
    const double g = p.tunneling;
    const double g1 = p.pull1;
    const double g2 = p.pull2;
    const cdouble a = s.a_bar;
    const cdouble b = s.b_bar;
    const cdouble ac = std::conj(a);
    const cdouble bc = std::conj(b);
    const double na = std::norm(a);
    const double nb = std::norm(b);
    const cdouble d1 = c.d1;
    const cdouble d2c = std::conj(c.d2);

    const cdouble den1 = d1 * d1 + g * g;
    const cdouble den2 = d2c * d2c + g * g;
    if (den1 == cdouble(0.0, 0.0) || den2 == cdouble(0.0, 0.0)) {
        throw SingularityError("closed form: vanishing D1^2 + g^2 or D2*^2 + g^2");
    }
    if (g1 == 0.0 && g2 == 0.0) return std::norm(1.0 + p.external_rate() * d1 / den1);
    if (g1 == 0.0 || g2 == 0.0) throw AssumptionError("double-Fano closed form needs both G1 and G2 nonzero");
    const cdouble chi1 = mechanical_susceptibility(p.mass1, p.mech_freq1, p.damping1, omega);
    const cdouble chi2 = mechanical_susceptibility(p.mass2, p.mech_freq2, p.damping2, omega);

    const cdouble coef_a = -(g * g1 * a * bc + kI * d1 * g2 * nb) / den1 - (g * g1 * ac * b - kI * g2 * d2c * nb) / den2;
    const cdouble coef_b = kI * g2 * d2c * nb / den2 - kI * d1 * g2 * nb / den1 - 1.0 / (kHbar * g2 * chi2);
    if (coef_b == cdouble(0.0, 0.0)) throw SingularityError("closed form: vanishing B");
    const cdouble k = 1.0 - coef_a / coef_b;

    const cdouble c1 = (-g * g2 * (k * a * bc + ac * b) + kI * g2 * g2 * k * nb * d2c / g1 + kI * g1 * na * d2c) / den2;
    const cdouble c2 = (-g * g2 * (k * ac * b + a * bc) - kI * g2 * g2 * k * nb * d1 / g1 - kI * g1 * na * d1) / den1;
    const cdouble c3 = -1.0 / (kHbar * g1 * chi1);
    const cdouble c11 = (g * g1 * ac * b + kI * g2 * d1 * nb) / (coef_b * den1);
    const cdouble c22 = (g * g1 * a * bc - kI * g2 * d2c * nb) / (coef_b * den2);
    const cdouble w = 1.0 + c11 + c22;
    const cdouble csum = c1 + c2 + c3;
    if (csum == cdouble(0.0, 0.0)) throw SingularityError("closed form: vanishing C1 + C2 + C3");

    const cdouble numerator = kI * g * g * g2 * g2 * k * w * nb / g1 - kI * g1 * d1 * d1 * na -
                              d1 * g * g2 * (k * ac * b + w * a * bc);
    const cdouble bracket = numerator / (den1 * den1 * csum) + kI * g * g * g2 * nb / (coef_b * den1 * den1) - d1 / den1;
    return std::norm(1.0 - p.external_rate() * bracket);
}

}  // namespace fanocav
