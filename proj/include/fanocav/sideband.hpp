#pragma once

#include <Eigen/Dense>

#include "fanocav/model.hpp"
#include "fanocav/steady_state.hpp"

namespace fanocav {

using Matrix6c = Eigen::Matrix<cdouble, 6, 6>;
using Vector6c = Eigen::Matrix<cdouble, 6, 1>;

/// Unknown ordering of the linearized probe-response system.
enum SidebandIndex : int { kAMinus = 0, kAPlusConj = 1, kBMinus = 2, kBPlusConj = 3, kQ1 = 4, kQ2 = 5 };

/// First-order Fourier amplitudes of the fluctuations at probe detuning Omega:
///   delta a = A- e^{-i Omega t} + A+ e^{+i Omega t}, likewise for b;
///   delta x_j = q_j e^{-i Omega t} + c.c.
/// The e^{+i Omega t} amplitudes are stored conjugated.
struct SidebandSolution {
    cdouble a_minus;
    cdouble a_plus_conj;
    cdouble b_minus;
    cdouble b_plus_conj;
    cdouble q1;  // m
    cdouble q2;  // m, zero for FixedEnds
    double omega = 0.0;
};

struct ReflectionPoint {
    double omega_over_om = 0.0;
    double t_b = 0.0;
    cdouble c_pb_over_eps_p;
};

struct SidebandSystem {
    Matrix6c matrix;
    Vector6c rhs;
};

/// Linearized Langevin equations at probe detuning omega, one row per equation:
///   (1) D1 A- - i g B- + i G1 a q1            = -sqrt(eta kappa) eps_p
///   (2) D2* A+* + i g B+* - i G1 a* q1        = 0
///   (3) D3 B- - i g A- + i G2 b (q2 - q1)     = 0
///   (4) D4* B+* + i g A+* - i G2 b* (q2 - q1) = 0
///   (5) q1/chi1 - hbar G1 (a* A- + a A+*) + hbar G2 (b* B- + b B+*) = 0
///   (6) q2/chi2 - hbar G2 (b* B- + b B+*)     = 0
/// For FixedEnds the q2 column is dropped from (3)/(4) and row (6) becomes q2 = 0.
SidebandSystem assemble_sideband_system(const PhysicalParams& p, const SteadyState& s, double omega,
                                        double eps_p);

/// Dense solve of the assembled system. Columns q1, q2 are scaled by the zero-point motion and
/// the force rows by 1/(hbar G1 max(|a|, 1)) before LU, followed by one refinement step.
/// Throws ConditioningError if the scaled residual exceeds 1e-10 of the scaled rhs.
SidebandSolution solve_sidebands(const PhysicalParams& p, const SteadyState& s, double omega, double eps_p);

/// Normalized backward reflection C_pb / eps_p = 1 - sqrt(eta kappa) A- / eps_p and T_b = |.|^2.
ReflectionPoint reflection_point(const PhysicalParams& p, const SidebandSolution& sol, double eps_p);

/// Reflected pump amplitude C_cb = eps_c - sqrt(eta kappa) a_bar.
cdouble steady_reflection(const PhysicalParams& p, const SteadyState& s);

/// T_b through the matrix route at probe detuning omega.
double matrix_tb(const PhysicalParams& p, const SteadyState& s, double omega);

/// Closed-form T_b for the fixed-end-mirror device with G1 = G2, obtained by eliminating the
/// cavity-B and Stokes amplitudes analytically and solving the force balance for q1.
/// Throws AssumptionError unless s is FixedEnds and G1 == G2 (to 1e-12 relative).
double closed_form_single_fano_tb(const PhysicalParams& p, const SteadyState& s, double omega);

/// Closed-form T_b for the two-movable-mirror device in the degenerate-detuning regime
/// D1 = D3, D2 = D4. |DeltaBar1 - DeltaBar2| must not exceed detuning_tolerance (rad/s);
/// pass a negative value to use 1e-9 kappa.
double closed_form_double_fano_tb(const PhysicalParams& p, const SteadyState& s, double omega,
                                  double detuning_tolerance = -1.0);

}  // namespace fanocav
