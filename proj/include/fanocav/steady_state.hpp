#pragma once

#include "fanocav/model.hpp"

namespace fanocav {

/// Pump-only steady state of the coupled cavities and mirrors.
struct SteadyState {
    Topology topology = Topology::FixedEnds;
    cdouble a_bar;  // cavity A amplitude, |a_bar|^2 = photon number
    cdouble b_bar;  // cavity B amplitude
    double x1_bar = 0.0;  // m
    double x2_bar = 0.0;  // m, identically zero for FixedEnds
    double detuning1_eff = 0.0;
    double detuning2_eff = 0.0;
    int iterations = 0;
    double residual = 0.0;
};

struct SolveOptions {
    double tol = 1e-12;
    int max_iter = 10000;
    double damping = 0.5;
    double initial_x1 = 0.0;
    double initial_x2 = 0.0;

    void validate() const;
};

struct CavityFields {
    cdouble a;
    cdouble b;
};

/// Steady intracavity fields with the mirrors held at (x1, x2).
CavityFields cavity_fields_given_positions(const PhysicalParams& p, Topology t, double x1, double x2);

/// Damped fixed-point iteration on the mirror displacements, seeded at
/// (initial_x1, initial_x2). Reports the branch reached from that seed.
SteadyState solve_steady_state(const PhysicalParams& p, Topology t, const SolveOptions& opts = {});

/// Largest normalized |RHS| of the time-independent Langevin equations at s. Field equations
/// are scaled by sqrt(eta kappa) eps_c, force balances by m Omega^2 max(|x|, x_zp).
double steady_residual(const PhysicalParams& p, Topology t, const SteadyState& s);

/// |b_bar|^2 / |a_bar|^2.
double intensity_ratio(const SteadyState& s);

}  // namespace fanocav
