"""Double-cavity optomechanics: steady states, probe reflection spectra and Fano analysis."""

from ._core import (
    ConvergenceError,
    DipFeature,
    DomainError,
    Error,
    FitResult,
    GridSpec,
    InsufficientFeaturesError,
    Method,
    ModelKind,
    ParseError,
    PhysicalParams,
    RunConfig,
    SeparationRow,
    Spectrum,
    SteadyState,
    Topology,
    compute_spectrum,
    eval_model,
    fano_separation,
    find_dips,
    fit,
    intensity_ratio,
    paper_preset,
    parse_config,
    run_command,
    separation_vs_g,
    solve_steady_state,
)

__version__ = "0.1.0"


def preset(g_over_om=0.0):
    """Reference device with tunneling rate g = g_over_om * Omega_m."""
    p = paper_preset()
    p.tunneling = g_over_om * p.omega_m()
    return p
