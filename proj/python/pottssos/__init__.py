"""Periodic Gibbs measures of the Potts-SOS model on Cayley trees."""

from ._pottssos import (
    FieldPair,
    ModelParams,
    PhasePoint,
    TwoCycle,
    bipartite_solve,
    boundary_map,
    build_tree_levels,
    classify_point,
    compatibility_residual,
    cycle_quotient,
    discriminant,
    f_eval,
    injectivity_probe,
    make_params,
    params_from_weights,
    phase_scan,
    phase_scan_theta_squared,
    propagate,
    quadratic_coeffs,
    quadratic_roots,
    theta_d,
    ti_fixed_points,
    two_cycles,
)

__all__ = [
    "FieldPair",
    "ModelParams",
    "PhasePoint",
    "TwoCycle",
    "bipartite_solve",
    "boundary_map",
    "build_tree_levels",
    "classify_point",
    "compatibility_residual",
    "cycle_quotient",
    "discriminant",
    "f_eval",
    "injectivity_probe",
    "make_params",
    "params_from_weights",
    "phase_scan",
    "phase_scan_theta_squared",
    "propagate",
    "quadratic_coeffs",
    "quadratic_roots",
    "theta_d",
    "ti_fixed_points",
    "two_cycles",
]
