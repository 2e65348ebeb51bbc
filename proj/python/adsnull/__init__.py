"""Extremal null-curve trajectories in anti-de Sitter 3-space."""

from _adsnull import (  # noqa: F401
    AdsNullError,
    classify,
    closure_test,
    discriminant,
    el_residual,
    el_system_max_residuals,
    elliptic_k,
    find_closed,
    in_w,
    jacobi_sn,
    jacobian_psi,
    period_map,
    period_p,
    potential,
    trajectory,
    verify_geometry,
    weierstrass_sigma,
    weierstrass_zeta,
    wp,
    wp_prime,
)

__all__ = [
    "AdsNullError",
    "classify",
    "closure_test",
    "discriminant",
    "el_residual",
    "el_system_max_residuals",
    "elliptic_k",
    "find_closed",
    "in_w",
    "jacobi_sn",
    "jacobian_psi",
    "period_map",
    "period_p",
    "potential",
    "trajectory",
    "verify_geometry",
    "weierstrass_sigma",
    "weierstrass_zeta",
    "wp",
    "wp_prime",
]
