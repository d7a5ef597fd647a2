"""Geometric measure theory on the Engel group."""

from ._engel import (
    DomainError,
    NonConvergenceError,
    RankDeficientError,
    Surface,
    adapted_frame,
    bch_product,
    box_ball_lambda,
    dilate,
    divergence_probe,
    federer_density,
    gamma_expansion,
    group_inverse,
    horizontality_residual,
    pointwise_degree,
    run_cli,
    spherical_factor,
    stokes_check,
    surface_degree,
    tangent_two_vector,
    triangle_defect,
)

__all__ = [name for name in dir() if not name.startswith("_")]
