"""Spin(7) structures on cones over 3-Sasakian manifolds."""

from ._spin7 import (
    Error,
    F,
    derive_system,
    holonomy_evidence,
    integrate,
    reference_system,
    residuals,
    run_cli,
    sample,
    seed,
    smoothness_limits,
    t_of_r,
    verify_closure_system,
    verify_F_identity,
)

__all__ = [
    "Error",
    "F",
    "derive_system",
    "holonomy_evidence",
    "integrate",
    "reference_system",
    "residuals",
    "run_cli",
    "sample",
    "seed",
    "smoothness_limits",
    "t_of_r",
    "verify_closure_system",
    "verify_F_identity",
]
