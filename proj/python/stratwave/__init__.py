"""Rotating stratified internal-wave model.

Fields are float64 arrays of shape (nx, nz) on a periodic box [0, Lx) x [0, Lz).
"""

from ._core import (
    Error,
    PhysicalParams,
    conserved_density,
    divergence_check,
    exact_sample,
    is_divergence_energy,
    omega,
    pde_residual,
    random_state,
    read_snapshot,
    rhs,
    simulate,
    theta_under_substitution,
    verify,
    write_snapshot,
)

__all__ = [
    "Error",
    "PhysicalParams",
    "conserved_density",
    "divergence_check",
    "exact_sample",
    "is_divergence_energy",
    "omega",
    "pde_residual",
    "random_state",
    "read_snapshot",
    "rhs",
    "simulate",
    "theta_under_substitution",
    "verify",
    "write_snapshot",
]
