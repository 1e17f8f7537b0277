"""Discrete sections, residual assembly and the solvers built on them."""

from .newton import NewtonConfig, NewtonError, NewtonResult, newton_solve
from .residual import ResidualVector, assemble_residual, hp_action, variational_consistency
from .section import DiscreteSection

__all__ = [
    "DiscreteSection",
    "NewtonConfig",
    "NewtonError",
    "NewtonResult",
    "ResidualVector",
    "assemble_residual",
    "hp_action",
    "newton_solve",
    "variational_consistency",
]
