"""Virasoro operators, constrained partition functions and the volume dictionary."""
from superwp.tau.checks import (
    Residual, bridge_series, constraint_residual, omk_bridge_check, s0_agreement, virconj_residual,
)
from superwp.tau.kappa import kappa_grade, kappa_latex, kappa_polynomials, kappa_s
from superwp.tau.solver import ConstraintError, ConstraintSpec, ConstraintSolver, solve_constraints
from superwp.tau.translate import shift, tau_from_volumes, translate_partition, volumes_from_tau
from superwp.tau.virasoro import (
    CommutatorReport, VirasoroOp, commutator_check, dfact, virasoro_apply,
)

__all__ = [
    "CommutatorReport", "ConstraintError", "ConstraintSolver", "ConstraintSpec", "Residual",
    "VirasoroOp", "bridge_series", "commutator_check", "constraint_residual", "dfact",
    "kappa_grade", "kappa_latex", "kappa_polynomials", "kappa_s", "omk_bridge_check",
    "s0_agreement", "shift", "solve_constraints", "tau_from_volumes", "translate_partition",
    "virasoro_apply", "virconj_residual", "volumes_from_tau",
]
