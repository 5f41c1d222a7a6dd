"""Self-contained simplex LP solver, exact-rational and float."""

from lfbounds.lp.kernels import KERNEL_BACKEND
from lfbounds.lp.model import (
    INFEASIBLE,
    MAXIMIZE,
    MINIMIZE,
    OPTIMAL,
    UNBOUNDED,
    DualCertificate,
    LinearProgram,
    LpError,
    LpFormatError,
    LpSolution,
    SolverError,
    residuals,
)
from lfbounds.lp.solver import check_feasible, solve

__all__ = [
    "KERNEL_BACKEND",
    "INFEASIBLE",
    "MAXIMIZE",
    "MINIMIZE",
    "OPTIMAL",
    "UNBOUNDED",
    "DualCertificate",
    "LinearProgram",
    "LpError",
    "LpFormatError",
    "LpSolution",
    "SolverError",
    "residuals",
    "check_feasible",
    "solve",
]
