"""Linear-program data model shared by the exact and float solvers.

A :class:`LinearProgram` is dense standard data: an objective, equality
rows ``A x = b``, inequality rows ``G x <= h`` and per-variable lower
bounds (default 0).  Entries are exact rationals in "rational" mode and
Python floats in "float" mode; the two are never mixed within one
program.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from lfbounds.rational import is_rational, rat, rat_str

MAXIMIZE = "maximize"
MINIMIZE = "minimize"

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


class LpError(Exception):
    """Base class for solver-facing errors."""


class LpFormatError(LpError):
    """Malformed program (dimension or mode mismatch); never conflated
    with infeasibility."""


class SolverError(LpError):
    """The solver failed to certify a result (numerical breakdown or
    iteration cap); distinct from any LP status."""


def _check_entries(rows, mode, what):
    for i, row in enumerate(rows):
        for v in row:
            ok = is_rational(v) if mode == "rational" else isinstance(v, (int, float))
            if not ok:
                raise LpFormatError(f"{what} row {i}: entry {v!r} invalid in {mode} mode")


@dataclass
class LinearProgram:
    """Dense LP over exact rationals or binary64 floats.

    eq_rows/ineq_rows are lists of coefficient rows; either list may be
    empty but not both.  Variable lower bounds default to 0 for every
    variable.
    """

    variable_count: int
    objective_coeffs: list
    objective_sense: str = MAXIMIZE
    eq_rows: list = field(default_factory=list)
    eq_rhs: list = field(default_factory=list)
    ineq_rows: list = field(default_factory=list)
    ineq_rhs: list = field(default_factory=list)
    var_lower_bounds: Optional[list] = None
    mode: str = "rational"

    def __post_init__(self):
        n = self.variable_count
        if n <= 0:
            raise LpFormatError("variable_count must be positive")
        if self.objective_sense not in (MAXIMIZE, MINIMIZE):
            raise LpFormatError(f"bad objective_sense {self.objective_sense!r}")
        if self.mode not in ("rational", "float"):
            raise LpFormatError(f"bad mode {self.mode!r}")
        if len(self.objective_coeffs) != n:
            raise LpFormatError("objective length != variable_count")
        if len(self.eq_rows) != len(self.eq_rhs):
            raise LpFormatError("eq_rows / eq_rhs length mismatch")
        if len(self.ineq_rows) != len(self.ineq_rhs):
            raise LpFormatError("ineq_rows / ineq_rhs length mismatch")
        if not self.eq_rows and not self.ineq_rows:
            raise LpFormatError("LP must have at least one constraint row")
        for row in self.eq_rows:
            if len(row) != n:
                raise LpFormatError("eq row width != variable_count")
        for row in self.ineq_rows:
            if len(row) != n:
                raise LpFormatError("ineq row width != variable_count")
        if self.var_lower_bounds is None:
            zero = rat(0) if self.mode == "rational" else 0.0
            self.var_lower_bounds = [zero] * n
        elif len(self.var_lower_bounds) != n:
            raise LpFormatError("var_lower_bounds length != variable_count")
        _check_entries(self.eq_rows, self.mode, "eq")
        _check_entries(self.ineq_rows, self.mode, "ineq")
        _check_entries([self.objective_coeffs, self.eq_rhs, self.ineq_rhs,
                        self.var_lower_bounds], self.mode, "vector")

    @property
    def n_rows(self) -> int:
        return len(self.eq_rows) + len(self.ineq_rows)

    def dump_text(self) -> str:
        """Plain-text dump, one constraint per line, rationals as p/q."""

        def fmt(v):
            return rat_str(v) if self.mode == "rational" else repr(v)

        def line(row, rel, rhs):
            terms = " ".join(f"{fmt(c)}*x{j}" for j, c in enumerate(row) if c)
            return f"{terms or '0'} {rel} {fmt(rhs)}"

        out = [f"{self.objective_sense} " +
               " ".join(f"{fmt(c)}*x{j}" for j, c in enumerate(self.objective_coeffs) if c)]
        out += [line(r, "=", b) for r, b in zip(self.eq_rows, self.eq_rhs)]
        out += [line(r, "<=", h) for r, h in zip(self.ineq_rows, self.ineq_rhs)]
        out += [f"x{j} >= {fmt(lb)}" for j, lb in enumerate(self.var_lower_bounds)]
        return "\n".join(out)


@dataclass
class DualCertificate:
    """Exact dual data accompanying a rational-mode optimum.

    ``eq_duals``/``ineq_duals`` are multipliers for the original rows;
    strong duality (dual objective == primal objective) and dual
    feasibility were verified exactly by the solver.
    """

    eq_duals: list
    ineq_duals: list
    objective_value: object


@dataclass
class LpSolution:
    status: str
    objective_value: Optional[object] = None
    primal_point: Optional[list] = None
    dual: Optional[DualCertificate] = None
    iterations: int = 0
    method: str = ""

    def __post_init__(self):
        if self.status not in (OPTIMAL, INFEASIBLE, UNBOUNDED):
            raise ValueError(f"bad status {self.status!r}")
        if self.status == OPTIMAL:
            assert self.objective_value is not None and self.primal_point is not None


def residuals(lp: LinearProgram, point: Sequence) -> tuple:
    """(max |A x - b|, max positive part of G x - h, max bound violation).

    Used by tests and by float-mode feasibility checks.
    """
    def dot(row):
        return sum(c * v for c, v in zip(row, point) if c)

    eq = max((abs(dot(r) - b) for r, b in zip(lp.eq_rows, lp.eq_rhs)), default=0)
    ineq = max((dot(r) - h for r, h in zip(lp.ineq_rows, lp.ineq_rhs)), default=0)
    lb = max((lb_j - v for lb_j, v in zip(lp.var_lower_bounds, point)), default=0)
    zero = 0 if lp.mode == "float" else rat(0)
    return eq, max(ineq, zero), max(lb, zero)
