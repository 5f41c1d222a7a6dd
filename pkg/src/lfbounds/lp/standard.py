"""Standard-form conversion and exact presolve.

Both solvers run on the same internal form:

    minimize c.z   subject to   M z = b,  z >= 0,  b >= 0

with z = [shifted structural variables | slacks].  Every row also owns an
implicit artificial (unit) column used to seed phase one.  The conversion
happens once, exactly, in rational mode; the float solver consumes a
float copy, so both see identical row/column indexing.

The presolve step removes linearly dependent equality rows by exact
sparse elimination (it can also prove infeasibility outright when a
dependent row has an inconsistent right-hand side).  It runs in rational
mode only; float mode tolerates redundancy via pivot-out-or-drop.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from lfbounds.lp.kernels import axpy_sparse
from lfbounds.lp.model import MAXIMIZE, LinearProgram
from lfbounds.rational import rat


def independent_eq_rows(lp: LinearProgram, drop_tol: float = 0.0):
    """Classify equality rows by exact elimination over the coefficients.

    Returns (kept_indices, infeasible_row).  In rational mode a
    dependent row with a nonzero eliminated right-hand side proves
    infeasibility and its index is returned.  In float mode the
    elimination runs only over rows with integral coefficients
    (rationalized exactly); a dependent row is dropped when its
    eliminated rhs is within ``drop_tol`` and kept for the simplex to
    judge otherwise, so presolve never declares float infeasibility.
    """
    exact = lp.mode == "rational"
    pivots = {}   # pivot column -> normalized reduced row
    piv_rhs = {}  # pivot column -> reduced rhs
    kept = []
    for idx, (row, b) in enumerate(zip(lp.eq_rows, lp.eq_rhs)):
        if exact:
            cur = {j: v for j, v in enumerate(row) if v}
        else:
            cur = {}
            integral = True
            for j, v in enumerate(row):
                if v:
                    if v != int(v):
                        integral = False
                        break
                    cur[j] = rat(int(v))
            if not integral:
                kept.append(idx)
                continue
        rhs = b
        while True:
            hit = next((c for c in cur if c in pivots), None)
            if hit is None:
                break
            f = cur[hit]
            prhs = piv_rhs[hit]
            axpy_sparse(cur, pivots[hit], f)
            if prhs:
                rhs = rhs - (f * prhs if exact else float(f) * prhs)
        if not cur:
            if exact:
                if rhs:
                    return kept, idx
            elif abs(rhs) > drop_tol:
                kept.append(idx)
            continue
        piv = next(iter(cur))
        inv = 1 / cur[piv]
        if inv != 1:
            cur = {j: v * inv for j, v in cur.items()}
            rhs = rhs * inv if exact else rhs * float(inv)
        pivots[piv] = cur
        piv_rhs[piv] = rhs
        kept.append(idx)
    return kept, None


@dataclass
class StandardForm:
    """Exact min-form standard LP plus the bookkeeping to map back."""

    n_struct: int
    n_slack: int
    cols: list            # sparse columns, dict row -> exact coeff
    b: list               # exact rhs, >= 0
    c: list               # exact min-form costs over struct + slack
    obj_const: object     # constant from lower-bound shift
    negated: bool         # True when the original sense was maximize
    row_sign: list        # +1/-1 applied to each kept row
    row_origin: list      # ("eq", i) or ("ineq", i) per kept row
    lb: list              # original lower bounds (struct vars)
    kept_eq: list         # indices of equality rows that survived presolve

    @property
    def n_rows(self) -> int:
        return len(self.b)

    @property
    def n_cols(self) -> int:
        return self.n_struct + self.n_slack

    def float_arrays(self):
        """Dense float copies (M, b, c) for the float simplex."""
        m = np.zeros((self.n_rows, self.n_cols))
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                m[i, j] = float(v)
        bf = np.array([float(v) for v in self.b])
        cf = np.array([float(v) for v in self.c])
        return m, bf, cf

    def unshift_point(self, z):
        """Map standard-form values back to original variables."""
        return [z[j] + self.lb[j] for j in range(self.n_struct)]

    def unshift_objective(self, value):
        value = value + self.obj_const
        return -value if self.negated else value


def to_standard_form(lp: LinearProgram, kept_eq=None) -> StandardForm:
    """Build the exact standard form (rational entries even for float-mode
    programs built from rationals is fine; float-mode programs carry
    floats through unchanged)."""
    exact = lp.mode == "rational"
    mk = rat if exact else float
    zero = mk(0)
    one = mk(1)

    if kept_eq is None:
        kept_eq = list(range(len(lp.eq_rows)))
    lb = list(lp.var_lower_bounds)
    any_lb = any(v != 0 for v in lb)

    n_struct = lp.variable_count
    n_slack = len(lp.ineq_rows)
    cols = [dict() for _ in range(n_struct + n_slack)]
    b = []
    row_sign = []
    row_origin = []

    def add_row(row, rhs, origin, slack_col=None):
        i = len(b)
        if any_lb:
            rhs = rhs - sum(cv * lv for cv, lv in zip(row, lb) if cv and lv)
        sign = 1
        if rhs < 0:
            sign = -1
            rhs = -rhs
        for j, v in enumerate(row):
            if v:
                cols[j][i] = v if sign == 1 else -v
        if slack_col is not None:
            cols[slack_col][i] = one if sign == 1 else -one
        b.append(rhs)
        row_sign.append(sign)
        row_origin.append(origin)

    for i in kept_eq:
        add_row(lp.eq_rows[i], lp.eq_rhs[i], ("eq", i))
    for i, (row, rhs) in enumerate(zip(lp.ineq_rows, lp.ineq_rhs)):
        add_row(row, rhs, ("ineq", i), slack_col=n_struct + i)

    negated = lp.objective_sense == MAXIMIZE
    c = []
    for j in range(n_struct):
        cj = lp.objective_coeffs[j]
        cj = mk(cj) if isinstance(cj, int) else cj
        c.append(-cj if negated else cj)
    c.extend([zero] * n_slack)
    obj_const = sum(
        (cv * lv for cv, lv in zip(c[:n_struct], lb) if cv and lv), zero
    )

    return StandardForm(
        n_struct=n_struct,
        n_slack=n_slack,
        cols=cols,
        b=b,
        c=c,
        obj_const=obj_const,
        negated=negated,
        row_sign=row_sign,
        row_origin=row_origin,
        lb=lb,
        kept_eq=kept_eq,
    )


def map_duals(lp: LinearProgram, sf: StandardForm, y):
    """Translate internal min-form row duals back to original rows.

    Internal problem is min c_int.z with c_int = (sense-adjusted) costs;
    for a maximize original the whole objective was negated, so duals
    flip sign too.  Row negation during rhs normalization flips the
    corresponding multiplier.
    """
    flip = -1 if sf.negated else 1
    eq_duals = [None] * len(lp.eq_rows)
    ineq_duals = [None] * len(lp.ineq_rows)
    zero = rat(0) if lp.mode == "rational" else 0.0
    for (kind, i), sign, yi in zip(sf.row_origin, sf.row_sign, y):
        val = yi * sign * flip
        if kind == "eq":
            eq_duals[i] = val
        else:
            ineq_duals[i] = val
    # dropped (dependent) equality rows carry zero multipliers
    eq_duals = [zero if v is None else v for v in eq_duals]
    ineq_duals = [zero if v is None else v for v in ineq_duals]
    return eq_duals, ineq_duals
