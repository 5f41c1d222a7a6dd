"""Exact layer of the hybrid solver.

The float simplex proposes a basis; everything here re-derives the
result in exact rational arithmetic: basic solution, dual vector,
reduced costs, Farkas/unboundedness certificates.  When a float claim
does not certify, a revised primal simplex with exact arithmetic (Bland
fallback, hence finite) repairs the basis or solves from scratch.
"""

from __future__ import annotations

from typing import Optional

from lfbounds.lp.kernels import axpy_sparse, dot_sparse
from lfbounds.lp.model import SolverError
from lfbounds.lp.standard import StandardForm
from lfbounds.rational import rat


class CertifyFailure(Exception):
    """Float-proposed data did not survive exact verification."""


def solve_sparse(rows, rhs):
    """Exact Gauss-Jordan solve of a square sparse system.

    ``rows`` is a list of dicts (column -> rational); it is consumed.
    Returns the solution list indexed by column, or None if singular.
    Pivots are chosen smallest-row-first with a Markowitz-style column
    tie-break to limit fill-in.
    """
    n = len(rows)
    rhs = list(rhs)
    col_rows = {}
    for i, row in enumerate(rows):
        for c in row:
            col_rows.setdefault(c, set()).add(i)

    piv_col_of = [None] * n
    unpivoted = set(range(n))
    for _ in range(n):
        r = min(unpivoted, key=lambda i: (len(rows[i]), i), default=None)
        if r is None or not rows[r]:
            return None
        c = min(rows[r], key=lambda j: (len(col_rows.get(j, ())), j))
        piv = rows[r][c]
        if piv != 1:
            inv = 1 / piv
            rows[r] = {j: v * inv for j, v in rows[r].items()}
            rhs[r] = rhs[r] * inv
        prow = rows[r]
        for i in list(col_rows.get(c, ())):
            if i == r:
                continue
            row_i = rows[i]
            f = row_i.get(c)
            if f is None or not f:
                col_rows[c].discard(i)
                continue
            before = set(row_i)
            axpy_sparse(row_i, prow, f)
            if rhs[r]:
                rhs[i] = rhs[i] - f * rhs[r]
            after = set(row_i)
            for k in before - after:
                col_rows[k].discard(i)
            for k in after - before:
                col_rows.setdefault(k, set()).add(i)
        unpivoted.discard(r)
        piv_col_of[r] = c

    x = [None] * n
    for r in range(n):
        x[piv_col_of[r]] = rhs[r]
    if any(v is None for v in x):
        return None
    return x


class ExactEngine:
    """Exact basis algebra over one StandardForm."""

    def __init__(self, sf: StandardForm):
        self.sf = sf
        self.n_rows = sf.n_rows
        self.n_cols = sf.n_cols
        self.zero = rat(0)
        self.one = rat(1)

    # columns: structural/slack first, then one artificial per row
    def col(self, j):
        if j < self.n_cols:
            return self.sf.cols[j]
        return {j - self.n_cols: self.one}

    def cost(self, j):
        return self.sf.c[j] if j < self.n_cols else self.zero

    def _check_basis(self, basis):
        if len(basis) != self.n_rows or len(set(basis)) != len(basis):
            raise CertifyFailure("basis has wrong size or repeats")
        for j in basis:
            if not 0 <= j < self.n_cols + self.n_rows:
                raise CertifyFailure("basis column out of range")

    def basic_solution(self, basis):
        rows = [dict() for _ in range(self.n_rows)]
        for p, j in enumerate(basis):
            for i, v in self.col(j).items():
                rows[i][p] = v
        xb = solve_sparse(rows, self.sf.b)
        if xb is None:
            raise CertifyFailure("singular basis (primal)")
        return xb

    def dual_solution(self, basis, costs=None):
        rows = [dict(self.col(j)) for j in basis]
        cb = [self.cost(j) if costs is None else costs[j] for j in basis]
        y = solve_sparse(rows, cb)
        if y is None:
            raise CertifyFailure("singular basis (dual)")
        return y

    def reduced_cost(self, y, j):
        return self.cost(j) - dot_sparse(y, self.col(j))

    def direction(self, basis, enter):
        rows = [dict() for _ in range(self.n_rows)]
        for p, j in enumerate(basis):
            for i, v in self.col(j).items():
                rows[i][p] = v
        w = solve_sparse(rows, self._dense_col(enter))
        if w is None:
            raise CertifyFailure("singular basis (direction)")
        return w

    def _dense_col(self, j):
        out = [self.zero] * self.n_rows
        for i, v in self.col(j).items():
            out[i] = v
        return out

    # ------------------------------------------------------------------
    # certificates
    # ------------------------------------------------------------------
    def certify_optimal(self, basis):
        """Exact (x_B, y) for a claimed optimal basis; raises otherwise."""
        self._check_basis(basis)
        xb = self.basic_solution(basis)
        for p, j in enumerate(basis):
            if xb[p] < 0:
                raise CertifyFailure("basis not primal feasible")
            if j >= self.n_cols and xb[p] != 0:
                raise CertifyFailure("artificial variable still positive")
        y = self.dual_solution(basis)
        basis_set = set(basis)
        for j in range(self.n_cols):
            if j in basis_set:
                continue
            if self.reduced_cost(y, j) < 0:
                raise CertifyFailure("negative reduced cost survives exactly")
        return xb, y

    def certify_infeasible(self, basis):
        """Exact Farkas check from a phase-1-optimal basis."""
        self._check_basis(basis)
        phase1 = [self.zero] * (self.n_cols + self.n_rows)
        for j in range(self.n_cols, self.n_cols + self.n_rows):
            phase1[j] = self.one
        y = self.dual_solution(basis, costs=phase1)
        if dot_sparse(y, {i: bi for i, bi in enumerate(self.sf.b) if bi}) <= 0:
            raise CertifyFailure("Farkas value not positive")
        for j in range(self.n_cols):
            if dot_sparse(y, self.col(j)) > 0:
                raise CertifyFailure("Farkas vector not valid")
        return y

    def certify_unbounded(self, basis, enter):
        """Exact improving-ray check (needs a feasible basis)."""
        self._check_basis(basis)
        if enter is None or not 0 <= enter < self.n_cols:
            raise CertifyFailure("no entering column reported")
        xb = self.basic_solution(basis)
        if any(v < 0 for v in xb):
            raise CertifyFailure("unbounded claim from infeasible basis")
        y = self.dual_solution(basis)
        if self.reduced_cost(y, enter) >= 0:
            raise CertifyFailure("entering column not improving")
        w = self.direction(basis, enter)
        if any(v > 0 for v in w):
            raise CertifyFailure("direction is blocked; not a ray")
        return True

    # ------------------------------------------------------------------
    # exact revised primal simplex (repair + from-scratch fallback)
    # ------------------------------------------------------------------
    def _iterate(self, basis, costs, allowed, stall_limit):
        """Primal iterations until optimal/unbounded.  Dantzig pricing
        switching to Bland after a degenerate streak keeps it finite."""
        bland = False
        stale = 0
        last = None
        while True:
            xb = self.basic_solution(basis)
            if any(v < 0 for v in xb):
                raise CertifyFailure("lost primal feasibility during repair")
            y = self.dual_solution(basis, costs=costs)
            basis_set = set(basis)
            enter = None
            best = self.zero
            for j in range(self.n_cols + self.n_rows):
                if j in basis_set or not allowed[j]:
                    continue
                d = costs[j] - dot_sparse(y, self.col(j))
                if d < 0:
                    if bland:
                        enter = j
                        break
                    if d < best:
                        best = d
                        enter = j
            if enter is None:
                return basis, xb, y, None
            w = self.direction(basis, enter)
            leave_p = None
            best_ratio = None
            for p, wp in enumerate(w):
                if wp > 0:
                    ratio = xb[p] / wp
                    key = (ratio, basis[p])
                    if best_ratio is None or key < best_ratio:
                        best_ratio = key
                        leave_p = p
            if leave_p is None:
                return basis, xb, y, enter  # unbounded along `enter`
            obj = sum(costs[j] * v for j, v in zip(basis, xb) if v)
            if last is not None and not obj < last:
                stale += 1
                if stale > stall_limit:
                    bland = True
            else:
                stale = 0
                bland = False
            last = obj
            basis = list(basis)
            basis[leave_p] = enter
        # unreachable

    def solve_exact(self, basis=None):
        """Full exact solve.  Returns (status, basis, xb, y, enter)."""
        ntot = self.n_cols + self.n_rows
        stall = max(50, self.n_rows)
        if basis is None:
            basis = list(range(self.n_cols, ntot))
            phase1 = [self.zero] * ntot
            for j in range(self.n_cols, ntot):
                phase1[j] = self.one
            allowed = [True] * ntot
            basis, xb, y, enter = self._iterate(basis, phase1, allowed, stall)
            assert enter is None  # phase-1 objective bounded below by 0
            if sum(phase1[j] * v for j, v in zip(basis, xb)) > 0:
                return "infeasible", basis, xb, y, None
            basis = self._drive_out_artificials(basis)

        allowed = [True] * self.n_cols + [False] * self.n_rows
        costs = list(self.sf.c) + [self.zero] * self.n_rows
        basis, xb, y, enter = self._iterate(basis, costs, allowed, stall)
        if enter is not None:
            return "unbounded", basis, xb, y, enter
        return "optimal", basis, xb, y, None

    def _drive_out_artificials(self, basis):
        basis = list(basis)
        for p in range(self.n_rows):
            if basis[p] < self.n_cols:
                continue
            unit = [self.zero] * self.n_rows
            unit[p] = self.one
            rows = [dict(self.col(j)) for j in basis]
            v = solve_sparse(rows, unit)  # row p of B^-1, via B^T
            if v is None:
                raise CertifyFailure("singular basis at drive-out")
            basis_set = set(basis)
            found = None
            for j in range(self.n_cols):
                if j in basis_set:
                    continue
                if dot_sparse(v, self.col(j)):
                    found = j
                    break
            if found is None:
                raise CertifyFailure(
                    "dependent row survived presolve"
                )
            basis[p] = found
        return basis


def repair_or_solve(engine: ExactEngine, basis):
    """Continue exact simplex from a float basis that failed to certify."""
    try:
        status, basis, xb, y, enter = engine.solve_exact(basis=basis)
    except CertifyFailure:
        status, basis, xb, y, enter = engine.solve_exact(basis=None)
    return status, basis, xb, y, enter
