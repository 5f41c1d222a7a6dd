"""Dense two-phase tableau simplex over binary64 floats (numpy).

Serves two roles: the float-mode solver, and the basis-discovery engine
for rational mode (the exact layer re-verifies everything, so float
tolerances here never leak into exact results).

Pivoting: Dantzig rule with a Bland fallback that engages after a long
degenerate streak, plus a hard iteration cap; the cap surfaces as a
"stalled" status so callers can fall back to the exact solver.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np


@dataclass
class FloatTols:
    feas: float = 1e-9       # feasibility / phase-1 acceptance
    pivot: float = 1e-9      # minimal admissible pivot magnitude
    redcost: float = 1e-9    # reduced-cost significance
    drop: float = 1e-7       # "row is dependent" judgement at drive-out
    ratio_tie: float = 1e-9  # relative tie window in the ratio test


@dataclass
class FloatResult:
    status: str              # optimal | infeasible | unbounded | stalled
    z: Optional[np.ndarray] = None
    objective: float = 0.0
    basis: list = field(default_factory=list)
    iterations: int = 0
    entering: Optional[int] = None
    dropped_rows: list = field(default_factory=list)
    phase1_objective: float = 0.0


class _Tableau:
    def __init__(self, m, b, c, tols):
        self.nrows, self.ncols = m.shape
        self.nart = self.nrows
        self.tols = tols
        # layout: [structural+slack | artificials | rhs], cost row last
        self.T = np.zeros((self.nrows + 1, self.ncols + self.nart + 1))
        self.T[:-1, : self.ncols] = m
        self.T[:-1, self.ncols : self.ncols + self.nart] = np.eye(self.nrows)
        self.T[:-1, -1] = b
        self.c_struct = c
        self.basis = list(range(self.ncols, self.ncols + self.nart))
        self.allowed = np.ones(self.ncols + self.nart, dtype=bool)
        self.row_ids = list(range(self.nrows))  # original std-form rows
        self.iterations = 0

    def refresh_costs(self, c_full):
        body = self.T[:-1, :-1]
        rhs = self.T[:-1, -1]
        c_b = c_full[self.basis]
        self.T[-1, :-1] = c_full - c_b @ body
        self.T[-1, -1] = -float(c_b @ rhs)

    def pivot(self, pr, pc):
        T = self.T
        T[pr] /= T[pr, pc]
        col = T[:, pc].copy()
        col[pr] = 0.0
        T -= np.outer(col, T[pr])
        T[:, pc] = 0.0
        T[pr, pc] = 1.0
        self.basis[pr] = pc
        self.iterations += 1

    def choose_entering(self, bland):
        d = self.T[-1, :-1]
        cand = np.where(self.allowed & (d < -self.tols.redcost))[0]
        if cand.size == 0:
            return None
        if bland:
            return int(cand[0])
        return int(cand[np.argmin(d[cand])])

    def ratio_test(self, pc):
        col = self.T[:-1, pc]
        rhs = self.T[:-1, -1]
        rows = np.where(col > self.tols.pivot)[0]
        if rows.size == 0:
            return None
        ratios = rhs[rows] / col[rows]
        best = ratios.min()
        window = self.tols.ratio_tie * (1.0 + abs(best))
        tied = rows[ratios <= best + window]
        # stability first (largest pivot), then lowest basic column index
        piv_mag = col[tied]
        strongest = tied[piv_mag >= piv_mag.max() * (1.0 - 1e-9)]
        return int(min(strongest, key=lambda i: self.basis[i]))

    def run_phase(self, c_full, freeze_leaving_artificials, cap):
        self.refresh_costs(c_full)
        bland = False
        stale = 0
        bland_after = max(200, 2 * self.nrows)
        last_obj = np.inf
        refresh_every = 128
        while True:
            if self.iterations >= cap:
                return "stalled"
            if self.iterations % refresh_every == 0:
                self.refresh_costs(c_full)
            pc = self.choose_entering(bland)
            if pc is None:
                # confirm on freshly recomputed costs before declaring done
                self.refresh_costs(c_full)
                pc = self.choose_entering(bland)
                if pc is None:
                    return "done"
            pr = self.ratio_test(pc)
            if pr is None:
                self.entering = pc
                return "unbounded"
            leaving = self.basis[pr]
            self.pivot(pr, pc)
            if freeze_leaving_artificials and leaving >= self.ncols:
                self.allowed[leaving] = False
            obj = -self.T[-1, -1]
            if obj < last_obj - 1e-12 * (1.0 + abs(obj)):
                stale = 0
                bland = False
                last_obj = obj
            else:
                stale += 1
                if stale > bland_after:
                    bland = True


def solve_standard_floats(m, b, c, tols: FloatTols = FloatTols(), cap: int = 0,
                          perturb: float = 0.0):
    """Two-phase simplex on min c.z s.t. Mz=b, z>=0 (b>=0 expected).

    ``perturb`` adds a tiny seeded positive shift to b, which breaks the
    massive ratio-test ties these degenerate polytope LPs produce (often
    an order of magnitude fewer iterations).  Callers needing exact
    feasibility semantics must re-run unperturbed when the perturbed
    problem comes back infeasible.
    """
    nrows, ncols = m.shape
    if cap <= 0:
        cap = 60 * max(nrows, 10) + 20000
    if nrows == 0:
        if np.any(c < 0):
            return FloatResult(status="unbounded", entering=int(np.argmin(c)))
        return FloatResult(status="optimal", z=np.zeros(ncols), objective=0.0)

    if perturb > 0.0:
        rng = np.random.default_rng(0x5F3759DF)
        b = b + rng.uniform(0.5, 1.5, nrows) * perturb

    tab = _Tableau(m, b, c, tols)
    nart = tab.nart

    c1 = np.zeros(ncols + nart)
    c1[ncols:] = 1.0
    out = tab.run_phase(c1, freeze_leaving_artificials=True, cap=cap)
    if out == "stalled":
        return FloatResult(status="stalled", iterations=tab.iterations)
    if out == "unbounded":  # phase-1 objective is bounded below by 0
        return FloatResult(status="stalled", iterations=tab.iterations)
    phase1 = -tab.T[-1, -1]
    scale = 1.0 + float(np.max(b)) if len(b) else 1.0
    if phase1 > tols.feas * scale:
        return FloatResult(
            status="infeasible",
            basis=list(tab.basis),
            iterations=tab.iterations,
            phase1_objective=phase1,
        )

    # pivot remaining artificials out; drop rows that have no real pivot
    drop = []
    for pr in range(tab.nrows):
        if tab.basis[pr] < ncols:
            continue
        row = tab.T[pr, :ncols]
        cand = np.where(np.abs(row) > tols.drop)[0]
        if cand.size:
            tab.pivot(pr, int(cand[np.argmax(np.abs(row[cand]))]))
        else:
            drop.append(pr)
    if drop:
        keep = [i for i in range(tab.nrows) if i not in set(drop)]
        dropped_ids = [tab.row_ids[i] for i in drop]
        tab.T = np.delete(tab.T, drop, axis=0)
        tab.basis = [tab.basis[i] for i in keep]
        tab.row_ids = [tab.row_ids[i] for i in keep]
        tab.nrows = len(keep)
    else:
        dropped_ids = []

    tab.allowed[ncols:] = False
    c2 = np.concatenate([c, np.zeros(nart)])
    out = tab.run_phase(c2, freeze_leaving_artificials=False, cap=cap)
    if out == "stalled":
        return FloatResult(status="stalled", iterations=tab.iterations)

    result = FloatResult(
        status="unbounded" if out == "unbounded" else "optimal",
        basis=list(tab.basis),
        iterations=tab.iterations,
        dropped_rows=dropped_ids,
        phase1_objective=phase1,
    )
    if out == "unbounded":
        result.entering = tab.entering
        return result
    z = np.zeros(ncols + nart)
    z[tab.basis] = tab.T[:-1, -1]
    result.z = z[:ncols]
    result.objective = float(c @ result.z)
    return result
