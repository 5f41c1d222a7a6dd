"""Reference exact simplex: dense two-phase tableau over rationals.

Self-contained and deliberately simple; used directly for small
programs and as an independent cross-check of the hybrid
(float-then-certify) path in tests.  Same pivoting discipline as the
rest of the package: Dantzig pricing, Bland's smallest-index rule after
a degenerate streak, artificials frozen once they leave the basis.
"""

from __future__ import annotations

from lfbounds.lp.certify import CertifyFailure
from lfbounds.lp.kernels import pivot_dense
from lfbounds.lp.standard import StandardForm
from lfbounds.rational import rat


class ExactTableau:
    def __init__(self, sf: StandardForm):
        self.sf = sf
        self.n_rows = sf.n_rows
        self.n_cols = sf.n_cols
        zero = rat(0)
        one = rat(1)
        width = self.n_cols + self.n_rows + 1
        body = []
        for i in range(self.n_rows):
            row = [zero] * width
            row[self.n_cols + i] = one
            row[-1] = sf.b[i]
            body.append(row)
        for j, col in enumerate(sf.cols):
            for i, v in col.items():
                body[i][j] = v
        self.rows = body + [[zero] * width]  # cost row last
        self.basis = list(range(self.n_cols, self.n_cols + self.n_rows))
        self.allowed = [True] * (self.n_cols + self.n_rows)
        self.iterations = 0
        self.zero = zero
        self.one = one

    def _set_costs(self, costs):
        """Exact reduced-cost row for the current basis."""
        width = self.n_cols + self.n_rows
        cost_row = list(costs) + [self.zero]
        for i, j in enumerate(self.basis):
            cb = costs[j]
            if cb:
                row = self.rows[i]
                for k in range(width + 1):
                    if row[k]:
                        cost_row[k] = cost_row[k] - cb * row[k]
        self.rows[-1] = cost_row

    def _phase(self, costs, freeze, stall_limit):
        self._set_costs(costs)
        bland = False
        stale = 0
        last = None
        cost_row = self.rows[-1]
        while True:
            cost_row = self.rows[-1]
            enter = None
            best = self.zero
            for j in range(self.n_cols + self.n_rows):
                if not self.allowed[j]:
                    continue
                d = cost_row[j]
                if d < 0:
                    if bland:
                        enter = j
                        break
                    if d < best:
                        best = d
                        enter = j
            if enter is None:
                return None
            pr = None
            best_key = None
            for i in range(self.n_rows):
                a = self.rows[i][enter]
                if a > 0:
                    key = (self.rows[i][-1] / a, self.basis[i])
                    if best_key is None or key < best_key:
                        best_key = key
                        pr = i
            if pr is None:
                return enter  # unbounded
            leaving = self.basis[pr]
            pivot_dense(self.rows, pr, enter)
            self.basis[pr] = enter
            self.iterations += 1
            if freeze and leaving >= self.n_cols:
                self.allowed[leaving] = False
            obj = -cost_row[-1]
            if last is None or obj < last:
                stale = 0
                bland = False
                last = obj
            else:
                stale += 1
                if stale > stall_limit:
                    bland = True

    def solve(self):
        """Returns (status, z_values, y_duals, objective_std)."""
        ntot = self.n_cols + self.n_rows
        stall = max(50, self.n_rows)
        phase1 = [self.zero] * self.n_cols + [self.one] * self.n_rows
        out = self._phase(phase1, freeze=True, stall_limit=stall)
        assert out is None  # phase 1 cannot be unbounded
        if -self.rows[-1][-1] > 0:
            return "infeasible", None, None, None

        for pr in range(self.n_rows):
            if self.basis[pr] < self.n_cols:
                continue
            row = self.rows[pr]
            enter = next(
                (j for j in range(self.n_cols) if row[j]), None
            )
            if enter is None:
                raise CertifyFailure("dependent row survived presolve")
            pivot_dense(self.rows, pr, enter)
            self.basis[pr] = enter
            self.iterations += 1

        for j in range(self.n_cols, ntot):
            self.allowed[j] = False
        costs = list(self.sf.c) + [self.zero] * self.n_rows
        out = self._phase(costs, freeze=False, stall_limit=stall)
        if out is not None:
            return "unbounded", None, None, None

        z = [self.zero] * self.n_cols
        for i, j in enumerate(self.basis):
            if j < self.n_cols:
                z[j] = self.rows[i][-1]
        cost_row = self.rows[-1]
        y = [-cost_row[self.n_cols + i] for i in range(self.n_rows)]
        obj = sum((cj * zj for cj, zj in zip(self.sf.c, z) if zj), self.zero)
        return "optimal", z, y, obj
