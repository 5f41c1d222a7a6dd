"""Front door of the LP module: solve() and check_feasible().

Rational mode runs the hybrid pipeline: exact presolve, float simplex
for basis discovery, exact certification of whatever the float pass
claims, exact repair/fallback when certification fails.  Every rational
optimum therefore comes with an exactly verified dual certificate.
Float mode runs the float simplex alone under the feasibility tolerance
``tol``.

Solves hold no shared mutable state; concurrent solves over independent
programs are safe.
"""

from __future__ import annotations

from lfbounds.lp import certify as _certify
from lfbounds.lp.floattableau import FloatTols, solve_standard_floats
from lfbounds.lp.model import (
    INFEASIBLE,
    OPTIMAL,
    UNBOUNDED,
    DualCertificate,
    LinearProgram,
    LpSolution,
    SolverError,
    residuals,
)
from lfbounds.lp.standard import (
    StandardForm,
    independent_eq_rows,
    map_duals,
    to_standard_form,
)
from lfbounds.lp.tableau import ExactTableau
from lfbounds.rational import rat


def _rational_solution(lp, sf: StandardForm, basis, xb, y, iters, method):
    z = [rat(0)] * sf.n_cols
    for p, j in enumerate(basis):
        if j < sf.n_cols:
            z[j] = xb[p]
    obj_std = sum((sf.c[j] * v for j, v in zip(basis, xb)
                   if j < sf.n_cols and v), rat(0))
    eq_duals, ineq_duals = map_duals(lp, sf, y)
    value = sf.unshift_objective(obj_std)
    return LpSolution(
        status=OPTIMAL,
        objective_value=value,
        primal_point=sf.unshift_point(z),
        dual=DualCertificate(eq_duals, ineq_duals, value),
        iterations=iters,
        method=method,
    )


def _solve_rational(lp: LinearProgram, method: str) -> LpSolution:
    kept, bad_row = independent_eq_rows(lp)
    if bad_row is not None:
        return LpSolution(status=INFEASIBLE, method="presolve")
    sf = to_standard_form(lp, kept)

    if method == "tableau":
        tab = ExactTableau(sf)
        status, z, y, obj = tab.solve()
        if status == "optimal":
            basis = tab.basis
            xb = [tab.rows[i][-1] for i in range(tab.n_rows)]
            return _rational_solution(lp, sf, basis, xb, y,
                                      tab.iterations, "tableau")
        return LpSolution(status=status, iterations=tab.iterations,
                          method="tableau")

    engine = _certify.ExactEngine(sf)

    if method == "exact":
        status, basis, xb, y, enter = engine.solve_exact()
        if status == "optimal":
            return _rational_solution(lp, sf, basis, xb, y, 0, "exact")
        return LpSolution(status=status, method="exact")

    # hybrid (default): float basis discovery + exact certification.
    # Discovery runs with a tiny rhs perturbation first (fast on these
    # degenerate polytope LPs); any claim that fails exact verification
    # is retried unperturbed, then repaired exactly.
    m, b, c = sf.float_arrays()
    fres = None
    for perturb in (1e-10, 0.0):
        fres = solve_standard_floats(m, b, c, perturb=perturb)
        if fres.status == "infeasible" and perturb:
            continue  # may be an artifact of the perturbation
        try:
            if fres.status == "optimal" and not fres.dropped_rows:
                xb, y = engine.certify_optimal(fres.basis)
                return _rational_solution(lp, sf, fres.basis, xb, y,
                                          fres.iterations, "hybrid")
            if fres.status == "infeasible":
                engine.certify_infeasible(fres.basis)
                return LpSolution(status=INFEASIBLE, iterations=fres.iterations,
                                  method="hybrid")
            if fres.status == "unbounded":
                engine.certify_unbounded(fres.basis, fres.entering)
                return LpSolution(status=UNBOUNDED, iterations=fres.iterations,
                                  method="hybrid")
        except _certify.CertifyFailure:
            continue

    # nothing certified: exact repair from the last basis, or from scratch
    start = fres.basis if fres.basis and not fres.dropped_rows else None
    if start is not None:
        status, basis, xb, y, enter = _certify.repair_or_solve(engine, start)
    else:
        status, basis, xb, y, enter = engine.solve_exact()
    if status == "optimal":
        return _rational_solution(lp, sf, basis, xb, y,
                                  fres.iterations, "hybrid+repair")
    return LpSolution(status=status, iterations=fres.iterations,
                      method="hybrid+repair")


def _solve_float(lp: LinearProgram, tol: float) -> LpSolution:
    scale = 1.0 + max((abs(float(v)) for v in lp.eq_rhs), default=0.0)
    kept, _ = independent_eq_rows(lp, drop_tol=100 * tol * scale)
    sf = to_standard_form(lp, kept)
    m, b, c = sf.float_arrays()
    fres = solve_standard_floats(m, b, c, FloatTols(feas=tol), perturb=1e-10)
    if fres.status == "infeasible":
        # rule out a perturbation artifact before reporting infeasibility
        fres = solve_standard_floats(m, b, c, FloatTols(feas=tol))
    if fres.status == "stalled":
        raise SolverError("float simplex stalled; no certified result")
    if fres.status != "optimal":
        return LpSolution(status=fres.status, iterations=fres.iterations,
                          method="float")
    z = list(fres.z)
    point = sf.unshift_point(z)
    eq_r, ineq_r, lb_r = residuals(lp, point)
    allowance = tol * 100 * (1.0 + max((abs(v) for v in point), default=1.0))
    if max(float(eq_r), float(ineq_r), float(lb_r)) > allowance:
        raise SolverError(
            f"float solution violates tolerance: residuals "
            f"{float(eq_r):.2e}/{float(ineq_r):.2e}/{float(lb_r):.2e}"
        )
    value = sf.unshift_objective(float(c @ fres.z))
    return LpSolution(
        status=OPTIMAL,
        objective_value=value,
        primal_point=point,
        iterations=fres.iterations,
        method="float",
    )


def solve(lp: LinearProgram, method: str = "auto", tol: float = 1e-9) -> LpSolution:
    """Solve an LP to proven optimality.

    method: "auto" (hybrid float+exact in rational mode), "exact"
    (revised simplex, all-rational), or "tableau" (dense exact reference).
    Float-mode programs always use the float simplex with feasibility
    tolerance ``tol``.
    """
    if lp.mode == "float":
        return _solve_float(lp, tol)
    if method == "auto":
        method = "hybrid"
    if method not in ("hybrid", "exact", "tableau"):
        raise ValueError(f"unknown method {method!r}")
    return _solve_rational(lp, method)


def check_feasible(lp: LinearProgram, tol: float = 1e-9) -> str:
    """Phase-one feasibility: returns "feasible" or "infeasible"."""
    zero = rat(0) if lp.mode == "rational" else 0.0
    probe = LinearProgram(
        variable_count=lp.variable_count,
        objective_coeffs=[zero] * lp.variable_count,
        objective_sense="minimize",
        eq_rows=lp.eq_rows,
        eq_rhs=lp.eq_rhs,
        ineq_rows=lp.ineq_rows,
        ineq_rhs=lp.ineq_rhs,
        var_lower_bounds=lp.var_lower_bounds,
        mode=lp.mode,
    )
    sol = solve(probe, tol=tol)
    return "feasible" if sol.status == OPTIMAL else "infeasible"
