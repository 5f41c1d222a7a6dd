"""The two non-absoluteness quantifiers.

* fraction: smallest weight that must be carried by a general
  no-signalling component when the behaviour is split into a
  friend-respecting (zero-relaxation) part and a no-signalling part.
  One LP, with the friend-respecting part as a sub-normalized cone
  (standard EPR2-style homogenization, no bilinear terms).
* coefficient: twice the smallest relaxation eps such that the
  behaviour admits a friend-respecting model at that relaxation; a
  single LP with eps as an extra variable.

Both reject signalling inputs up front and return witnesses alongside
the value.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from lfbounds.behavior import Behavior, check_no_signalling, marginalize
from lfbounds.lf_sets import (
    FREE,
    SignallingInputError,
    _aoe_row_indices,
    _family_rows,
    _ns_family_rows,
    _rest_contexts,
    build_rlf_lp,
    min_epsilon,
)
from lfbounds.lp import LinearProgram, OPTIMAL, SolverError, solve
from lfbounds.rational import rat
from lfbounds.scenario import ScenarioSpec


@dataclass
class MeasureResult:
    measure: str                  # "fraction" or "coefficient"
    value: object
    mode: str
    tolerance: float
    epsilon_star: object = None   # coefficient only
    weights: Optional[tuple] = None       # fraction only: (w_lf, w_ns)
    witness: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        def num(v):
            return str(v) if self.mode == "rational" else float(v)

        doc = {
            "measure": self.measure,
            "value": num(self.value),
            "mode": self.mode,
            "tolerance": self.tolerance,
        }
        if self.epsilon_star is not None:
            doc["epsilon_star"] = num(self.epsilon_star)
        if self.weights is not None:
            doc["weights"] = [num(w) for w in self.weights]
        return doc


def _require_no_signalling(behavior: Behavior, tol: float):
    report = check_no_signalling(behavior)
    limit = tol if behavior.mode == "float" else 0
    if not report.holds(limit):
        raise SignallingInputError(
            f"behaviour signals (max violation "
            f"{float(report.max_violation):.3e} at {report.worst})")


def non_absoluteness_coefficient(behavior: Behavior, tol: float = 1e-9,
                                 method: str = "auto") -> MeasureResult:
    """min 2*eps over relaxations admitting a model of the behaviour."""
    _require_no_signalling(behavior, tol)
    sol = min_epsilon(behavior, ns_tol=tol, method=method)
    sc = behavior.scenario
    eps = sol.primal_point[sc.joint_size]
    joint = sol.primal_point[: sc.joint_size]
    return MeasureResult(
        measure="coefficient",
        value=sol.objective_value,
        mode=behavior.mode,
        tolerance=tol,
        epsilon_star=eps,
        witness={"joint_model": joint},
    )


def _fraction_lp(behavior: Behavior):
    """EPR2-style decomposition LP.

    Variables: sub-normalized friend-respecting joint model (cone part,
    exact agreement rows imposed homogeneously) followed by a
    sub-normalized no-signalling behaviour block.  Matching rows pin
    their sum to the observed behaviour; the objective maximizes the
    friend-respecting weight.
    """
    sc = behavior.scenario
    exact = behavior.mode == "rational"
    zero = rat(0) if exact else 0.0
    one = rat(1) if exact else 1.0
    n_q = sc.joint_size
    n_r = sc.behavior_size
    n_vars = n_q + n_r

    eq_rows = []
    eq_rhs = []

    def emit(row_dict, rhs):
        row = [zero] * n_vars
        for j, v in row_dict.items():
            row[j] = v
        eq_rows.append(row)
        eq_rhs.append(rhs)

    # friend-respecting cone: families, uniform weight across contexts,
    # and zero mass on friend-disagreement at the friend inputs
    for row in _family_rows(sc, zero, one):
        emit(row, zero)
    ctx0 = next(iter(sc.contexts()))
    base = {sc.j_index(outs, fouts, ctx0): one
            for outs in sc.outcomes() for fouts in sc.friend_outcomes()}
    for ctx in sc.contexts():
        if ctx == ctx0:
            continue
        row = dict(base)
        for outs in sc.outcomes():
            for fouts in sc.friend_outcomes():
                j = sc.j_index(outs, fouts, ctx)
                row[j] = row.get(j, zero) - one
        emit(row, zero)
    for party in range(sc.parties):
        for rest in _rest_contexts(sc, party):
            agree = set(_aoe_row_indices(sc, party, rest))
            ctx = list(rest[:party]) + [sc.friend_inputs[party]] + list(rest[party:])
            row = {}
            for outs in sc.outcomes():
                for fouts in sc.friend_outcomes():
                    j = sc.j_index(outs, fouts, tuple(ctx))
                    if j not in agree:
                        row[j] = one
            emit(row, zero)

    # no-signalling block over behaviour entries
    for row in _ns_family_rows(sc, zero, one):
        emit({n_q + j: v for j, v in row.items()}, zero)

    # matching rows
    for ctx in sc.contexts():
        for outs in sc.outcomes():
            row = {n_q + sc.b_index(outs, ctx): one}
            for fouts in sc.friend_outcomes():
                row[sc.j_index(outs, fouts, ctx)] = one
            emit(row, behavior.p(outs, ctx))

    coeffs = [zero] * n_vars
    for j in base:
        coeffs[j] = one

    return LinearProgram(
        variable_count=n_vars,
        objective_coeffs=coeffs,
        objective_sense="maximize",
        eq_rows=eq_rows,
        eq_rhs=eq_rhs,
        mode=behavior.mode,
    ), n_q


def non_absoluteness_fraction(behavior: Behavior, tol: float = 1e-9,
                              method: str = "auto") -> MeasureResult:
    """1 - (largest friend-respecting weight in a two-part decomposition)."""
    _require_no_signalling(behavior, tol)
    lp, n_q = _fraction_lp(behavior)
    sol = solve(lp, method=method)
    if sol.status != OPTIMAL:
        raise SolverError(f"decomposition LP ended {sol.status}; a trivial "
                          f"all-no-signalling split always exists")
    sc = behavior.scenario
    exact = behavior.mode == "rational"
    one = rat(1) if exact else 1.0
    w = sol.objective_value
    value = one - w
    q_part = sol.primal_point[:n_q]
    r_part = sol.primal_point[n_q:]
    witness = {"lf_joint_subnormalized": q_part,
               "ns_part_subnormalized": r_part}
    if w and (exact or w > tol):
        lf_joint = [v / w for v in q_part]
        from lfbounds.behavior import JointModel
        witness["lf_behavior"] = marginalize(
            JointModel(sc, tuple(lf_joint), behavior.mode))
    if value and (exact or value > tol):
        witness["ns_behavior"] = Behavior(
            sc, tuple(v / value for v in r_part), behavior.mode)
    return MeasureResult(
        measure="fraction",
        value=value,
        mode=behavior.mode,
        tolerance=tol,
        weights=(w, value),
        witness=witness,
    )


def af_lower_bound(omega_q, omega_lf, omega_ns):
    """max(0, 1 - (ns - q) / (ns - lf)): the witness-based floor on the
    fraction measure from one inequality's values."""
    if omega_ns == omega_lf:
        raise ValueError("degenerate bound: ns and lf values coincide")
    if omega_lf > omega_ns:
        raise ValueError("lf bound exceeds ns bound")
    if omega_q > omega_ns:
        raise ValueError("quantum value exceeds the ns maximum")
    ratio = (omega_ns - omega_q) / (omega_ns - omega_lf)
    bound = 1 - ratio
    zero = bound - bound  # typed zero (rational or float)
    return bound if bound > zero else zero


def mermin_measures(behavior: Behavior, tol: float = 1e-9,
                    method: str = "auto"):
    """(coefficient, fraction) for a tripartite behaviour."""
    if behavior.scenario.parties != 3:
        raise ValueError("tripartite behaviour required")
    ac = non_absoluteness_coefficient(behavior, tol=tol, method=method)
    af = non_absoluteness_fraction(behavior, tol=tol, method=method)
    return ac, af
