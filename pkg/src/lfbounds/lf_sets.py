"""Linear programs over the friend-respecting correlation sets.

The relaxed set with parameter eps is described by joint-model vectors
q(outcomes, friend outcomes | inputs) obeying:

  * normalization per input context;
  * marginal families: for every maximal proper subset S of
    super-observers, p(outcomes of S, all friend outcomes | inputs of S)
    must not depend on the remaining party's input (parameter
    independence + no-superdeterminism in one family; for two parties
    these are the two single-party conditions);
  * relaxed agreement per party i:
    p(a_i = c_i | own input = friend input, rest) >= 1 - eps.

At eps = 0 agreement is exact; at eps = 1/2 the projection to behaviours
is the whole no-signalling set.  eps may also be left free (as an extra
LP variable in [0, 1/2]) to minimize it, which is how the
non-absoluteness coefficient is computed.

Builders return plain LinearProgram values; solving goes through
lfbounds.lp.solve.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Union

from lfbounds.behavior import Behavior, JointModel, check_no_signalling
from lfbounds.inequalities import InequalityExpr, behavior_space_coeffs
from lfbounds.lp import LinearProgram, LpSolution, OPTIMAL, SolverError, solve
from lfbounds.rational import Rat, rat
from lfbounds.scenario import ScenarioSpec

FREE = "free"


class SignallingInputError(ValueError):
    """Input behaviour signals; membership would be vacuously infeasible."""


def _rest_contexts(scenario, party):
    """All input tuples of the other parties, in a fixed order."""
    return list(itertools.product(range(scenario.m),
                                  repeat=scenario.parties - 1))


def _full_ctx(scenario, party, own, rest):
    ctx = list(rest[:party]) + [own] + list(rest[party:])
    return tuple(ctx)


def _family_rows(scenario, zero, one):
    """Parameter-independence + no-superdeterminism equality rows.

    For every maximal proper subset S of super-observers, the marginal
    p(outcomes of S, all friend outcomes | inputs of S, rest) must not
    depend on the remaining party's input.  For two parties these are
    exactly the two single-party families; for three they are the three
    pairwise families (which imply the single-party ones).
    """
    rows = []
    parties = range(scenario.parties)
    size = scenario.parties - 1
    for subset in itertools.combinations(parties, size):
        others = [p for p in parties if p not in subset]
        for sub_outs in itertools.product((0, 1), repeat=size):
            for fouts in scenario.friend_outcomes():
                for sub_inputs in itertools.product(range(scenario.m), repeat=size):
                    base = None
                    for rest in itertools.product(range(scenario.m),
                                                  repeat=len(others)):
                        ctx = [0] * scenario.parties
                        for p, x in zip(subset, sub_inputs):
                            ctx[p] = x
                        for p, x in zip(others, rest):
                            ctx[p] = x
                        ctx = tuple(ctx)
                        idxs = [scenario.j_index(outs, fouts, ctx)
                                for outs in scenario.outcomes()
                                if all(outs[p] == a
                                       for p, a in zip(subset, sub_outs))]
                        if base is None:
                            base = idxs
                            continue
                        row = {}
                        for j in base:
                            row[j] = row.get(j, zero) + one
                        for j in idxs:
                            row[j] = row.get(j, zero) - one
                        rows.append(row)
                        base = idxs
    return rows


def _aoe_row_indices(scenario, party, rest):
    """Joint-model indices contributing to p(a_i = c_i | friend input, rest)."""
    ctx = _full_ctx(scenario, party, scenario.friend_inputs[party], rest)
    idxs = []
    for outs in scenario.outcomes():
        for fouts in scenario.friend_outcomes():
            if outs[party] == fouts[party]:
                idxs.append(scenario.j_index(outs, fouts, ctx))
    return idxs


@dataclass
class RlfLayout:
    """Variable layout of a friend-set LP: q block, then optional eps."""

    scenario: ScenarioSpec
    epsilon: Union[Rat, str]
    n_q: int
    eps_index: Optional[int]

    def joint_from_point(self, point, mode="rational") -> JointModel:
        return JointModel(self.scenario, tuple(point[: self.n_q]), mode)


def build_rlf_lp(
    scenario: ScenarioSpec,
    epsilon,
    objective: Optional[InequalityExpr] = None,
    observed: Optional[Behavior] = None,
    sense: str = "maximize",
    mode: str = "rational",
):
    """LP over the eps-relaxed friend set; returns (LinearProgram, RlfLayout).

    objective=None builds a feasibility/minimize-eps program.  With
    ``observed``, marginal-match rows pin the behaviour of the
    super-observers.  epsilon is an exact rational in [0, 1/2] or "free".
    """
    exact = mode == "rational"
    zero = rat(0) if exact else 0.0
    one = rat(1) if exact else 1.0
    free_eps = epsilon == FREE
    if free_eps:
        if objective is not None:
            raise ValueError("free epsilon is only for minimize-2eps programs")
    else:
        epsilon = rat(epsilon) if exact else float(epsilon)
        half = rat(1, 2) if exact else 0.5
        if not 0 <= epsilon <= half:
            raise ValueError("epsilon must lie in [0, 1/2]")
    if observed is not None and observed.scenario != scenario:
        raise ValueError("observed behaviour scenario mismatch")

    n_q = scenario.joint_size
    n_vars = n_q + (1 if free_eps else 0)
    eps_index = n_q if free_eps else None

    eq_rows = []
    eq_rhs = []

    def emit(row_dict, rhs):
        row = [zero] * n_vars
        for j, v in row_dict.items():
            row[j] = v
        eq_rows.append(row)
        eq_rhs.append(rhs)

    for ctx in scenario.contexts():
        row = {}
        for outs in scenario.outcomes():
            for fouts in scenario.friend_outcomes():
                row[scenario.j_index(outs, fouts, ctx)] = one
        emit(row, one)

    for row in _family_rows(scenario, zero, one):
        emit(row, zero)

    if observed is not None:
        for ctx in scenario.contexts():
            for outs in scenario.outcomes():
                row = {}
                for fouts in scenario.friend_outcomes():
                    row[scenario.j_index(outs, fouts, ctx)] = one
                emit(row, observed.p(outs, ctx))

    ineq_rows = []
    ineq_rhs = []
    for party in range(scenario.parties):
        for rest in _rest_contexts(scenario, party):
            row = [zero] * n_vars
            for j in _aoe_row_indices(scenario, party, rest):
                row[j] = -one
            if free_eps:
                row[eps_index] = -one
                ineq_rhs.append(-one)
            else:
                ineq_rhs.append(-(one - epsilon))
            ineq_rows.append(row)
    if free_eps:
        cap = [zero] * n_vars
        cap[eps_index] = one
        ineq_rows.append(cap)
        ineq_rhs.append(rat(1, 2) if exact else 0.5)

    coeffs = [zero] * n_vars
    if objective is not None:
        if objective.scenario.parties != scenario.parties or \
                objective.scenario.m != scenario.m:
            raise ValueError("objective dimensioned for a different scenario")
        omega = behavior_space_coeffs(objective, exact=exact)
        for ctx in scenario.contexts():
            for outs in scenario.outcomes():
                w = omega[scenario.b_index(outs, ctx)]
                if not w:
                    continue
                for fouts in scenario.friend_outcomes():
                    coeffs[scenario.j_index(outs, fouts, ctx)] = w
    elif free_eps:
        coeffs[eps_index] = rat(2) if exact else 2.0
        sense = "minimize"

    lp = LinearProgram(
        variable_count=n_vars,
        objective_coeffs=coeffs,
        objective_sense=sense,
        eq_rows=eq_rows,
        eq_rhs=eq_rhs,
        ineq_rows=ineq_rows,
        ineq_rhs=ineq_rhs,
        mode=mode,
    )
    return lp, RlfLayout(scenario, FREE if free_eps else epsilon, n_q, eps_index)


def max_over_rlf(ineq: InequalityExpr, epsilon, scenario: ScenarioSpec = None,
                 method: str = "auto", mode: str = "rational"):
    """Exact optimum of a linear functional over the eps-relaxed set."""
    sc = scenario or ineq.scenario
    lp, _ = build_rlf_lp(sc, epsilon, objective=ineq, mode=mode)
    sol = solve(lp, method=method)
    if sol.status != OPTIMAL:
        raise SolverError(f"relaxed-set bound LP ended {sol.status}")
    return sol.objective_value


def rlf_membership(behavior: Behavior, epsilon, ns_tol: float = 1e-9,
                   method: str = "auto"):
    """Is the behaviour inside the eps-relaxed set?  Returns (inside,
    witness JointModel or None).  Signalling inputs are rejected."""
    report = check_no_signalling(behavior)
    if not report.holds(ns_tol if behavior.mode == "float" else 0):
        raise SignallingInputError(
            f"behaviour signals (max violation {float(report.max_violation):.3e} "
            f"at {report.worst}); not a candidate for membership")
    lp, layout = build_rlf_lp(behavior.scenario, epsilon, observed=behavior,
                              mode=behavior.mode)
    sol = solve(lp, method=method)
    if sol.status == OPTIMAL:
        return True, layout.joint_from_point(sol.primal_point, behavior.mode)
    return False, None


def min_epsilon(behavior: Behavior, ns_tol: float = 1e-9,
                method: str = "auto") -> LpSolution:
    """Solve min 2*eps over models reproducing the behaviour.

    Returns the LpSolution of the free-eps LP (objective value is twice
    the minimal relaxation; the primal point carries the joint model and
    eps* in the last coordinate)."""
    report = check_no_signalling(behavior)
    if not report.holds(ns_tol if behavior.mode == "float" else 0):
        raise SignallingInputError(
            f"behaviour signals (max violation {float(report.max_violation):.3e})")
    lp, _ = build_rlf_lp(behavior.scenario, FREE, observed=behavior,
                         mode=behavior.mode)
    sol = solve(lp, method=method)
    if sol.status != OPTIMAL:
        raise SolverError(
            f"free-eps LP ended {sol.status}; every no-signalling behaviour "
            f"should be reachable at eps = 1/2")
    return sol


# ----------------------------------------------------------------------
# no-signalling polytope
# ----------------------------------------------------------------------
def _ns_family_rows(scenario, zero, one):
    """Marginals over each maximal proper party subset must not depend on
    the remaining party's input (for two parties: single-party
    marginals)."""
    rows = []
    parties = range(scenario.parties)
    size = scenario.parties - 1
    for subset in itertools.combinations(parties, size):
        others = [p for p in parties if p not in subset]
        for sub_inputs in itertools.product(range(scenario.m), repeat=size):
            for sub_outs in itertools.product(range(2), repeat=size):
                base = None
                for rest in itertools.product(range(scenario.m),
                                              repeat=len(others)):
                    ctx = [0] * scenario.parties
                    for p, x in zip(subset, sub_inputs):
                        ctx[p] = x
                    for p, x in zip(others, rest):
                        ctx[p] = x
                    ctx = tuple(ctx)
                    idxs = [scenario.b_index(outs, ctx)
                            for outs in scenario.outcomes()
                            if all(outs[p] == a for p, a in zip(subset, sub_outs))]
                    if base is None:
                        base = idxs
                        continue
                    row = {}
                    for j in base:
                        row[j] = row.get(j, zero) + one
                    for j in idxs:
                        row[j] = row.get(j, zero) - one
                    rows.append(row)
                    base = idxs
    return rows


def build_ns_lp(objective: Optional[InequalityExpr], scenario: ScenarioSpec,
                sense: str = "maximize", mode: str = "rational") -> LinearProgram:
    """LP over the no-signalling polytope in behaviour space."""
    exact = mode == "rational"
    zero = rat(0) if exact else 0.0
    one = rat(1) if exact else 1.0
    n = scenario.behavior_size

    eq_rows = []
    eq_rhs = []
    for ctx in scenario.contexts():
        row = [zero] * n
        for outs in scenario.outcomes():
            row[scenario.b_index(outs, ctx)] = one
        eq_rows.append(row)
        eq_rhs.append(one)
    for row_dict in _ns_family_rows(scenario, zero, one):
        row = [zero] * n
        for j, v in row_dict.items():
            row[j] = v
        eq_rows.append(row)
        eq_rhs.append(zero)

    coeffs = [zero] * n
    if objective is not None:
        coeffs = behavior_space_coeffs(objective, exact=exact)
    return LinearProgram(
        variable_count=n,
        objective_coeffs=coeffs,
        objective_sense=sense,
        eq_rows=eq_rows,
        eq_rhs=eq_rhs,
        mode=mode,
    )


def max_over_ns(ineq: InequalityExpr, scenario: ScenarioSpec = None,
                method: str = "auto", mode: str = "rational"):
    sc = scenario or ineq.scenario
    lp = build_ns_lp(ineq, sc, mode=mode)
    sol = solve(lp, method=method)
    if sol.status != OPTIMAL:
        raise SolverError(f"no-signalling bound LP ended {sol.status}")
    return sol.objective_value
