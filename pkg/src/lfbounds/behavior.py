"""Behaviours, joint models, correlators and no-signalling checks.

A Behavior is the observed conditional table p(outcomes | inputs) of the
super-observers; a JointModel additionally carries the friends'
outcomes.  Entries are exact rationals ("rational" mode) or floats
("float" mode); instances are immutable after construction and safe to
share.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Optional

from lfbounds.rational import is_rational, rat, rat_str
from lfbounds.scenario import ScenarioSpec

PARTY_NAMES = "ABC"


class BehaviorFormatError(ValueError):
    """Invalid table data; message names the offending entry/context."""


def _check_entry_mode(v, mode):
    if mode == "rational":
        return is_rational(v)
    return isinstance(v, (int, float))


def _validate_table(scenario, probs, mode, tol, expected_size, group, what):
    if len(probs) != expected_size:
        raise BehaviorFormatError(
            f"{what}: expected {expected_size} entries, got {len(probs)}")
    zero_floor = 0 if mode == "rational" else -tol
    for idx, v in enumerate(probs):
        if not _check_entry_mode(v, mode):
            raise BehaviorFormatError(f"{what}: entry {idx} not valid in {mode} mode")
        if v < zero_floor:
            raise BehaviorFormatError(
                f"{what}: negative entry {v} at {group(idx)}")
    per_ctx = expected_size // scenario.n_contexts
    for ctx in scenario.contexts():
        base = scenario.ctx_index(ctx) * per_ctx
        total = sum(probs[base + t] for t in range(per_ctx))
        if mode == "rational":
            ok = total == 1
        else:
            ok = abs(total - 1.0) <= tol
        if not ok:
            raise BehaviorFormatError(
                f"{what}: context {ctx} sums to {total}, not 1")


@dataclass(frozen=True)
class Behavior:
    scenario: ScenarioSpec
    probs: tuple
    mode: str = "rational"

    def __post_init__(self):
        object.__setattr__(self, "probs", tuple(self.probs))

    def validate(self, tol: float = 1e-9) -> "Behavior":
        def group(idx):
            ctx_i, out_i = divmod(idx, self.scenario.n_outcomes)
            return f"outcome {self._unrank_out(out_i)} context {self._unrank_ctx(ctx_i)}"

        _validate_table(self.scenario, self.probs, self.mode, tol,
                        self.scenario.behavior_size, group, "behavior")
        return self

    def _unrank_ctx(self, i):
        return self._digits(self.scenario.m, self.scenario.parties, i)

    @staticmethod
    def _digits(base, n, value):
        ds = []
        for _ in range(n):
            value, r = divmod(value, base)
            ds.append(r)
        return tuple(reversed(ds))

    def _unrank_out(self, i):
        return self._digits(2, self.scenario.parties, i)

    def p(self, outs, ctx):
        return self.probs[self.scenario.b_index(outs, ctx)]

    def as_float(self) -> "Behavior":
        if self.mode == "float":
            return self
        return Behavior(self.scenario, tuple(float(v) for v in self.probs), "float")


@dataclass(frozen=True)
class JointModel:
    scenario: ScenarioSpec
    probs: tuple
    mode: str = "rational"

    def __post_init__(self):
        object.__setattr__(self, "probs", tuple(self.probs))

    def validate(self, tol: float = 1e-9) -> "JointModel":
        def group(idx):
            per = self.scenario.n_outcomes * self.scenario.n_friend_outcomes
            ctx_i, rest = divmod(idx, per)
            return f"entry {rest} context {Behavior._digits(self.scenario.m, self.scenario.parties, ctx_i)}"

        _validate_table(self.scenario, self.probs, self.mode, tol,
                        self.scenario.joint_size, group, "joint model")
        return self

    def p(self, outs, fouts, ctx):
        return self.probs[self.scenario.j_index(outs, fouts, ctx)]


def marginalize(joint: JointModel) -> Behavior:
    """Sum the friends' outcomes out of a joint model."""
    sc = joint.scenario
    zero = rat(0) if joint.mode == "rational" else 0.0
    probs = [zero] * sc.behavior_size
    for ctx in sc.contexts():
        for outs in sc.outcomes():
            total = zero
            for fouts in sc.friend_outcomes():
                total = total + joint.p(outs, fouts, ctx)
            probs[sc.b_index(outs, ctx)] = total
    return Behavior(sc, tuple(probs), joint.mode)


# ----------------------------------------------------------------------
# correlators
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class CorrelatorTable:
    """Signed expectations of outcome products, all orders.

    ``full`` maps a full input context to the N-party correlator;
    ``lower`` maps (party subset, their inputs) to marginal correlators,
    with remaining parties' inputs averaged uniformly (equal to the
    context-independent value on no-signalling behaviours).
    """

    scenario: ScenarioSpec
    full: dict
    lower: dict

    def single(self, party, x):
        return self.lower[((party,), (x,))]

    def pair(self, parties, inputs):
        return self.lower[(tuple(parties), tuple(inputs))]


def correlators(behavior: Behavior) -> CorrelatorTable:
    sc = behavior.scenario
    zero = rat(0) if behavior.mode == "rational" else 0.0
    full = {}
    for ctx in sc.contexts():
        total = zero
        for outs in sc.outcomes():
            v = behavior.p(outs, ctx)
            if v:
                total = total + ((-1) ** sum(outs)) * v
        full[ctx] = total

    lower = {}
    parties = range(sc.parties)
    for r in range(1, sc.parties):
        for subset in itertools.combinations(parties, r):
            others = [p for p in parties if p not in subset]
            for sub_inputs in itertools.product(range(sc.m), repeat=r):
                total = zero
                count = 0
                for rest in itertools.product(range(sc.m), repeat=len(others)):
                    ctx = [0] * sc.parties
                    for p, x in zip(subset, sub_inputs):
                        ctx[p] = x
                    for p, x in zip(others, rest):
                        ctx[p] = x
                    ctx = tuple(ctx)
                    count += 1
                    for outs in sc.outcomes():
                        v = behavior.p(outs, ctx)
                        if v:
                            sign = (-1) ** sum(outs[p] for p in subset)
                            total = total + sign * v
                if behavior.mode == "rational":
                    total = total / count
                else:
                    total = total / float(count)
                lower[(subset, sub_inputs)] = total
    return CorrelatorTable(sc, full, lower)


def reconstruct_from_correlators(table: CorrelatorTable,
                                 mode: str = "rational") -> Behavior:
    """Inverse of :func:`correlators` on no-signalling behaviours."""
    sc = table.scenario
    n = sc.parties
    norm = rat(1, sc.n_outcomes) if mode == "rational" else 1.0 / sc.n_outcomes
    probs = []
    for ctx in sc.contexts():
        for outs in sc.outcomes():
            total = rat(1) if mode == "rational" else 1.0
            for r in range(1, n):
                for subset in itertools.combinations(range(n), r):
                    sub_inputs = tuple(ctx[p] for p in subset)
                    sign = (-1) ** sum(outs[p] for p in subset)
                    total = total + sign * table.lower[(subset, sub_inputs)]
            total = total + ((-1) ** sum(outs)) * table.full[ctx]
            probs.append(total * norm)
    return Behavior(sc, tuple(probs), mode)


# ----------------------------------------------------------------------
# no-signalling
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class NoSignallingReport:
    max_violation: object
    worst: Optional[tuple]
    per_subset: dict

    def holds(self, tol) -> bool:
        return self.max_violation <= tol


def check_no_signalling(behavior: Behavior) -> NoSignallingReport:
    """Largest deviation of any marginal from input-independence.

    For every proper nonempty subset S of parties and fixed S-inputs and
    S-outcomes, the marginal must not depend on the other parties'
    inputs; the report carries the maximal spread found.
    """
    sc = behavior.scenario
    zero = rat(0) if behavior.mode == "rational" else 0.0
    worst = None
    worst_v = zero
    per_subset = {}
    parties = range(sc.parties)
    for r in range(1, sc.parties):
        for subset in itertools.combinations(parties, r):
            others = [p for p in parties if p not in subset]
            sub_worst = zero
            for sub_inputs in itertools.product(range(sc.m), repeat=r):
                for sub_outs in itertools.product(range(2), repeat=r):
                    vals = []
                    for rest in itertools.product(range(sc.m), repeat=len(others)):
                        ctx = [0] * sc.parties
                        for p, x in zip(subset, sub_inputs):
                            ctx[p] = x
                        for p, x in zip(others, rest):
                            ctx[p] = x
                        ctx = tuple(ctx)
                        total = zero
                        for outs in sc.outcomes():
                            if all(outs[p] == a for p, a in zip(subset, sub_outs)):
                                v = behavior.p(outs, ctx)
                                if v:
                                    total = total + v
                        vals.append(total)
                    spread = max(vals) - min(vals)
                    if spread > sub_worst:
                        sub_worst = spread
                    if spread > worst_v:
                        worst_v = spread
                        worst = (subset, sub_inputs, sub_outs)
            per_subset[subset] = sub_worst
    return NoSignallingReport(worst_v, worst, per_subset)


# ----------------------------------------------------------------------
# JSON interchange
# ----------------------------------------------------------------------
def _ctx_key(ctx):
    return ",".join(str(x) for x in ctx)


def _nested_outcomes(behavior, ctx):
    sc = behavior.scenario

    def build(prefix):
        if len(prefix) == sc.parties:
            v = behavior.p(prefix, ctx)
            return rat_str(v) if behavior.mode == "rational" else float(v)
        return [build(prefix + (a,)) for a in (0, 1)]

    return build(())


def behavior_to_json_dict(behavior: Behavior) -> dict:
    sc = behavior.scenario
    return {
        "scenario": {
            "parties": sc.parties,
            "m": sc.m,
            "k": sc.k,
            "friend_inputs": list(sc.friend_inputs),
        },
        "mode": behavior.mode,
        "table": {_ctx_key(ctx): _nested_outcomes(behavior, ctx)
                  for ctx in sc.contexts()},
    }


def behavior_from_json_dict(doc: dict, tol: float = 1e-9) -> Behavior:
    try:
        s = doc["scenario"]
        sc = ScenarioSpec(int(s["parties"]), int(s["m"]), int(s["k"]),
                          tuple(s.get("friend_inputs") or ()))
        mode = doc["mode"]
        table = doc["table"]
    except (KeyError, TypeError, ValueError) as exc:
        raise BehaviorFormatError(f"bad behaviour document: {exc}") from exc
    if mode not in ("rational", "float"):
        raise BehaviorFormatError(f"bad mode {mode!r}")

    zero = rat(0) if mode == "rational" else 0.0
    probs = [zero] * sc.behavior_size

    def parse(v):
        if mode == "rational":
            if isinstance(v, float):
                raise BehaviorFormatError(
                    f"float entry {v!r} in rational-mode document")
            return rat(v)
        return float(v)

    seen = set()
    for key, nested in table.items():
        try:
            ctx = tuple(int(t) for t in key.split(","))
        except ValueError as exc:
            raise BehaviorFormatError(f"bad context key {key!r}") from exc
        if len(ctx) != sc.parties or any(not 0 <= x < sc.m for x in ctx):
            raise BehaviorFormatError(f"bad context key {key!r}")
        seen.add(ctx)

        def walk(node, prefix):
            if len(prefix) == sc.parties:
                probs[sc.b_index(prefix, ctx)] = parse(node)
                return
            if not isinstance(node, list) or len(node) != 2:
                raise BehaviorFormatError(
                    f"context {ctx}: expected binary nesting at depth {len(prefix)}")
            for a, sub in enumerate(node):
                walk(sub, prefix + (a,))

        walk(nested, ())
    if len(seen) != sc.n_contexts:
        raise BehaviorFormatError(
            f"table has {len(seen)} contexts, expected {sc.n_contexts}")
    behavior = Behavior(sc, tuple(probs), mode)
    behavior.validate(tol)
    return behavior


def behavior_to_json(behavior: Behavior, indent: int = 2) -> str:
    return json.dumps(behavior_to_json_dict(behavior), indent=indent)


def behavior_from_json(text: str, tol: float = 1e-9) -> Behavior:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BehaviorFormatError(f"not valid JSON: {exc}") from exc
    return behavior_from_json_dict(doc, tol)
