"""Reference behaviours: uniform noise, deterministic boxes, PR/XOR
boxes, the no-signalling polytope vertices at m=2, and the enumeration
of deterministic friend-respecting joint models used as a brute-force
membership oracle.
"""

from __future__ import annotations

import itertools
import random

from lfbounds.behavior import Behavior, JointModel
from lfbounds.rational import rat
from lfbounds.scenario import ScenarioSpec


def uniform_behavior(scenario: ScenarioSpec) -> Behavior:
    p = rat(1, scenario.n_outcomes)
    return Behavior(scenario, (p,) * scenario.behavior_size)


def deterministic_behavior(scenario: ScenarioSpec, responses) -> Behavior:
    """responses[i] maps party i's input to its (deterministic) outcome."""
    zero = rat(0)
    one = rat(1)
    probs = [zero] * scenario.behavior_size
    for ctx in scenario.contexts():
        outs = tuple(responses[i][x] for i, x in enumerate(ctx))
        probs[scenario.b_index(outs, ctx)] = one
    return Behavior(scenario, tuple(probs))


def xor_box(scenario: ScenarioSpec, parity) -> Behavior:
    """Uniform-marginal box with fixed outcome parity per context.

    parity(ctx) in {0, 1}; entries are 1/2^(N-1) on outcome tuples whose
    XOR equals parity(ctx).  Any such box is no-signalling (all proper
    marginals are uniform), so these reach the algebraic maximum of any
    pure correlator expression.
    """
    w = rat(1, scenario.n_outcomes // 2)
    zero = rat(0)
    probs = [zero] * scenario.behavior_size
    for ctx in scenario.contexts():
        want = parity(ctx) & 1
        for outs in scenario.outcomes():
            if sum(outs) % 2 == want:
                probs[scenario.b_index(outs, ctx)] = w
    return Behavior(scenario, tuple(probs))


def pr_box(scenario: ScenarioSpec = None) -> Behavior:
    """a xor b = x.y box (bipartite, m=2 by default)."""
    if scenario is None:
        scenario = ScenarioSpec(parties=2, m=2, k=2)
    if scenario.parties != 2:
        raise ValueError("PR box is bipartite")
    return xor_box(scenario, lambda ctx: ctx[0] * ctx[1])


def ns_vertices_m2():
    """The 24 vertices of the bipartite m=2 no-signalling polytope:
    16 local deterministic points and 8 PR-box variants."""
    sc = ScenarioSpec(parties=2, m=2, k=2)
    verts = []
    for a0, a1, b0, b1 in itertools.product((0, 1), repeat=4):
        verts.append(deterministic_behavior(sc, [{0: a0, 1: a1}, {0: b0, 1: b1}]))
    for mu, nu, sigma in itertools.product((0, 1), repeat=3):
        verts.append(xor_box(
            sc, lambda ctx, mu=mu, nu=nu, sigma=sigma:
            ctx[0] * ctx[1] ^ (mu & ctx[0]) ^ (nu & ctx[1]) ^ sigma))
    return verts


def mixture(behaviors, weights) -> Behavior:
    """Convex mixture; weights are exact rationals summing to 1."""
    if len(behaviors) != len(weights):
        raise ValueError("length mismatch")
    total = sum(weights)
    if total != 1:
        raise ValueError(f"weights sum to {total}, not 1")
    sc = behaviors[0].scenario
    probs = [rat(0)] * sc.behavior_size
    for beh, w in zip(behaviors, weights):
        if beh.scenario != sc:
            raise ValueError("mixed scenarios")
        if not w:
            continue
        for i, v in enumerate(beh.probs):
            if v:
                probs[i] = probs[i] + w * v
    return Behavior(sc, tuple(probs))


def sample_ns_behavior(scenario: ScenarioSpec, rng: random.Random,
                       n_terms: int = 4, denominator: int = 64) -> Behavior:
    """Random rational mixture of no-signalling points.

    Draws from local deterministic boxes and XOR boxes (the latter
    include the nonlocal vertex classes), with exact dyadic weights, so
    the result is an exact point of the no-signalling polytope.
    """
    pool = []
    for _ in range(n_terms):
        if rng.random() < 0.5:
            responses = [
                {x: rng.randint(0, 1) for x in range(scenario.m)}
                for _ in range(scenario.parties)
            ]
            pool.append(deterministic_behavior(scenario, responses))
        else:
            bits = {ctx: rng.randint(0, 1) for ctx in scenario.contexts()}
            pool.append(xor_box(scenario, lambda ctx, bits=bits: bits[ctx]))
    cuts = sorted(rng.randint(0, denominator) for _ in range(len(pool) - 1))
    cuts = [0] + cuts + [denominator]
    weights = [rat(cuts[i + 1] - cuts[i], denominator) for i in range(len(pool))]
    return mixture(pool, weights)


def deterministic_lf_joints(scenario: ScenarioSpec):
    """All deterministic joint models obeying exact friend agreement.

    Friends output fixed values; each super-observer answers a fixed
    function of their input that equals their friend's outcome at the
    friend input.  At m=2 the convex hull of their marginals is the
    whole zero-relaxation set, which makes this the brute-force
    membership oracle.
    """
    sc = scenario
    zero = rat(0)
    one = rat(1)
    out = []
    free_inputs = [[x for x in range(sc.m) if x != sc.friend_inputs[i]]
                   for i in range(sc.parties)]
    friend_choices = itertools.product(range(min(sc.k, 2)), repeat=sc.parties)
    for fouts in friend_choices:
        per_party = []
        for i in range(sc.parties):
            tables = []
            for vals in itertools.product((0, 1), repeat=len(free_inputs[i])):
                resp = dict(zip(free_inputs[i], vals))
                resp[sc.friend_inputs[i]] = fouts[i]
                tables.append(resp)
            per_party.append(tables)
        for combo in itertools.product(*per_party):
            probs = [zero] * sc.joint_size
            for ctx in sc.contexts():
                outs = tuple(combo[i][x] for i, x in enumerate(ctx))
                probs[sc.j_index(outs, fouts, ctx)] = one
            out.append(JointModel(sc, tuple(probs)))
    return out
