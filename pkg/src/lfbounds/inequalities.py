"""Linear functionals on behaviours: the m=3 catalog, the chained
family and its partial sums, two-input CHSH-type blocks, and the
tripartite Mermin-type functional.

Inequalities are stored over correlators (full-order plus per-party
marginal terms) and converted exactly to outcome-probability
coefficients when used as LP objectives.  ``known_bounds`` is advisory
metadata; tests validate it against the LP, run time never trusts it.
"""

from __future__ import annotations

import hashlib
import importlib.resources
import json
import math
from dataclasses import dataclass
from typing import Optional

from lfbounds.behavior import Behavior, correlators
from lfbounds.rational import rat, rat_str
from lfbounds.scenario import ScenarioSpec

PARTY_NAMES = "ABC"
CATALOG_RESOURCE = "lf_catalog_m3.json"


@dataclass(frozen=True)
class KnownBounds:
    """Advisory bound metadata.

    ``lf + lf_relaxed_slope * eps`` is the claimed optimum over the
    eps-relaxed set for eps up to ``slope_valid_to`` (the optimum is
    capped by the no-signalling maximum beyond that), ``ns`` the
    no-signalling maximum, ``quantum_max`` the known quantum value.
    """

    lf: object = None
    lf_relaxed_slope: object = None
    ns: object = None
    quantum_max: Optional[float] = None
    slope_valid_to: object = None

    def relaxed_bound(self, eps):
        """Expected optimum at relaxation eps (affine law capped at NS)."""
        if self.lf is None or self.lf_relaxed_slope is None:
            return None
        value = self.lf + self.lf_relaxed_slope * eps
        if self.ns is not None and value > self.ns:
            return self.ns
        return value


@dataclass(frozen=True)
class InequalityExpr:
    scenario: ScenarioSpec
    label: str
    correlator_coeffs: dict      # full input tuple -> coeff
    marginal_coeffs: dict        # party index -> {input -> coeff}
    known_bounds: Optional[KnownBounds] = None

    def __post_init__(self):
        sc = self.scenario
        for ctx in self.correlator_coeffs:
            if len(ctx) != sc.parties or any(not 0 <= x < sc.m for x in ctx):
                raise ValueError(f"{self.label}: bad correlator context {ctx}")
        for party, per_input in self.marginal_coeffs.items():
            if not 0 <= party < sc.parties:
                raise ValueError(f"{self.label}: bad party {party}")
            for x in per_input:
                if not 0 <= x < sc.m:
                    raise ValueError(f"{self.label}: bad input {x}")


def evaluate(ineq: InequalityExpr, behavior: Behavior):
    """Value of the functional on a behaviour, via its correlators."""
    sc = ineq.scenario
    if behavior.scenario.parties != sc.parties or behavior.scenario.m != sc.m:
        raise ValueError("behaviour and inequality scenarios do not match")
    table = correlators(behavior)
    exact = behavior.mode == "rational"
    total = rat(0) if exact else 0.0
    for ctx, w in ineq.correlator_coeffs.items():
        if not exact:
            w = float(w)
        total = total + w * table.full[ctx]
    for party, per_input in ineq.marginal_coeffs.items():
        for x, w in per_input.items():
            if not exact:
                w = float(w)
            total = total + w * table.lower[((party,), (x,))]
    return total


def behavior_space_coeffs(ineq: InequalityExpr, exact: bool = True):
    """Outcome-probability coefficients omega with
    sum_omega omega[outs, ctx] p(outs|ctx) == evaluate(ineq, p)
    for no-signalling p (marginal terms are spread uniformly over the
    other parties' inputs)."""
    sc = ineq.scenario
    zero = rat(0) if exact else 0.0
    omega = [zero] * sc.behavior_size
    for ctx, w in ineq.correlator_coeffs.items():
        if not exact:
            w = float(w)
        for outs in sc.outcomes():
            sign = -1 if sum(outs) % 2 else 1
            omega[sc.b_index(outs, ctx)] += sign * w
    n_rest = sc.m ** (sc.parties - 1)
    for party, per_input in ineq.marginal_coeffs.items():
        for x, w in per_input.items():
            share = w / n_rest if exact else float(w) / n_rest
            for ctx in sc.contexts():
                if ctx[party] != x:
                    continue
                for outs in sc.outcomes():
                    sign = -1 if outs[party] % 2 else 1
                    omega[sc.b_index(outs, ctx)] += sign * share
    return omega


def scale(ineq: InequalityExpr, factor) -> InequalityExpr:
    return InequalityExpr(
        ineq.scenario,
        f"{factor}*{ineq.label}",
        {k: factor * v for k, v in ineq.correlator_coeffs.items()},
        {p: {x: factor * v for x, v in per.items()}
         for p, per in ineq.marginal_coeffs.items()},
        None,
    )


def add(left: InequalityExpr, right: InequalityExpr, label=None) -> InequalityExpr:
    if left.scenario != right.scenario:
        raise ValueError("scenario mismatch")
    cc = dict(left.correlator_coeffs)
    for k, v in right.correlator_coeffs.items():
        cc[k] = cc.get(k, rat(0)) + v
        if not cc[k]:
            del cc[k]
    mc = {p: dict(per) for p, per in left.marginal_coeffs.items()}
    for p, per in right.marginal_coeffs.items():
        tgt = mc.setdefault(p, {})
        for x, v in per.items():
            tgt[x] = tgt.get(x, rat(0)) + v
            if not tgt[x]:
                del tgt[x]
    mc = {p: per for p, per in mc.items() if per}
    return InequalityExpr(left.scenario, label or f"{left.label}+{right.label}",
                          cc, mc, None)


def relabel_inputs(ineq: InequalityExpr, maps, label=None) -> InequalityExpr:
    """Push per-party input permutations through the functional (the
    scenario's friend inputs move along)."""
    sc = ineq.scenario
    fi = tuple(maps[i][sc.friend_inputs[i]] for i in range(sc.parties))
    new_sc = ScenarioSpec(sc.parties, sc.m, sc.k, fi)
    cc = {tuple(maps[i][x] for i, x in enumerate(ctx)): v
          for ctx, v in ineq.correlator_coeffs.items()}
    mc = {p: {maps[p][x]: v for x, v in per.items()}
          for p, per in ineq.marginal_coeffs.items()}
    return InequalityExpr(new_sc, label or f"{ineq.label}'", cc, mc,
                          ineq.known_bounds)


# ----------------------------------------------------------------------
# generators
# ----------------------------------------------------------------------
def chained(m: int) -> InequalityExpr:
    """2m-term chained functional with friend input m-1 on both sides."""
    if m < 2:
        raise ValueError("chained family needs m >= 2")
    sc = ScenarioSpec(parties=2, m=m, k=2)
    one = rat(1)
    cc = {(m - 1, m - 1): one, (0, m - 1): -one}
    for l in range(m - 1):
        cc[(l, l)] = cc.get((l, l), rat(0)) + one
        cc[(l + 1, l)] = cc.get((l + 1, l), rat(0)) + one
    return InequalityExpr(
        sc, f"chained[m={m}]", cc, {},
        KnownBounds(lf=rat(2 * (m - 1)), lf_relaxed_slope=rat(4),
                    ns=rat(2 * m), quantum_max=2 * m * math.cos(math.pi / (2 * m)),
                    slope_valid_to=rat(1, 2)),
    )


def chained_partial(m: int, j: int) -> InequalityExpr:
    """Partial sum of the chained functional starting at block j."""
    if not 0 <= j <= m - 2:
        raise ValueError("need 0 <= j <= m-2")
    sc = ScenarioSpec(parties=2, m=m, k=2)
    one = rat(1)
    cc = {(m - 1, m - 1): one}
    key = (j, m - 1)
    cc[key] = cc.get(key, rat(0)) - one
    for l in range(j, m - 1):
        cc[(l, l)] = cc.get((l, l), rat(0)) + one
        cc[(l + 1, l)] = cc.get((l + 1, l), rat(0)) + one
    cc = {k: v for k, v in cc.items() if v}
    return InequalityExpr(
        sc, f"chained[m={m},j={j}]", cc, {},
        KnownBounds(lf=rat(2 * (m - j - 1)), lf_relaxed_slope=rat(4),
                    ns=rat(2 * (m - j)), slope_valid_to=rat(1, 2)),
    )


def chsh_tilde(m: int, j: int) -> InequalityExpr:
    """Two-input CHSH-type block on Alice {j, j+1} x Bob {j, m-1}."""
    if not 0 <= j <= m - 3:
        raise ValueError("need 0 <= j <= m-3")
    sc = ScenarioSpec(parties=2, m=m, k=2)
    one = rat(1)
    cc = {(j + 1, m - 1): one, (j, m - 1): -one, (j, j): one, (j + 1, j): one}
    return InequalityExpr(
        sc, f"chsh~[m={m},j={j}]", cc, {},
        KnownBounds(lf=rat(2), lf_relaxed_slope=rat(4), ns=rat(4),
                    slope_valid_to=rat(1, 2)),
    )


DEFAULT_MERMIN_LABEL_MAP = {1: 0, 2: 1, 3: 2}
# Friend inputs (as 1-based labels) under which the LP reproduces the
# relaxed bound 2 + 8*eps: parties A and B are asked at label 3, party C
# at label 2 -- the labels of the functional's leading term.
MERMIN_FRIEND_LABELS = (3, 3, 2)


def mermin(label_map=None, friend_labels=MERMIN_FRIEND_LABELS) -> InequalityExpr:
    """Tripartite Mermin-type functional
    <A3 B3 C2> + <A1 B1 C2> + <A1 B3 C1> - <A3 B1 C1>.

    Inputs carry 1-based labels mapped to internal 0-based inputs via
    ``label_map`` (default: label i -> input i-1).  The slope of the
    relaxed bound (8) holds up to eps = 1/4, where the no-signalling
    ceiling (4) takes over.
    """
    lm = dict(DEFAULT_MERMIN_LABEL_MAP if label_map is None else label_map)
    fi = tuple(lm[l] for l in friend_labels)
    sc = ScenarioSpec(parties=3, m=3, k=2, friend_inputs=fi)
    one = rat(1)
    cc = {
        (lm[3], lm[3], lm[2]): one,
        (lm[1], lm[1], lm[2]): one,
        (lm[1], lm[3], lm[1]): one,
        (lm[3], lm[1], lm[1]): -one,
    }
    return InequalityExpr(
        sc, "mermin", cc, {},
        KnownBounds(lf=rat(2), lf_relaxed_slope=rat(8), ns=rat(4),
                    quantum_max=4.0, slope_valid_to=rat(1, 4)),
    )


def _catalog_payload():
    text = (importlib.resources.files("lfbounds.data") / CATALOG_RESOURCE).read_text()
    doc = json.loads(text)
    declared = doc.pop("sha256", None)
    canon = json.dumps(doc, sort_keys=True, separators=(",", ":")).encode()
    actual = hashlib.sha256(canon).hexdigest()
    if declared != actual:
        raise RuntimeError(
            f"inequality catalog checksum mismatch: file says {declared}, "
            f"content hashes to {actual}")
    return doc


def lf_catalog_m3() -> list:
    """The six inequality classes of the m=3, k=2 scenario, from the
    checksummed data file, friend inputs at m-1 = 2."""
    doc = _catalog_payload()
    s = doc["scenario"]
    sc = ScenarioSpec(s["parties"], s["m"], s["k"])
    out = []
    for entry in doc["inequalities"]:
        cc = {tuple(int(t) for t in key.split(",")): rat(val)
              for key, val in entry["correlator_coeffs"].items()}
        mc = {}
        for party_name, per in entry["marginal_coeffs"].items():
            party = PARTY_NAMES.index(party_name)
            mc[party] = {int(x): rat(v) for x, v in per.items()}
        b = entry["bounds"]
        kb = KnownBounds(lf=rat(b["lf"]), lf_relaxed_slope=rat(b["slope"]),
                         ns=rat(b["ns"]), slope_valid_to=rat(1, 2))
        out.append(InequalityExpr(sc, entry["label"], cc, mc, kb))
    return out


def by_label(label: str, m: Optional[int] = None, j: Optional[int] = None) -> InequalityExpr:
    """Resolve an inequality by its catalog label or family name."""
    if label in ("I_1", "I_2", "I_3", "I_4", "I_5", "I_6"):
        for ineq in lf_catalog_m3():
            if ineq.label == label:
                return ineq
    if label == "chained":
        if m is None:
            raise ValueError("chained needs m")
        return chained(m) if j is None else chained_partial(m, j)
    if label == "chsh-tilde":
        if m is None or j is None:
            raise ValueError("chsh-tilde needs m and j")
        return chsh_tilde(m, j)
    if label == "mermin":
        return mermin()
    raise KeyError(f"unknown inequality label {label!r}")


# ----------------------------------------------------------------------
# JSON interchange
# ----------------------------------------------------------------------
def inequality_to_json_dict(ineq: InequalityExpr) -> dict:
    sc = ineq.scenario
    doc = {
        "label": ineq.label,
        "scenario": {"parties": sc.parties, "m": sc.m, "k": sc.k,
                     "friend_inputs": list(sc.friend_inputs)},
        "correlator_coeffs": {
            ",".join(str(x) for x in ctx): rat_str(v)
            for ctx, v in ineq.correlator_coeffs.items()},
        "marginal_coeffs": {
            PARTY_NAMES[p]: {str(x): rat_str(v) for x, v in per.items()}
            for p, per in ineq.marginal_coeffs.items()},
    }
    kb = ineq.known_bounds
    if kb is not None:
        doc["known_bounds"] = {
            "lf": None if kb.lf is None else rat_str(kb.lf),
            "lf_relaxed_slope": (None if kb.lf_relaxed_slope is None
                                 else rat_str(kb.lf_relaxed_slope)),
            "ns": None if kb.ns is None else rat_str(kb.ns),
            "quantum_max": kb.quantum_max,
            "slope_valid_to": (None if kb.slope_valid_to is None
                               else rat_str(kb.slope_valid_to)),
        }
    return doc


def inequality_from_json_dict(doc: dict) -> InequalityExpr:
    s = doc["scenario"]
    sc = ScenarioSpec(int(s["parties"]), int(s["m"]), int(s["k"]),
                      tuple(s.get("friend_inputs") or ()))
    cc = {tuple(int(t) for t in key.split(",")): rat(v)
          for key, v in doc.get("correlator_coeffs", {}).items()}
    mc = {PARTY_NAMES.index(p): {int(x): rat(v) for x, v in per.items()}
          for p, per in doc.get("marginal_coeffs", {}).items()}
    kb = None
    if doc.get("known_bounds"):
        raw = doc["known_bounds"]

        def get(name):
            v = raw.get(name)
            return None if v is None else rat(v)

        kb = KnownBounds(lf=get("lf"), lf_relaxed_slope=get("lf_relaxed_slope"),
                         ns=get("ns"), quantum_max=raw.get("quantum_max"),
                         slope_valid_to=get("slope_valid_to"))
    return InequalityExpr(sc, doc.get("label", "unnamed"), cc, mc, kb)
