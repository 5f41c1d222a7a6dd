"""Quantum behaviour generation: two-qubit chained-optimal measurements
and the GHZ configuration for the tripartite Mermin-type functional.

States are explicit amplitude vectors; observables are +/-1-valued
qubit operators given by unit Bloch vectors (r_x, r_y, r_z).  Outcome
probabilities come from the analytic eigenprojectors (1 +/- O)/2, so no
eigendecomposition is involved.

The chained-optimal configuration uses Alice angles j*pi/m and Bob
angles (2j+1)*pi/(2m) in the x-z plane.  The variant with Bob angles
(2j+1)*pi/m does not attain the known maximum 2m*cos(pi/2m) (at m=2 it
evaluates to 0) and is rejected by the configuration self-test in the
test suite; only the verified angles ship.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from lfbounds.behavior import Behavior
from lfbounds.rational import rat
from lfbounds.scenario import ScenarioSpec

_SX = np.array([[0, 1], [1, 0]], dtype=complex)
_SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SZ = np.array([[1, 0], [0, -1]], dtype=complex)
_ID = np.eye(2, dtype=complex)


class QuantumConfigError(ValueError):
    pass


@dataclass(frozen=True)
class QuantumConfig:
    """State amplitudes (length 2^parties) plus one unit Bloch vector per
    party per input."""

    state: tuple
    observables: tuple  # observables[party][input] == (rx, ry, rz)

    def __post_init__(self):
        state = tuple(complex(v) for v in self.state)
        object.__setattr__(self, "state", state)
        obs = tuple(tuple(tuple(float(c) for c in bloch) for bloch in party)
                    for party in self.observables)
        object.__setattr__(self, "observables", obs)
        n = len(state)
        parties = n.bit_length() - 1
        if 2 ** parties != n or parties != len(obs):
            raise QuantumConfigError("state dimension does not match parties")
        norm = sum(abs(v) ** 2 for v in state)
        if abs(norm - 1.0) > 1e-12:
            raise QuantumConfigError(f"state norm^2 = {norm!r}, not 1")
        for party in obs:
            for bloch in party:
                if len(bloch) != 3:
                    raise QuantumConfigError("Bloch vector needs 3 components")
                r2 = sum(c * c for c in bloch)
                if abs(r2 - 1.0) > 1e-12:
                    raise QuantumConfigError(
                        f"observable {bloch} does not square to identity")

    @property
    def parties(self) -> int:
        return len(self.observables)

    @property
    def inputs_per_party(self) -> int:
        return len(self.observables[0])


def observable_matrix(bloch) -> np.ndarray:
    rx, ry, rz = bloch
    return rx * _SX + ry * _SY + rz * _SZ


def xz_observable(theta: float):
    """Bloch vector sin(theta)*x + cos(theta)*z."""
    return (math.sin(theta), 0.0, math.cos(theta))


def equatorial_observable(phi: float):
    """Bloch vector cos(phi)*x + sin(phi)*y."""
    return (math.cos(phi), math.sin(phi), 0.0)


def behavior_from_config(config: QuantumConfig,
                         scenario: ScenarioSpec = None) -> Behavior:
    """Born-rule table p(outcomes | inputs) of the configuration."""
    if scenario is None:
        scenario = ScenarioSpec(parties=config.parties,
                                m=config.inputs_per_party, k=2)
    if scenario.parties != config.parties:
        raise QuantumConfigError("scenario party count mismatch")
    if scenario.m != config.inputs_per_party:
        raise QuantumConfigError("scenario input count mismatch")
    psi = np.array(config.state, dtype=complex)
    projs = []
    for party in config.observables:
        per_input = []
        for bloch in party:
            o = observable_matrix(bloch)
            per_input.append(((_ID + o) / 2, (_ID - o) / 2))
        projs.append(per_input)

    probs = [0.0] * scenario.behavior_size
    for ctx in scenario.contexts():
        for outs in scenario.outcomes():
            op = np.array([[1.0 + 0j]])
            for party, (x, a) in enumerate(zip(ctx, outs)):
                op = np.kron(op, projs[party][x][a])
            val = (psi.conj() @ (op @ psi)).real
            probs[scenario.b_index(outs, ctx)] = max(float(val), 0.0)
    return Behavior(scenario, tuple(probs), "float")


def chained_optimal_config(m: int) -> QuantumConfig:
    """Singlet-free chained-optimal setup on |00>+|11>: Alice measures at
    angles j*pi/m, Bob at (2j+1)*pi/(2m), all in the x-z plane."""
    if m < 2:
        raise ValueError("need m >= 2")
    s = 1 / math.sqrt(2)
    alice = tuple(xz_observable(j * math.pi / m) for j in range(m))
    bob = tuple(xz_observable((2 * j + 1) * math.pi / (2 * m)) for j in range(m))
    return QuantumConfig((s, 0, 0, s), (alice, bob))


def ghz_state(parties: int = 3):
    n = 2 ** parties
    s = 1 / math.sqrt(2)
    state = [0.0] * n
    state[0] = s
    state[-1] = s
    return tuple(state)


def ghz_mermin_config() -> QuantumConfig:
    """GHZ state with equatorial (x-y plane) measurements achieving the
    algebraic maximum 4 of the Mermin-type functional under the default
    label mapping (inputs are 0-based versions of labels 1..3).

    Angles per input: A = (0, 0, pi/2), B = (pi/2, 0, 0),
    C = (0, -pi/2, 0); unused inputs measure x.
    """
    alice = tuple(equatorial_observable(phi) for phi in (0.0, 0.0, math.pi / 2))
    bob = tuple(equatorial_observable(phi) for phi in (math.pi / 2, 0.0, 0.0))
    charlie = tuple(equatorial_observable(phi) for phi in (0.0, -math.pi / 2, 0.0))
    return QuantumConfig(ghz_state(3), (alice, bob, charlie))


def rationalize_behavior(behavior: Behavior, max_denominator: int = 4096) -> Behavior:
    """Exact-rational copy of a float behaviour whose entries are (close
    to) small rationals, e.g. GHZ tables; fails if the rationalized
    table does not normalize exactly."""
    probs = tuple(
        rat(int(round(v * max_denominator)), max_denominator)
        for v in behavior.probs
    )
    out = Behavior(behavior.scenario, probs, "rational")
    out.validate()
    for old, new in zip(behavior.probs, out.probs):
        if abs(old - float(new)) > 1e-9:
            raise ValueError("behaviour entries are not close to small rationals")
    return out


def config_to_json_dict(config: QuantumConfig) -> dict:
    return {
        "state": [[v.real, v.imag] for v in config.state],
        "observables": [[list(bloch) for bloch in party]
                        for party in config.observables],
    }


def config_from_json_dict(doc: dict) -> QuantumConfig:
    state = tuple(complex(re, im) for re, im in doc["state"])
    obs = tuple(tuple(tuple(b) for b in party) for party in doc["observables"])
    return QuantumConfig(state, obs)
