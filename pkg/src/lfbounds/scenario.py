"""Scenario description and index layout.

A scenario has N super-observers (N in {2, 3}), each choosing one of m
inputs and producing a binary outcome, and one friend per super-observer
producing an outcome in {0, ..., k-1}.  One designated input per
super-observer ("friend input") corresponds to asking the friend
directly; by default it is m-1, the main-text convention, but any input
can be designated (the appendix-style convention uses 0).

Flat vector layouts used throughout the package keep contexts outermost
and outcomes lexicographic, so behaviour vectors are indexed
ctx * 2^N + outcomes and joint-model vectors ctx * (2k)^N + (outcomes,
friend outcomes).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass


@dataclass(frozen=True)
class ScenarioSpec:
    parties: int = 2
    m: int = 2
    k: int = 2
    friend_inputs: tuple = ()

    def __post_init__(self):
        if self.parties not in (2, 3):
            raise ValueError("parties must be 2 or 3")
        if self.m < 1 or self.k < 1:
            raise ValueError("m and k must be positive")
        fi = self.friend_inputs
        if not fi:
            fi = (self.m - 1,) * self.parties
        else:
            fi = tuple(int(v) for v in fi)
        if len(fi) != self.parties or any(not 0 <= v < self.m for v in fi):
            raise ValueError("friend_inputs must list one valid input per party")
        object.__setattr__(self, "friend_inputs", fi)

    # ---- sizes ------------------------------------------------------
    @property
    def n_contexts(self) -> int:
        return self.m ** self.parties

    @property
    def n_outcomes(self) -> int:
        return 2 ** self.parties

    @property
    def n_friend_outcomes(self) -> int:
        return self.k ** self.parties

    @property
    def behavior_size(self) -> int:
        return self.n_contexts * self.n_outcomes

    @property
    def joint_size(self) -> int:
        return self.n_contexts * self.n_outcomes * self.n_friend_outcomes

    # ---- enumeration ------------------------------------------------
    def contexts(self):
        return itertools.product(range(self.m), repeat=self.parties)

    def outcomes(self):
        return itertools.product(range(2), repeat=self.parties)

    def friend_outcomes(self):
        return itertools.product(range(self.k), repeat=self.parties)

    # ---- indexing ----------------------------------------------------
    def ctx_index(self, ctx) -> int:
        i = 0
        for x in ctx:
            i = i * self.m + x
        return i

    def out_index(self, outs) -> int:
        i = 0
        for a in outs:
            i = i * 2 + a
        return i

    def friend_index(self, fouts) -> int:
        i = 0
        for c in fouts:
            i = i * self.k + c
        return i

    def b_index(self, outs, ctx) -> int:
        return self.ctx_index(ctx) * self.n_outcomes + self.out_index(outs)

    def j_index(self, outs, fouts, ctx) -> int:
        per_ctx = self.n_outcomes * self.n_friend_outcomes
        return (self.ctx_index(ctx) * per_ctx
                + self.out_index(outs) * self.n_friend_outcomes
                + self.friend_index(fouts))

def main_convention(parties=2, m=2, k=2) -> ScenarioSpec:
    """Friend input = m-1 on every party."""
    return ScenarioSpec(parties, m, k, (m - 1,) * parties)


def appendix_convention(parties=2, m=2, k=2) -> ScenarioSpec:
    """Friend input = 0 on every party."""
    return ScenarioSpec(parties, m, k, (0,) * parties)
