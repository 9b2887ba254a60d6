"""The multiplicative-set topology on Spec(M) as a finite Alexandrov space.

A ``SpecSpace`` stores the colon preorder and each point's minimal open set;
the full open family is never materialized here (see ``oracle`` for that).
Point sets are frozensets of point indices into ``space.points``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Collection, Iterable, Sequence

import networkx as nx
import numpy as np

from .algebra import Ideal, MultSet, complement_of
from .errors import check
from .modules import FiniteModule, PrimeSubmodule, is_multiplication, minimal_primes, spec

PointSet = frozenset


def _mask(points: Iterable[int]) -> int:
    m = 0
    for p in points:
        m |= 1 << p
    return m


def _points(mask: int) -> frozenset[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


@dataclass(frozen=True, eq=False)
class SpecSpace:
    module: FiniteModule
    points: tuple[PrimeSubmodule, ...]
    leq: np.ndarray = field(repr=False)  # leq[i, j] iff (P_i:M) is inside (P_j:M)
    min_open: tuple[frozenset[int], ...] = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def ring(self):
        return self.module.ring

    @property
    def names(self) -> list[str]:
        return [P.name for P in self.points]

    @property
    def all_points(self) -> frozenset[int]:
        return frozenset(range(self.n))

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def min_open_masks(self) -> tuple[int, ...]:
        return tuple(_mask(s) for s in self.min_open)

    @cached_property
    def up_masks(self) -> tuple[int, ...]:
        return tuple(_mask(np.flatnonzero(self.leq[i]).tolist()) for i in range(self.n))

    @cached_property
    def colon_masks(self) -> tuple[int, ...]:
        return tuple(P.colon.mask for P in self.points)


def build_spec_space(M: FiniteModule) -> SpecSpace:
    points = spec(M)
    n = len(points)
    leq = np.zeros((n, n), dtype=bool)
    for i, P in enumerate(points):
        for j, Q in enumerate(points):
            leq[i, j] = P.colon.members <= Q.colon.members
    min_open = tuple(frozenset(np.flatnonzero(leq[:, p]).tolist()) for p in range(n))
    check(bool(np.diag(leq).all()), "colon preorder is not reflexive")
    check(not (leq.astype(int) @ leq.astype(int) > 0)[~leq].any(), "colon preorder is not transitive")
    return SpecSpace(M, points, leq, min_open)


# -- closed and basic open sets ----------------------------------------------------

def _ring_members(S) -> frozenset[int]:
    if isinstance(S, (MultSet, Ideal)):
        return S.members
    return frozenset(S)


def v_set(space: SpecSpace, family: Iterable[MultSet]) -> frozenset[int]:
    """Points whose colon ideal meets every member of the family."""
    family = list(family)
    for S in family:
        check(S.ring == space.ring, "family member over a different ring")
    return frozenset(i for i, P in enumerate(space.points)
                     if all(P.colon.members & S.members for S in family))


def d_set(space: SpecSpace, S: MultSet | Ideal | Collection[int]) -> frozenset[int]:
    """Points whose colon ideal misses ``S``.

    ``S`` may be a ``MultSet`` or a raw collection of ring element indices;
    complements of ideal unions are evaluated as plain sets.
    """
    members = _ring_members(S)
    return frozenset(i for i, P in enumerate(space.points) if not (P.colon.members & members))


def d_set_masks(space: SpecSpace, set_masks: np.ndarray) -> np.ndarray:
    """``d_set`` for many ring subsets at once.

    ``set_masks`` holds uint64 ring-element bitmasks; the result holds int64
    point bitmasks (so at most 62 points).
    """
    check(space.n <= 62, "point bitmasks hold at most 62 points")
    set_masks = np.asarray(set_masks, dtype=np.uint64)
    if set_masks.size == 0 or space.n == 0:
        return np.zeros(set_masks.size, dtype=np.int64)
    colons = np.array(space.colon_masks, dtype=np.uint64)
    misses = (set_masks[:, None] & colons[None, :]) == 0
    weights = np.left_shift(np.int64(1), np.arange(space.n, dtype=np.int64))
    return (misses.astype(np.int64) * weights).sum(axis=1)


def closed_union_family(space: SpecSpace, family: Sequence[MultSet],
                        other: Sequence[MultSet]) -> tuple[MultSet, ...]:
    """A family whose closed set is ``v_set(family) | v_set(other)``.

    Members are R - (P:M) for every point whose colon misses some member of
    each input family.
    """
    out: dict[frozenset, MultSet] = {}
    for P in space.points:
        c = P.colon.members
        if any(not (c & A.members) for A in family) and any(not (c & B.members) for B in other):
            if c not in out:
                out[c] = complement_of(P.colon)
    return tuple(out[c] for c in sorted(out, key=lambda c: (len(c), sorted(c))))


# -- closure operators ---------------------------------------------------------------

def _closure_mask(space: SpecSpace, mask: int) -> int:
    out = 0
    for p in _points(mask):
        out |= space.up_masks[p]
    return out


def _interior_mask(space: SpecSpace, mask: int) -> int:
    out = 0
    for p in _points(mask):
        if space.min_open_masks[p] & ~mask == 0:
            out |= 1 << p
    return out


def _derived_mask(space: SpecSpace, mask: int) -> int:
    out = 0
    for q in range(space.n):
        if space.min_open_masks[q] & mask & ~(1 << q):
            out |= 1 << q
    return out


def closure(space: SpecSpace, N: Iterable[int]) -> frozenset[int]:
    return _points(_closure_mask(space, _mask(N)))


def interior(space: SpecSpace, N: Iterable[int]) -> frozenset[int]:
    return _points(_interior_mask(space, _mask(N)))


def _inclusion_minimal(space: SpecSpace, N: frozenset[int]) -> frozenset[int]:
    return frozenset(p for p in N
                     if not any(space.points[q].members < space.points[p].members for q in N))


def derived_set(space: SpecSpace, N: Iterable[int]) -> frozenset[int]:
    """Limit points of N: every open through Q meets N - {Q}."""
    N = frozenset(N)
    derived = _points(_derived_mask(space, _mask(N)))
    if space.n and is_multiplication(space.module):
        expected = closure(space, N) - _inclusion_minimal(space, N)
        check(derived == expected, "derived set differs from closure minus minimal elements")
    return derived


def isolated_points(space: SpecSpace) -> frozenset[int]:
    isolated = frozenset(p for p in range(space.n) if space.min_open[p] == {p})
    if space.n:
        minimal = {P.submodule for P in minimal_primes(space.module)}
        as_subs = {space.points[p].submodule for p in isolated}
        check(as_subs <= minimal, "isolated point that is not a minimal prime")
        if is_multiplication(space.module):
            check(as_subs == minimal, "minimal prime of a multiplication module is not isolated")
    return isolated


# -- separation and shape predicates ---------------------------------------------------

def _distinct_pairs(n):
    return ((i, j) for i in range(n) for j in range(n) if i != j)


def is_T0(space: SpecSpace) -> bool:
    return not any(space.leq[i, j] and space.leq[j, i] for i, j in _distinct_pairs(space.n))


def is_T1(space: SpecSpace) -> bool:
    return not any(space.leq[i, j] for i, j in _distinct_pairs(space.n))


def is_T2(space: SpecSpace) -> bool:
    m = space.min_open_masks
    t2 = not any(m[i] & m[j] for i, j in _distinct_pairs(space.n))
    discrete = is_discrete(space)
    t1 = is_T1(space)
    check(t1 == t2 == discrete, "T1, T2 and discreteness disagree on an Alexandrov space")
    return t2


def is_discrete(space: SpecSpace) -> bool:
    return all(space.min_open[p] == {p} for p in range(space.n))


def is_T3(space: SpecSpace) -> bool:
    """Every minimal open set is also closed."""
    return all(_closure_mask(space, m) == m for m in space.min_open_masks)


def is_nested(space: SpecSpace) -> bool:
    return all(space.leq[i, j] or space.leq[j, i] for i, j in _distinct_pairs(space.n))


def _connected_graph(n: int, edges) -> bool:
    if n == 0:
        return False
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    return nx.is_connected(g)


def comparability_connected(M: FiniteModule | SpecSpace) -> bool:
    """Inclusion is a connected relation on Spec(M)."""
    points = M.points if isinstance(M, SpecSpace) else spec(M)
    edges = [(i, j) for i in range(len(points)) for j in range(i + 1, len(points))
             if points[i].members <= points[j].members or points[j].members <= points[i].members]
    return _connected_graph(len(points), edges)


def is_connected(space: SpecSpace) -> bool:
    """Connectivity of the preorder's comparability graph; the empty space is not connected."""
    n = space.n
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if space.leq[i, j] or space.leq[j, i]]
    connected = _connected_graph(n, edges)
    if n:
        by_inclusion = comparability_connected(space)
        check(connected or not by_inclusion, "inclusion-connected spectrum gives a disconnected space")
        if is_multiplication(space.module):
            check(connected == by_inclusion, "connectedness differs from inclusion connectivity")
    return connected


# -- covers ------------------------------------------------------------------------------

def compact_cover(space: SpecSpace) -> list[int]:
    """Irredundant list of points whose minimal opens cover the space."""
    chosen = list(range(space.n))
    for p in reversed(range(space.n)):
        rest = [q for q in chosen if q != p]
        if _union(space, rest) == space.full_mask:
            chosen = rest
    check(_union(space, chosen) == space.full_mask, "compact cover does not cover")
    return chosen


def _union(space: SpecSpace, pts) -> int:
    out = 0
    for p in pts:
        out |= space.min_open_masks[p]
    return out


def is_quasi_compact(space: SpecSpace) -> bool:
    return _union(space, compact_cover(space)) == space.full_mask


def is_lindelof(space: SpecSpace) -> bool:
    # a finite cover is in particular countable
    return is_quasi_compact(space)


def separation_profile(space: SpecSpace) -> dict:
    return {
        "T0": is_T0(space),
        "T1": is_T1(space),
        "T2": is_T2(space),
        "T3": is_T3(space),
        "discrete": is_discrete(space),
    }
