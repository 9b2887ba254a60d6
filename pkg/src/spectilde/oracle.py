"""Ground-truth finite topologies built from a basis by brute force.

Nothing here consults the colon preorder: opens are every union of basis
sets, and each property is decided by quantifying over points and opens.
``compare`` runs this against the fast paths in ``topology``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Sequence

import numpy as np

from . import kernels
from .algebra import multiplicative_set_masks, saturated_set_masks
from .errors import InvariantError, SizeBoundError, check
from .topology import (
    SpecSpace, _closure_mask, _derived_mask, _interior_mask, _points, compact_cover,
    d_set_masks, is_connected, is_discrete, is_lindelof, is_nested, is_quasi_compact,
    is_T0, is_T1, is_T2, is_T3, isolated_points,
)

DEFAULT_MAX_POINTS = 20
MASK_POINTS = 62
PREDICATES = ("t0", "t1", "t2", "t3", "discrete", "connected", "nested",
              "quasi_compact", "lindelof", "alexandrov")


@dataclass(frozen=True, eq=False)
class FiniteTopology:
    universe: tuple
    opens: np.ndarray = field(repr=False)  # sorted int64 bitmasks over universe positions
    sampled: bool = False
    basis: np.ndarray | None = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return len(self.universe)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def _position(self) -> dict:
        return {x: i for i, x in enumerate(self.universe)}

    def mask(self, points: Iterable[Hashable]) -> int:
        m = 0
        for x in points:
            m |= 1 << self._position[x]
        return m

    def points(self, mask: int) -> frozenset:
        return frozenset(self.universe[i] for i in _points(int(mask)))

    def open_sets(self) -> list[frozenset]:
        return [self.points(m) for m in self.opens]

    def is_open(self, points: Iterable[Hashable]) -> bool:
        m = self.mask(points)
        i = np.searchsorted(self.opens, m)
        return bool(i < self.opens.size and self.opens[i] == m)

    @cached_property
    def neighbourhoods(self) -> np.ndarray:
        """Intersection of all opens containing each point."""
        return kernels.smallest_neighbourhoods(self.opens, self.n)


def _basis_masks(universe: Sequence, basis: Iterable) -> np.ndarray:
    position = {x: i for i, x in enumerate(universe)}
    masks = []
    for b in basis:
        m = 0
        for x in b:
            if x not in position:
                raise ValueError(f"basis element {x!r} is not in the universe")
            m |= 1 << position[x]
        masks.append(m)
    return np.array(masks, dtype=np.int64)


def topology_from_basis(universe: Sequence, basis: Iterable[Iterable],
                        max_points: int = DEFAULT_MAX_POINTS) -> FiniteTopology:
    """Every union of basis sets, plus the empty set and the universe."""
    universe = tuple(universe)
    return topology_from_masks(universe, _basis_masks(universe, basis), max_points)


def topology_from_masks(universe: Sequence, basis: np.ndarray,
                        max_points: int = DEFAULT_MAX_POINTS) -> FiniteTopology:
    universe = tuple(universe)
    n = len(universe)
    if n > max_points:
        raise SizeBoundError(f"{n} points exceeds the oracle bound of {max_points}")
    basis = np.unique(np.asarray(basis, dtype=np.int64))
    opens = kernels.union_closure(basis, n)
    full = np.int64((1 << n) - 1)
    opens = np.unique(np.concatenate([opens, np.array([0, full], dtype=np.int64)]))
    return FiniteTopology(universe, opens, False, basis)


def sampled_topology(universe: Sequence, basis: np.ndarray, samples: int = 4096,
                     seed: int = 0) -> FiniteTopology:
    """Random unions of basis subfamilies, for universes past the oracle bound."""
    universe = tuple(universe)
    n = len(universe)
    if n > MASK_POINTS:
        raise SizeBoundError(f"{n} points exceeds the {MASK_POINTS}-point mask limit")
    basis = np.unique(np.asarray(basis, dtype=np.int64))
    rng = np.random.default_rng(seed)
    picks = rng.random((samples, basis.size)) < 0.5
    unions = np.bitwise_or.reduce(np.where(picks, basis[None, :], 0), axis=1) if basis.size else np.zeros(0, np.int64)
    full = np.int64((1 << n) - 1)
    opens = np.unique(np.concatenate([unions, basis, np.array([0, full], dtype=np.int64)]))
    return FiniteTopology(universe, opens, True, basis)


def check_axioms(T: FiniteTopology, pair_limit: int = 4096) -> None:
    """Raise ``InvariantError`` if T is not closed under the topology axioms."""
    check(bool(np.isin([0, T.full], T.opens).all()), "topology misses the empty set or the universe")
    if T.sampled or T.opens.size > pair_limit:
        return
    unions = (T.opens[:, None] | T.opens[None, :]).ravel()
    check(bool(np.isin(unions, T.opens).all()), "opens not closed under union")
    check(kernels.is_intersection_closed(T.opens), "opens not closed under intersection")


# -- definitional operators -------------------------------------------------------------

def _subset_array(T: FiniteTopology, subsets) -> np.ndarray:
    return np.array([T.mask(N) for N in subsets], dtype=np.int64)


def oracle_closure(T: FiniteTopology, N: Iterable) -> frozenset:
    subsets = _subset_array(T, [N])
    return T.points(kernels.closure_batch(T.opens, subsets, np.int64(T.full))[0])


def oracle_interior(T: FiniteTopology, N: Iterable) -> frozenset:
    return T.points(kernels.interior_batch(T.opens, _subset_array(T, [N]))[0])


def oracle_limit_points(T: FiniteTopology, N: Iterable) -> frozenset:
    return T.points(kernels.limit_points_batch(T.opens, _subset_array(T, [N]), T.n)[0])


# -- definitional predicates -------------------------------------------------------------

@dataclass(frozen=True)
class OraclePredicates:
    t0: bool
    t1: bool
    t2: bool
    t3: bool
    discrete: bool
    connected: bool
    nested: bool
    quasi_compact: bool
    lindelof: bool
    alexandrov: bool
    sampled: bool = False


def _finite_subcover(cover: np.ndarray, full: int) -> list[int] | None:
    """Greedy finite subcover of ``cover``, or None if it does not cover."""
    if full == 0:
        return []
    chosen = []
    covered = 0
    remaining = [int(c) for c in cover]
    while covered != full:
        best = max(remaining, key=lambda c: bin(c & ~covered).count("1"), default=0)
        if best & ~covered == 0:
            return None
        chosen.append(best)
        covered |= best
    return chosen


def _countable_subcover(cover: np.ndarray, n: int) -> list[int] | None:
    """One cover member per point, which is countable by construction."""
    chosen = []
    for x in range(n):
        hits = cover[((cover >> x) & 1) == 1]
        if hits.size == 0:
            return None
        chosen.append(int(hits[0]))
    return chosen


def _covers(T: FiniteTopology) -> list[np.ndarray]:
    covers = [T.opens]
    if T.basis is not None and T.basis.size:
        covers.append(T.basis)
    return [c for c in covers if int(np.bitwise_or.reduce(c)) == T.full]


def oracle_predicates(T: FiniteTopology) -> OraclePredicates:
    n, opens, full = T.n, T.opens, T.full
    t0, t1 = kernels.separated_pairs(opens, n)
    nb = [int(v) for v in T.neighbourhoods]
    t2 = all(nb[x] & nb[y] == 0 for x in range(n) for y in range(n) if x != y)
    singletons = np.array([1 << x for x in range(n)], dtype=np.int64)
    point_closures = kernels.closure_batch(opens, singletons, np.int64(full)) if n else []
    # regular: a point outside cl{c} has a neighbourhood disjoint from one around c
    t3 = all(nb[c] & nb[x] == 0
             for c in range(n) for x in range(n) if not (int(point_closures[c]) >> x) & 1)
    discrete = bool(np.isin(singletons, opens).all())
    connected = n > 0 and not kernels.has_proper_clopen(opens, np.int64(full))
    nested = kernels.is_chain(opens)
    covers = _covers(T)
    quasi_compact = all(_finite_subcover(c, full) is not None for c in covers)
    lindelof = all(_countable_subcover(c, n) is not None for c in covers)
    if opens.size <= 4096 and not T.sampled:
        alexandrov = kernels.is_intersection_closed(opens)
    else:
        alexandrov = bool(np.isin(T.neighbourhoods, opens).all())
    return OraclePredicates(bool(t0), bool(t1), t2, t3, discrete, connected, nested,
                            quasi_compact, lindelof, alexandrov, T.sampled)


# -- spectrum topologies ----------------------------------------------------------------

BASIS_KINDS = ("mult", "saturated", "min_open")


def spec_basis(space: SpecSpace, kind: str = "mult") -> np.ndarray:
    """Basis point-masks of ~Spec(M) computed from ring subsets, not from the preorder.

    ``mult``: D(S) for every multiplicatively closed S; ``saturated``: only
    saturated S; ``min_open``: D(R - (P:M)) for every point P.
    """
    R = space.ring
    if kind == "mult":
        sets = multiplicative_set_masks(R)
    elif kind == "saturated":
        sets = saturated_set_masks(R)
    elif kind == "min_open":
        full = R.full_mask
        sets = np.array([full & ~c for c in space.colon_masks], dtype=np.uint64)
    else:
        raise ValueError(f"unknown basis kind {kind!r}; expected one of {BASIS_KINDS}")
    return np.unique(d_set_masks(space, sets))


def spec_topology(space: SpecSpace, kind: str = "mult", max_points: int = DEFAULT_MAX_POINTS,
                  samples: int = 4096, seed: int = 0) -> FiniteTopology:
    """Oracle topology of a spectrum; sampled when the space is past ``max_points``."""
    basis = spec_basis(space, kind)
    universe = tuple(range(space.n))
    if space.n > max_points:
        return sampled_topology(universe, basis, samples, seed)
    return topology_from_masks(universe, basis, max_points)


# -- fast path vs oracle ----------------------------------------------------------------

@dataclass(frozen=True)
class Discrepancy:
    check: str
    witness: str
    fast: str
    oracle: str

    def as_dict(self) -> dict:
        return {"check": self.check, "witness": self.witness, "fast": self.fast, "oracle": self.oracle}


def _fmt(space: SpecSpace, mask: int) -> str:
    names = [space.points[i].name for i in sorted(_points(int(mask)))]
    return "{" + ", ".join(names) + "}"


def _fast_predicates(space: SpecSpace) -> tuple[dict, list[Discrepancy]]:
    fast, problems = {}, []
    calls = {
        "t0": is_T0, "t1": is_T1, "t2": is_T2, "t3": is_T3, "discrete": is_discrete,
        "connected": is_connected, "nested": is_nested, "quasi_compact": is_quasi_compact,
        "lindelof": is_lindelof, "alexandrov": lambda s: True,
    }
    for name, fn in calls.items():
        try:
            fast[name] = fn(space)
        except InvariantError as e:
            fast[name] = None
            problems.append(Discrepancy(name, "internal consistency", str(e), "-"))
    return fast, problems


def comparison_subsets(n: int, samples: int = 500, seed: int = 0,
                       exhaustive_limit: int = 1024) -> np.ndarray:
    """All subsets when there are at most ``exhaustive_limit``, else a seeded sample."""
    if (1 << n) <= exhaustive_limit:
        return np.arange(1 << n, dtype=np.int64)
    rng = np.random.default_rng(seed)
    drawn = rng.integers(0, 1 << n, size=samples, dtype=np.int64)
    fixed = np.array([0, (1 << n) - 1] + [1 << i for i in range(n)], dtype=np.int64)
    return np.unique(np.concatenate([fixed, drawn]))


def compare(space: SpecSpace, T: FiniteTopology, samples: int = 500, seed: int = 0,
            exhaustive_limit: int = 1024) -> list[Discrepancy]:
    """Every mismatch between the preorder fast paths and the oracle."""
    if T.n != space.n:
        return [Discrepancy("universe", f"{space.n} vs {T.n} points", str(space.n), str(T.n))]
    out: list[Discrepancy] = []
    n = space.n

    if T.sampled:
        # only the sampled opens can be tested: each must be a union of minimal opens
        for m in T.opens:
            m = int(m)
            if any(space.min_open_masks[p] & ~m for p in _points(m)):
                out.append(Discrepancy("open", _fmt(space, m), "not open", "open"))
        return out

    nb = T.neighbourhoods
    for p in range(n):
        if space.min_open_masks[p] != int(nb[p]):
            out.append(Discrepancy("min_open", space.points[p].name,
                                   _fmt(space, space.min_open_masks[p]), _fmt(space, nb[p])))

    fast, problems = _fast_predicates(space)
    out.extend(problems)
    oracle = oracle_predicates(T)
    for name in PREDICATES:
        if fast[name] is not None and fast[name] != getattr(oracle, name):
            out.append(Discrepancy(name, "space", str(fast[name]), str(getattr(oracle, name))))

    try:
        iso = isolated_points(space)
    except InvariantError as e:
        out.append(Discrepancy("isolated_points", "internal consistency", str(e), "-"))
    else:
        oracle_iso = frozenset(x for x in range(n) if T.is_open([x]))
        if iso != oracle_iso:
            out.append(Discrepancy("isolated_points", "space", _fmt(space, sum(1 << i for i in iso)),
                                   _fmt(space, sum(1 << i for i in oracle_iso))))

    try:
        cover = compact_cover(space)
    except InvariantError as e:
        out.append(Discrepancy("compact_cover", "internal consistency", str(e), "-"))
    else:
        union = 0
        for p in cover:
            union |= int(nb[p])
        if union != T.full:
            out.append(Discrepancy("compact_cover", _fmt(space, sum(1 << p for p in cover)),
                                   "covers", _fmt(space, union)))

    subsets = comparison_subsets(n, samples, seed, exhaustive_limit)
    full = np.int64(T.full)
    oracle_ops = {
        "closure": kernels.closure_batch(T.opens, subsets, full),
        "interior": kernels.interior_batch(T.opens, subsets),
        "derived_set": kernels.limit_points_batch(T.opens, subsets, n),
    }
    fast_ops = {"closure": _closure_mask, "interior": _interior_mask, "derived_set": _derived_mask}
    for name, fn in fast_ops.items():
        expected = oracle_ops[name]
        for k, N in enumerate(subsets):
            got = fn(space, int(N))
            if got != int(expected[k]):
                out.append(Discrepancy(name, _fmt(space, N), _fmt(space, got), _fmt(space, expected[k])))
    return out
