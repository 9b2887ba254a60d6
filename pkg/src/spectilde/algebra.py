"""Finite commutative rings Z_n and finite products of them.

Elements are addressed by their index in the ring's canonical carrier order
(numeric for Z_n, lexicographic on components for products). Labels are the
user-facing values: ints for Z_n, tuples for products.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import SizeBoundError, check

DEFAULT_MAX_RING_SIZE = 64


def format_label(label) -> str:
    if isinstance(label, tuple):
        if len(label) == 1:
            return str(label[0])
        return "(" + ",".join(str(x) for x in label) + ")"
    return str(label)


def format_generated(labels) -> str:
    if not labels:
        return "(0)"
    inner = ", ".join(format_label(x) for x in labels)
    if any(isinstance(x, tuple) and len(x) > 1 for x in labels):
        return "<" + inner + ">"
    return "(" + inner + ")"


# -- generic lattice of R-closed subgroups ---------------------------------------
# Shared by ideals (regular module) and submodules. ``add`` is an n x n table,
# ``act`` an |R| x n table of the scalar action.

def _cyclic(act, m) -> np.ndarray:
    return np.unique(act[:, m])


def _span(add, act, zero, seeds) -> np.ndarray:
    span = np.zeros(add.shape[0], dtype=bool)
    span[zero] = True
    for s in seeds:
        if not span[s]:
            span = kernels.coset_union(span, _cyclic(act, s), add)
    return span


def _greedy_generators(add, act, zero, members: Iterable[int]) -> tuple[int, ...]:
    span = np.zeros(add.shape[0], dtype=bool)
    span[zero] = True
    gens = []
    for m in sorted(members):
        if not span[m]:
            gens.append(m)
            span = kernels.coset_union(span, _cyclic(act, m), add)
    return tuple(gens)


def _canonical_key(members: frozenset[int]):
    return (len(members), tuple(sorted(members)))


def enumerate_closed_subgroups(add, act, zero) -> list[frozenset[int]]:
    """All subsets closed under addition and the action, canonically ordered.

    Closure-and-dedup: start at the zero subgroup and repeatedly add distinct
    cyclic subobjects ``R*m`` until no new subobject appears.
    """
    n = add.shape[0]
    cyclics = {}
    for m in range(n):
        c = _cyclic(act, m)
        cyclics.setdefault(c.tobytes(), c)
    cyclic_list = list(cyclics.values())

    start = np.zeros(n, dtype=bool)
    start[zero] = True
    seen = {start.tobytes(): start}
    queue = [start]
    while queue:
        cur = queue.pop()
        for c in cyclic_list:
            if cur[c].all():
                continue
            nxt = kernels.coset_union(cur, c, add)
            key = nxt.tobytes()
            if key not in seen:
                seen[key] = nxt
                queue.append(nxt)
    subs = [frozenset(np.flatnonzero(v).tolist()) for v in seen.values()]
    return sorted(subs, key=_canonical_key)


# -- rings -------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FiniteRing:
    moduli: tuple[int, ...]
    elements: tuple
    add: np.ndarray = field(repr=False)
    mul: np.ndarray = field(repr=False)
    neg: np.ndarray = field(repr=False)
    zero: int
    one: int

    def __eq__(self, other):
        return isinstance(other, FiniteRing) and other.moduli == self.moduli

    def __hash__(self):
        return hash(("FiniteRing", self.moduli))

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def is_product(self) -> bool:
        return len(self.moduli) > 1

    @property
    def name(self) -> str:
        return " x ".join(f"Z_{n}" for n in self.moduli)

    @cached_property
    def _index(self) -> dict:
        return {label: i for i, label in enumerate(self.elements)}

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    def index(self, label) -> int:
        if isinstance(label, list):
            label = tuple(label)
        if self.is_product:
            if not isinstance(label, tuple) or len(label) != len(self.moduli):
                raise ValueError(f"element {label!r} is not an element of {self.name}")
            label = tuple(int(x) % n for x, n in zip(label, self.moduli))
        else:
            if isinstance(label, tuple):
                if len(label) != 1:
                    raise ValueError(f"element {label!r} is not an element of {self.name}")
                label = label[0]
            label = int(label) % self.moduli[0]
        return self._index[label]

    def label(self, i: int):
        return self.elements[i]

    def subset(self, labels: Iterable) -> frozenset[int]:
        return frozenset(self.index(x) for x in labels)

    def components(self, i: int) -> tuple[int, ...]:
        label = self.elements[i]
        return label if isinstance(label, tuple) else (label,)


def make_ring(shape: int | Sequence[int], max_size: int = DEFAULT_MAX_RING_SIZE) -> FiniteRing:
    """Build ``Z_n`` (``shape=n``) or the product ring ``Z_{n1} x ... x Z_{nk}``."""
    moduli = (int(shape),) if isinstance(shape, (int, np.integer)) else tuple(int(n) for n in shape)
    if not moduli:
        raise ValueError("a ring needs at least one modulus")
    for n in moduli:
        if n <= 1:
            raise ValueError(f"modulus must be >= 2 (trivial rings are rejected), got {n}")
    size = int(np.prod(moduli))
    if size > max_size:
        raise SizeBoundError(f"ring {moduli} has {size} elements, bound is {max_size}")

    comps = list(itertools.product(*(range(n) for n in moduli)))
    arr = np.array(comps, dtype=np.int64).reshape(size, len(moduli))
    mods = np.array(moduli, dtype=np.int64)
    # carrier index of a component vector in mixed radix
    weights = np.ones(len(moduli), dtype=np.int64)
    for j in range(len(moduli) - 2, -1, -1):
        weights[j] = weights[j + 1] * moduli[j + 1]

    def encode(v):
        return (v % mods) @ weights

    add = encode(arr[:, None, :] + arr[None, :, :]).astype(np.int64)
    mul = encode(arr[:, None, :] * arr[None, :, :]).astype(np.int64)
    neg = encode(-arr).astype(np.int64)
    if len(moduli) == 1:
        elements = tuple(range(moduli[0]))
    else:
        elements = tuple(comps)
    one = int(encode(np.ones(len(moduli), dtype=np.int64)))
    return FiniteRing(moduli, elements, add, mul, neg, 0, one)


# -- ideals ------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Ideal:
    ring: FiniteRing
    members: frozenset[int]

    def __eq__(self, other):
        return isinstance(other, Ideal) and other.ring == self.ring and other.members == self.members

    def __hash__(self):
        return hash((self.ring, self.members))

    def __contains__(self, label) -> bool:
        return self.ring.index(label) in self.members

    def __le__(self, other: Ideal) -> bool:
        return self.members <= other.members

    def __lt__(self, other: Ideal) -> bool:
        return self.members < other.members

    def __len__(self):
        return len(self.members)

    @cached_property
    def mask(self) -> int:
        return sum(1 << i for i in self.members)

    @cached_property
    def indicator(self) -> np.ndarray:
        v = np.zeros(self.ring.size, dtype=bool)
        v[list(self.members)] = True
        return v

    @property
    def elements(self) -> list:
        return [self.ring.label(i) for i in sorted(self.members)]

    @cached_property
    def generators(self) -> tuple:
        R = self.ring
        gens = _greedy_generators(R.add, R.mul, R.zero, self.members)
        return tuple(R.label(i) for i in gens)

    @property
    def is_proper(self) -> bool:
        return len(self.members) < self.ring.size

    @property
    def name(self) -> str:
        return format_generated(self.generators)

    def __repr__(self):
        return f"Ideal{self.name} of {self.ring.name}"


def ideal_from_members(R: FiniteRing, members: Iterable[int]) -> Ideal:
    members = frozenset(members)
    ind = np.zeros(R.size, dtype=bool)
    ind[list(members)] = True
    check(ind[R.zero], "ideal must contain zero")
    check(ind[R.add[np.ix_(ind, ind)]].all(), "ideal must be closed under addition")
    check(ind[R.mul[:, ind]].all(), "ideal must absorb multiplication")
    return Ideal(R, members)


def ideal_generated(R: FiniteRing, labels: Iterable) -> Ideal:
    span = _span(R.add, R.mul, R.zero, [R.index(x) for x in labels])
    return Ideal(R, frozenset(np.flatnonzero(span).tolist()))


@lru_cache(maxsize=128)
def ideals(R: FiniteRing) -> tuple[Ideal, ...]:
    """Every ideal of ``R``, sorted by cardinality then canonical order."""
    return tuple(Ideal(R, m) for m in enumerate_closed_subgroups(R.add, R.mul, R.zero))


def _is_prime_ideal(I: Ideal) -> bool:
    if not I.is_proper:
        return False
    ind = I.indicator
    R = I.ring
    return not (ind[R.mul] & ~ind[:, None] & ~ind[None, :]).any()


@lru_cache(maxsize=128)
def prime_ideals(R: FiniteRing) -> tuple[Ideal, ...]:
    primes = tuple(I for I in ideals(R) if _is_prime_ideal(I))
    check(set(primes) == set(maximal_ideals(R)),
          f"prime and maximal ideals differ in finite ring {R.name}")
    return primes


@lru_cache(maxsize=128)
def maximal_ideals(R: FiniteRing) -> tuple[Ideal, ...]:
    proper = [I for I in ideals(R) if I.is_proper]
    return tuple(I for I in proper if not any(I.members < J.members for J in proper))


def is_field_ring(R: FiniteRing) -> bool:
    return len(ideals(R)) == 2


@lru_cache(maxsize=128)
def minimal_prime_ideals(R: FiniteRing) -> tuple[Ideal, ...]:
    primes = prime_ideals(R)
    return tuple(p for p in primes if not any(q.members < p.members for q in primes))


# -- multiplicatively closed sets ----------------------------------------------------

@dataclass(frozen=True, eq=False)
class MultSet:
    ring: FiniteRing
    members: frozenset[int]
    generators: tuple = ()

    def __eq__(self, other):
        return isinstance(other, MultSet) and other.ring == self.ring and other.members == self.members

    def __hash__(self):
        return hash(("MultSet", self.ring, self.members))

    def __contains__(self, label) -> bool:
        return self.ring.index(label) in self.members

    def __len__(self):
        return len(self.members)

    @property
    def elements(self) -> list:
        return [self.ring.label(i) for i in sorted(self.members)]

    @cached_property
    def mask(self) -> int:
        return sum(1 << i for i in self.members)

    @property
    def name(self) -> str:
        return "{" + ", ".join(format_label(x) for x in self.elements) + "}"

    def __repr__(self):
        return f"MultSet{self.name}"


def _mask_members(mask: int) -> frozenset[int]:
    mask = int(mask) & ((1 << 64) - 1)
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def mult_set_from_members(R: FiniteRing, members: Iterable[int], generators=()) -> MultSet:
    members = frozenset(members)
    check(R.one in members, "multiplicatively closed set must contain 1")
    idx = sorted(members)
    check(set(R.mul[np.ix_(idx, idx)].ravel().tolist()) <= members,
          "set is not closed under products")
    return MultSet(R, members, tuple(generators))


def make_mult_set(R: FiniteRing, generators: Iterable = ()) -> MultSet:
    """Smallest multiplicatively closed subset containing 1 and ``generators``."""
    generators = tuple(generators)
    mask = 1 << R.one
    for g in generators:
        mask |= 1 << R.index(g)
    closed = kernels.close_mult(mask, R.mul)
    return MultSet(R, _mask_members(closed), tuple(R.label(R.index(g)) for g in generators))


def power_set(R: FiniteRing, f) -> MultSet:
    """{f^n : n >= 0}."""
    return make_mult_set(R, [f])


def saturate(S: MultSet) -> MultSet:
    """All divisors of elements of ``S``: {r : r*x in S for some x in R}."""
    R = S.ring
    inside = np.zeros(R.size, dtype=bool)
    inside[list(S.members)] = True
    hits = inside[R.mul].any(axis=1)
    members = frozenset(np.flatnonzero(hits).tolist())
    return MultSet(R, members, S.generators)


def is_saturated(S: MultSet) -> bool:
    return saturate(S).members == S.members


def complement_of(I: Ideal) -> MultSet:
    """R - p as a multiplicatively closed set (p prime)."""
    R = I.ring
    return mult_set_from_members(R, set(range(R.size)) - I.members)


@lru_cache(maxsize=128)
def multiplicative_set_masks(R: FiniteRing) -> np.ndarray:
    """Bitmasks (uint64) of every multiplicatively closed subset, sorted."""
    check(R.size <= 64, "submonoid enumeration uses 64-bit masks")
    masks = kernels.enumerate_submonoids(R.mul, R.one).view(np.uint64)
    masks = np.sort(masks)
    masks.flags.writeable = False
    return masks


@lru_cache(maxsize=128)
def saturated_set_masks(R: FiniteRing) -> np.ndarray:
    """The saturated members of ``multiplicative_set_masks(R)``."""
    masks = multiplicative_set_masks(R)
    shifts = np.arange(R.size, dtype=np.uint64)
    keep = np.zeros(masks.size, dtype=bool)
    for start in range(0, masks.size, 4096):
        chunk = masks[start:start + 4096]
        bits = ((chunk[:, None] >> shifts[None, :]) & np.uint64(1)).astype(bool)
        divisors = bits[:, R.mul].any(axis=2)
        keep[start:start + 4096] = (divisors == bits).all(axis=1)
    out = masks[keep]
    out.flags.writeable = False
    return out


@lru_cache(maxsize=128)
def multiplicative_sets(R: FiniteRing) -> tuple[MultSet, ...]:
    """Every multiplicatively closed subset of ``R`` (closures of all generator subsets)."""
    return tuple(MultSet(R, _mask_members(m)) for m in multiplicative_set_masks(R))


# -- prime avoidance -----------------------------------------------------------------

def satisfies_PA(family: Sequence[Ideal], R: FiniteRing) -> bool:
    """Prime avoidance for ``family``, decided by exhaustion over ``ideals(R)``."""
    for p in family:
        if p.ring != R or not _is_prime_ideal(p):
            raise ValueError(f"{p!r} is not a prime ideal of {R.name}")
    union = frozenset().union(*(p.members for p in family))
    for I in ideals(R):
        if I.members <= union and not any(I.members <= p.members for p in family):
            return False
    return True
