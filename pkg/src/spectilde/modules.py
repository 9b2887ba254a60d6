"""Finite modules over ``FiniteRing``: submodules, colon ideals and prime submodules.

A module built by ``make_module`` is a product of cyclic groups Z_d with the
ring acting on each factor through a unital ring map R -> Z_d. Quotients and
localizations are table-backed modules of the same class.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .algebra import (
    FiniteRing,
    Ideal,
    MultSet,
    _greedy_generators,
    _is_prime_ideal,
    _span,
    enumerate_closed_subgroups,
    format_generated,
    format_label,
)
from .errors import SizeBoundError, check

DEFAULT_MAX_MODULE_SIZE = 256


def _prime_powers(d: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= d:
        if d % p == 0:
            q = 1
            while d % p == 0:
                d //= p
                q *= p
            out.append((p, q))
        p += 1
    if d > 1:
        out.append((d, d))
    return out


@dataclass(frozen=True, eq=False)
class FiniteModule:
    ring: FiniteRing
    elements: tuple
    add: np.ndarray = field(repr=False)
    act: np.ndarray = field(repr=False)
    zero: int
    key: tuple = field(repr=False)
    factor_moduli: tuple | None = None
    description: str = ""

    def __eq__(self, other):
        return isinstance(other, FiniteModule) and other.key == self.key

    def __hash__(self):
        return hash(self.key)

    @property
    def size(self) -> int:
        return len(self.elements)

    @cached_property
    def _index(self) -> dict:
        return {label: i for i, label in enumerate(self.elements)}

    def index(self, label) -> int:
        if isinstance(label, list):
            label = tuple(label)
        if not isinstance(label, tuple):
            label = (label,)
        try:
            return self._index[label]
        except KeyError:
            raise ValueError(f"{label!r} is not an element of {self.description}") from None

    def label(self, i: int):
        return self.elements[i]

    @cached_property
    def whole(self) -> Submodule:
        return Submodule(self, frozenset(range(self.size)))

    @cached_property
    def zero_submodule(self) -> Submodule:
        return Submodule(self, frozenset([self.zero]))


def _factor_action(R: FiniteRing, factor) -> tuple[int, np.ndarray]:
    """Return (d, phi) where phi[i] is the image of ring element i in Z_d."""
    if isinstance(factor, (list, tuple)):
        d, component = int(factor[0]), int(factor[1])
        if not 0 <= component < len(R.moduli):
            raise ValueError(f"factor {factor!r}: ring has no component {component}")
        routes = {q: component for _, q in _prime_powers(d)}
    else:
        d = int(factor)
        routes = {}
        for _, q in _prime_powers(d):
            hits = [j for j, n in enumerate(R.moduli) if n % q == 0]
            routes[q] = hits[0] if hits else 0
    if d < 1:
        raise ValueError(f"factor modulus must be >= 1, got {d}")
    comps = np.array([R.components(i) for i in range(R.size)], dtype=np.int64)
    phi = np.zeros(R.size, dtype=np.int64)
    for q, j in routes.items():
        # CRT idempotent for the q-part of Z_d
        rest = d // q
        e = (rest * pow(rest, -1, q)) % d if rest % q else 0
        phi = (phi + (comps[:, j] % q) * e) % d
    return d, phi


def _validate_action(R: FiniteRing, add: np.ndarray, act: np.ndarray, what: str) -> None:
    n = add.shape[0]
    ok = (act[R.one] == np.arange(n)).all()
    ok = ok and (act[R.add] == add[act[:, None, :], act[None, :, :]]).all()
    ok = ok and (act[R.mul] == act[np.arange(R.size)[:, None, None], act[None, :, :]]).all()
    ok = ok and (act[:, add] == add[act[:, :, None], act[:, None, :]]).all()
    if not ok:
        raise ValueError(f"ill-defined scalar action on {what}")


def make_module(R: FiniteRing, factors: Sequence, max_size: int = DEFAULT_MAX_MODULE_SIZE) -> FiniteModule:
    """Product of cyclic groups ``Z_d`` with componentwise ring action.

    Each factor is an int ``d`` (the ring acts through the CRT-compatible
    components, first match wins) or a pair ``(d, component)`` pinning the
    ring component that acts.
    """
    actions = [_factor_action(R, f) for f in factors]
    moduli = tuple(d for d, _ in actions)
    size = int(np.prod(moduli)) if moduli else 1
    if size > max_size:
        raise SizeBoundError(f"module with factors {moduli} has {size} elements, bound is {max_size}")

    k = len(moduli)
    carrier = list(itertools.product(*(range(d) for d in moduli)))
    arr = np.array(carrier, dtype=np.int64).reshape(size, k)
    mods = np.array(moduli, dtype=np.int64)
    weights = np.ones(k, dtype=np.int64)
    for j in range(k - 2, -1, -1):
        weights[j] = weights[j + 1] * moduli[j + 1]

    def encode(v):
        return (v % mods) @ weights if k else np.zeros(v.shape[:-1], dtype=np.int64)

    add = encode(arr[:, None, :] + arr[None, :, :]).astype(np.int64)
    phis = np.stack([phi for _, phi in actions], axis=1) if k else np.zeros((R.size, 0), dtype=np.int64)
    act = encode(phis[:, None, :] * arr[None, :, :]).astype(np.int64)

    desc_factors = " x ".join(f"Z_{d}" for d in moduli) or "0"
    description = f"{R.name}-module {desc_factors}"
    _validate_action(R, add, act, description)
    norm = tuple(f if isinstance(f, int) else tuple(f) for f in factors)
    return FiniteModule(R, tuple(carrier), add, act, 0, ("factors", R.moduli, norm), moduli, description)


# -- submodules ----------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Submodule:
    module: FiniteModule
    members: frozenset[int]

    def __eq__(self, other):
        return isinstance(other, Submodule) and other.module == self.module and other.members == self.members

    def __hash__(self):
        return hash((self.module, self.members))

    def __le__(self, other) -> bool:
        return self.members <= other.members

    def __lt__(self, other) -> bool:
        return self.members < other.members

    def __len__(self):
        return len(self.members)

    def __contains__(self, label) -> bool:
        return self.module.index(label) in self.members

    @cached_property
    def indicator(self) -> np.ndarray:
        v = np.zeros(self.module.size, dtype=bool)
        v[list(self.members)] = True
        return v

    @property
    def elements(self) -> list:
        return [self.module.label(i) for i in sorted(self.members)]

    @property
    def is_proper(self) -> bool:
        return len(self.members) < self.module.size

    @cached_property
    def generators(self) -> tuple:
        M = self.module
        gens = _greedy_generators(M.add, M.act, M.zero, self.members)
        return tuple(M.label(i) for i in gens)

    @property
    def name(self) -> str:
        return format_generated(self.generators)

    def __repr__(self):
        return f"Submodule{self.name}"


@dataclass(frozen=True, eq=False)
class PrimeSubmodule:
    submodule: Submodule
    colon: Ideal

    def __eq__(self, other):
        return isinstance(other, PrimeSubmodule) and other.submodule == self.submodule

    def __hash__(self):
        return hash(("prime", self.submodule))

    @property
    def module(self) -> FiniteModule:
        return self.submodule.module

    @property
    def members(self) -> frozenset[int]:
        return self.submodule.members

    @property
    def elements(self) -> list:
        return self.submodule.elements

    @property
    def name(self) -> str:
        return self.submodule.name

    def __repr__(self):
        return f"Prime{self.name} colon={self.colon.name}"


def _as_sub(N) -> Submodule:
    return N.submodule if isinstance(N, PrimeSubmodule) else N


def _check_module(N: Submodule, M: FiniteModule | None) -> FiniteModule:
    if M is not None and N.module != M:
        raise ValueError("submodule belongs to a different module")
    return N.module


def submodule_generated(M: FiniteModule, labels: Iterable) -> Submodule:
    return _generated(M, [M.index(x) for x in labels])


def _generated(M: FiniteModule, seeds: Iterable[int]) -> Submodule:
    span = _span(M.add, M.act, M.zero, seeds)
    return Submodule(M, frozenset(np.flatnonzero(span).tolist()))


def submodule_from_members(M: FiniteModule, members: Iterable[int]) -> Submodule:
    N = Submodule(M, frozenset(members))
    ind = N.indicator
    check(ind[M.zero], "submodule must contain zero")
    check(ind[M.add[np.ix_(ind, ind)]].all(), "submodule must be closed under addition")
    check(ind[M.act[:, ind]].all(), "submodule must be closed under the action")
    return N


@lru_cache(maxsize=64)
def submodules(M: FiniteModule) -> tuple[Submodule, ...]:
    return tuple(Submodule(M, m) for m in enumerate_closed_subgroups(M.add, M.act, M.zero))


def colon(N, M: FiniteModule | None = None) -> Ideal:
    """(N:M) = {r : r*M is inside N}."""
    N = _as_sub(N)
    M = _check_module(N, M)
    vec = kernels.colon_vector(N.indicator, M.act)
    return Ideal(M.ring, frozenset(np.flatnonzero(vec).tolist()))


def is_prime_submodule(N, M: FiniteModule | None = None) -> bool:
    N = _as_sub(N)
    M = _check_module(N, M)
    if not N.is_proper:
        return False
    col = colon(N)
    if kernels.prime_violation(N.indicator, M.act, col.indicator):
        return False
    check(_is_prime_ideal(col), f"colon of prime submodule {N.name} is not a prime ideal")
    return True


@lru_cache(maxsize=64)
def spec(M: FiniteModule) -> tuple[PrimeSubmodule, ...]:
    """All prime submodules in canonical order (possibly empty)."""
    return tuple(PrimeSubmodule(N, colon(N)) for N in submodules(M) if is_prime_submodule(N))


def minimal_primes(M: FiniteModule) -> tuple[PrimeSubmodule, ...]:
    primes = spec(M)
    return tuple(P for P in primes if not any(Q.members < P.members for Q in primes))


def ideal_times_module(I: Ideal, M: FiniteModule, N: Submodule | None = None) -> Submodule:
    """I*N (N defaults to M): the submodule generated by all r*n."""
    members = M.whole.members if N is None else N.members
    rows = sorted(I.members)
    cols = sorted(members)
    seeds = np.unique(M.act[np.ix_(rows, cols)])
    return _generated(M, seeds.tolist())


def annihilator(M: FiniteModule) -> Ideal:
    return colon(M.zero_submodule)


def is_faithful(M: FiniteModule) -> bool:
    return annihilator(M).members == frozenset([M.ring.zero])


@lru_cache(maxsize=64)
def is_multiplication(M: FiniteModule) -> bool:
    return all(ideal_times_module(colon(N), M) == N for N in submodules(M))


def is_weak_multiplication(M: FiniteModule) -> bool:
    return all(ideal_times_module(P.colon, M) == P.submodule for P in spec(M))


def is_uniserial(M: FiniteModule) -> bool:
    subs = submodules(M)
    return all(a.members <= b.members or b.members <= a.members
               for a, b in itertools.combinations(subs, 2))


def is_zero_dimensional(M: FiniteModule) -> bool:
    """Every prime is minimal (and maximal): Spec(M) is an inclusion antichain."""
    primes = spec(M)
    return not any(a.members < b.members or b.members < a.members
                   for a, b in itertools.combinations(primes, 2))


# -- homomorphisms -------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ModuleEpimorphism:
    source: FiniteModule
    target: FiniteModule
    mapping: np.ndarray = field(repr=False)

    def __post_init__(self):
        src, tgt, f = self.source, self.target, np.asarray(self.mapping, dtype=np.int64)
        object.__setattr__(self, "mapping", f)
        if src.ring != tgt.ring:
            raise ValueError("epimorphism requires modules over the same ring")
        if f.shape != (src.size,) or f.min(initial=0) < 0 or f.max(initial=0) >= tgt.size:
            raise ValueError("mapping must send every source element to a target element")
        if not (f[src.add] == tgt.add[f[:, None], f[None, :]]).all():
            raise ValueError("mapping is not additive")
        if not (f[src.act] == tgt.act[:, f]).all():
            raise ValueError("mapping does not commute with the scalar action")
        if len(np.unique(f)) != tgt.size:
            raise ValueError("mapping is not surjective, so it is not an epimorphism")

    @classmethod
    def from_function(cls, source: FiniteModule, target: FiniteModule, fn) -> ModuleEpimorphism:
        return cls(source, target, np.array([target.index(fn(x)) for x in source.elements]))

    @classmethod
    def identity(cls, M: FiniteModule) -> ModuleEpimorphism:
        return cls(M, M, np.arange(M.size))

    @cached_property
    def kernel(self) -> Submodule:
        return Submodule(self.source, frozenset(np.flatnonzero(self.mapping == self.target.zero).tolist()))


def quotient(M: FiniteModule, N: Submodule) -> tuple[FiniteModule, ModuleEpimorphism]:
    """M/N with cosets labelled by their first element in canonical order."""
    check(N.module == M, "quotient by a submodule of a different module")
    idx = np.array(sorted(N.members), dtype=np.int64)
    rep = M.add[:, idx].min(axis=1)
    reps, proj = np.unique(rep, return_inverse=True)
    add = proj[M.add[np.ix_(reps, reps)]]
    act = proj[M.act[:, reps]]
    key = ("quotient", M.key, N.members)
    Q = FiniteModule(M.ring, tuple(M.elements[i] for i in reps), add, act, int(proj[M.zero]),
                     key, None, f"{M.description} / {N.name}")
    _validate_action(M.ring, add, act, Q.description)
    return Q, ModuleEpimorphism(M, Q, proj)


def pullback(f: ModuleEpimorphism, P) -> Submodule:
    """f^-1(P). For prime P the result is prime with the same colon ideal."""
    if not isinstance(f, ModuleEpimorphism):
        raise TypeError("pullback needs a ModuleEpimorphism")
    P = _as_sub(P)
    check(P.module == f.target, "submodule does not live in the target of f")
    members = frozenset(np.flatnonzero(P.indicator[f.mapping]).tolist())
    pre = Submodule(f.source, members)
    if is_prime_submodule(P):
        check(is_prime_submodule(pre), f"preimage of prime {P.name} is not prime")
        check(colon(pre) == colon(P), f"preimage of {P.name} changes the colon ideal")
    return pre


def s_torsion(M: FiniteModule, S: MultSet) -> Submodule:
    """{m : s*m = 0 for some s in S}."""
    rows = sorted(S.members)
    hit = (M.act[rows] == M.zero).any(axis=0)
    return submodule_from_members(M, np.flatnonzero(hit).tolist())


def localize(M: FiniteModule, S: MultSet) -> tuple[FiniteModule, ModuleEpimorphism]:
    """Finite localization: M/N_S with its projection; every s in S acts bijectively."""
    check(S.ring == M.ring, "multiplicative set over a different ring")
    Q, proj = quotient(M, s_torsion(M, S))
    for s in S.members:
        check(len(np.unique(Q.act[s])) == Q.size,
              f"{format_label(M.ring.label(s))} does not act bijectively on the localization")
    return Q, proj
