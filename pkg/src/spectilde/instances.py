"""Enumeration of the desk-scale instance sweep.

Rings are Z_n and Z_a x Z_b; modules are direct sums of cyclic factors given
by invariant-factor chains. A closed-form prime count (primes of M are the
proper submodules containing pM for a maximal ideal p) filters out instances
with too many points before any submodule lattice is built.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import prod

from .algebra import FiniteRing, make_ring
from .modules import FiniteModule, make_module

MAX_ZN = 30
MAX_PRODUCT = 36
MAX_MODULE_SIZE = 200
MAX_PRIMES = 20


def prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def subspace_count(q: int, k: int) -> int:
    """Number of subspaces of F_q^k (sum of Gaussian binomials)."""
    total = 0
    for j in range(k + 1):
        num = den = 1
        for i in range(j):
            num *= q ** (k - i) - 1
            den *= q ** (i + 1) - 1
        total += num // den
    return total


def predicted_primes(n: int, chain: tuple[int, ...]) -> int:
    """#Spec of the Z_n-module with invariant factors ``chain``."""
    return sum(subspace_count(p, sum(d % p == 0 for d in chain)) - 1 for p in prime_factors(n))


def divisor_chains(n: int, max_size: int) -> list[tuple[int, ...]]:
    """Chains d_1 | d_2 | ... | d_k with d_k | n, every d_i >= 2, product <= max_size."""
    divisors = [d for d in range(2, n + 1) if n % d == 0]
    out = [()]

    def extend(chain, size):
        for d in divisors:
            if chain and d % chain[-1]:
                continue
            if size * d > max_size:
                continue
            new = chain + (d,)
            out.append(new)
            extend(new, size * d)

    extend((), 1)
    return sorted(out, key=lambda c: (prod(c), len(c), c))


@dataclass(frozen=True)
class Instance:
    ring_shape: tuple[int, ...]
    chains: tuple[tuple[int, ...], ...]  # one invariant-factor chain per ring component

    @property
    def label(self) -> str:
        ring = " x ".join(f"Z_{m}" for m in self.ring_shape)
        parts = []
        for c, chain in enumerate(self.chains):
            tag = "" if len(self.chains) == 1 else f"[{c}]"
            parts.extend(f"Z_{d}{tag}" for d in chain)
        return f"{ring}-module " + (" + ".join(parts) if parts else "0")

    @property
    def size(self) -> int:
        return prod(prod(c) for c in self.chains)

    @property
    def predicted_primes(self) -> int:
        return sum(predicted_primes(m, c) for m, c in zip(self.ring_shape, self.chains))

    @cached_property
    def ring(self) -> FiniteRing:
        return _ring(self.ring_shape)

    @cached_property
    def module(self) -> FiniteModule:
        if len(self.ring_shape) == 1:
            factors = list(self.chains[0])
        else:
            factors = [(d, c) for c, chain in enumerate(self.chains) for d in chain]
        return make_module(self.ring, factors, max_size=MAX_MODULE_SIZE)


_RINGS: dict = {}


def _ring(shape):
    if shape not in _RINGS:
        _RINGS[shape] = make_ring(shape if len(shape) > 1 else shape[0])
    return _RINGS[shape]


def sweep_rings(max_zn: int = MAX_ZN, max_product: int = MAX_PRODUCT) -> list[tuple[int, ...]]:
    rings = [(n,) for n in range(2, max_zn + 1)]
    rings += [(a, b) for a in range(2, max_product + 1) for b in range(a, max_product + 1)
              if a * b <= max_product]
    return rings


def sweep_instances(max_zn: int = MAX_ZN, max_product: int = MAX_PRODUCT,
                    max_module_size: int = MAX_MODULE_SIZE,
                    max_primes: int = MAX_PRIMES) -> list[Instance]:
    out = []
    for shape in sweep_rings(max_zn, max_product):
        if len(shape) == 1:
            combos = [(c,) for c in divisor_chains(shape[0], max_module_size)]
        else:
            a, b = shape
            combos = [(c0, c1) for c0 in divisor_chains(a, max_module_size)
                      for c1 in divisor_chains(b, max_module_size)
                      if prod(c0) * prod(c1) <= max_module_size]
        for chains in combos:
            inst = Instance(shape, chains)
            if inst.predicted_primes <= max_primes:
                out.append(inst)
    return out
