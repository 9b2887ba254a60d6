"""Exact sublattices of Z^k: Hermite/Smith normal forms, colon ideals, primality.

Everything uses Python ints; intermediate entries are unbounded.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import check


def _row_hnf(rows: list[list[int]], k: int) -> list[list[int]]:
    """Row-style Hermite normal form; returns the nonzero rows."""
    A = [list(r) for r in rows]
    pivot_row = 0
    for col in range(k):
        if pivot_row >= len(A):
            break
        # Euclid on the column until a single nonzero entry remains at pivot_row
        while True:
            nz = [i for i in range(pivot_row, len(A)) if A[i][col] != 0]
            if not nz:
                break
            i_min = min(nz, key=lambda i: abs(A[i][col]))
            A[pivot_row], A[i_min] = A[i_min], A[pivot_row]
            done = True
            for i in range(pivot_row + 1, len(A)):
                if A[i][col]:
                    q = A[i][col] // A[pivot_row][col]
                    A[i] = [a - q * b for a, b in zip(A[i], A[pivot_row])]
                    if A[i][col]:
                        done = False
            if done:
                break
        if pivot_row < len(A) and A[pivot_row][col] != 0:
            if A[pivot_row][col] < 0:
                A[pivot_row] = [-a for a in A[pivot_row]]
            p = A[pivot_row][col]
            for i in range(pivot_row):
                q = A[i][col] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[pivot_row])]
            pivot_row += 1
    return [r for r in A[:pivot_row] if any(r)]


@dataclass(frozen=True)
class LatticeSubmodule:
    ambient_rank: int
    basis: tuple[tuple[int, ...], ...]  # basis vectors, canonical HNF rows

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def columns(self) -> list[list[int]]:
        """Basis as a k x rank matrix (one column per basis vector)."""
        return [[v[i] for v in self.basis] for i in range(self.ambient_rank)]

    def pivots(self) -> list[int]:
        return [next(j for j, a in enumerate(v) if a) for v in self.basis]

    def __contains__(self, vector: Sequence[int]) -> bool:
        v = list(vector)
        if len(v) != self.ambient_rank:
            raise ValueError("vector has the wrong length")
        for row, col in zip(self.basis, self.pivots()):
            q, r = divmod(v[col], row[col])
            if r:
                return False
            v = [a - q * b for a, b in zip(v, row)]
        return not any(v)

    def __str__(self):
        return "span{" + ", ".join("(" + ",".join(map(str, v)) + ")" for v in self.basis) + "}"


def hnf(generators: Sequence[Sequence[int]], ambient_rank: int | None = None) -> LatticeSubmodule:
    """Canonical basis of the span of ``generators`` (each a vector in Z^k)."""
    gens = [list(map(int, g)) for g in generators]
    if ambient_rank is None:
        if not gens:
            raise ValueError("ambient_rank is required for an empty generator list")
        ambient_rank = len(gens[0])
    if ambient_rank < 1:
        raise ValueError("ambient rank must be >= 1")
    if any(len(g) != ambient_rank for g in gens):
        raise ValueError("all generators must have length ambient_rank")
    rows = _row_hnf(gens, ambient_rank)
    return LatticeSubmodule(ambient_rank, tuple(tuple(r) for r in rows))


def whole(k: int) -> LatticeSubmodule:
    return hnf([[int(i == j) for j in range(k)] for i in range(k)], k)


def smith_invariants(N: LatticeSubmodule) -> list[int]:
    """Nonzero Smith invariants d_1 | d_2 | ... of the basis matrix."""
    A = [list(v) for v in N.basis]
    m = len(A)
    n = N.ambient_rank
    out = []
    for t in range(m):
        # move the smallest nonzero entry of the remaining block to (t, t)
        while True:
            entries = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
            if not entries:
                return out
            _, i0, j0 = min(entries)
            A[t], A[i0] = A[i0], A[t]
            for row in A:
                row[t], row[j0] = row[j0], row[t]
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                q = A[i][t] // p
                A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                clean = clean and A[i][t] == 0
            for j in range(t + 1, n):
                q = A[t][j] // p
                for row in A:
                    row[j] -= q * row[t]
                clean = clean and A[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            # fold the offending row in so the next pass reduces the pivot
            A[t] = [a + b for a, b in zip(A[t], A[bad[0]])]
        out.append(abs(A[t][t]))
    return out


def colon_lattice(N: LatticeSubmodule) -> int:
    """The d >= 0 with (N : Z^k) = dZ."""
    k = N.ambient_rank
    if N.rank < k:
        return 0
    # full rank: the order of e_i modulo N via rational back-substitution
    d = 1
    for i in range(k):
        target = [Fraction(int(i == j)) for j in range(k)]
        denominators = 1
        coeffs = []
        for row, col in zip(N.basis, N.pivots()):
            c = target[col] / row[col]
            coeffs.append(c)
            target = [a - c * b for a, b in zip(target, row)]
        for c in coeffs:
            denominators = lcm(denominators, c.denominator)
        d = lcm(d, denominators)
    for i in range(k):
        check([d * int(i == j) for j in range(k)] in N, "colon generator fails membership")
    return d


def _is_prime_number(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p ** 0.5) + 1))


def is_prime_lattice(N: LatticeSubmodule) -> bool:
    """Prime submodule test for N inside Z^k via Smith invariants."""
    k = N.ambient_rank
    inv = smith_invariants(N)
    if N.rank < k:
        return all(d == 1 for d in inv)
    nontrivial = {d for d in inv if d != 1}
    if not nontrivial:
        return False  # N is all of Z^k
    return len(nontrivial) == 1 and _is_prime_number(next(iter(nontrivial)))


def is_prime_lattice_bruteforce(N: LatticeSubmodule, r_bound: int = 10, box: int = 10) -> bool:
    """Definitional check over |r| <= r_bound and m in [-box, box]^k.

    Complete only when a witness exists inside the bounds; callers pick test
    lattices for which that holds.
    """
    k = N.ambient_rank
    units = [[int(i == j) for j in range(k)] for i in range(k)]
    if all(u in N for u in units):
        return False
    in_colon = {r: all([r * a for a in u] in N for u in units) for r in range(-r_bound, r_bound + 1)}
    for m in itertools.product(range(-box, box + 1), repeat=k):
        if m in N:
            continue
        for r in range(-r_bound, r_bound + 1):
            if not in_colon[r] and [r * a for a in m] in N:
                return False
    return True


def t0_witness(P: LatticeSubmodule, Q: LatticeSubmodule) -> dict:
    """Evaluate whether two submodules of Z^k witness failure of the T0 criterion."""
    p_prime, q_prime = is_prime_lattice(P), is_prime_lattice(Q)
    p_colon, q_colon = colon_lattice(P), colon_lattice(Q)
    fails = P != Q and p_prime and q_prime and p_colon == q_colon
    return {
        "distinct": P != Q,
        "prime": [p_prime, q_prime],
        "colon": [p_colon, q_colon],
        "t0_criterion_fails": fails,
    }
