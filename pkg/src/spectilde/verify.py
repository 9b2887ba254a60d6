"""Sweep-level verification of the topology's characterizations.

Every ``check_*`` function takes one instance and returns a list of
counterexample strings (empty means the instance passes).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import kernels
from .algebra import MultSet, is_field_ring, multiplicative_sets, power_set, saturate
from .checks import localization_homeo_check, semi_local_compact_check
from .errors import InvariantError
from .instances import Instance
from .modules import (
    is_faithful, is_multiplication, is_zero_dimensional, minimal_primes, s_torsion,
)
from .oracle import DEFAULT_MAX_POINTS, FiniteTopology, compare, spec_topology
from .topology import (
    SpecSpace, _mask, build_spec_space, closed_union_family, closure,
    comparability_connected, compact_cover, d_set, derived_set, interior, is_connected,
    is_discrete, is_nested, is_T0, is_T1, is_T2, is_T3, isolated_points, v_set,
)


@dataclass
class Case:
    """One sweep instance with its spectrum and oracle topology built lazily."""
    instance: Instance
    max_points: int = DEFAULT_MAX_POINTS

    @property
    def label(self) -> str:
        return self.instance.label

    @cached_property
    def module(self):
        return self.instance.module

    @cached_property
    def space(self) -> SpecSpace:
        return build_spec_space(self.module)

    @cached_property
    def topology(self) -> FiniteTopology:
        return spec_topology(self.space, "mult", self.max_points)


def _safe(fn, *args) -> list[str]:
    try:
        return fn(*args)
    except InvariantError as e:
        return [f"invariant violated: {e}"]


# -- oracle equivalence ----------------------------------------------------------------

def check_oracle(case: Case, seed: int = 0) -> list[str]:
    return [f"{d.check} at {d.witness}: fast {d.fast}, oracle {d.oracle}"
            for d in compare(case.space, case.topology, seed=seed)]


# -- separation characterizations ---------------------------------------------------------

def check_characterizations(case: Case) -> list[str]:
    X, T = case.space, case.topology
    colons = [P.colon.members for P in X.points]
    pairs = [(i, j) for i in range(X.n) for j in range(X.n) if i != j]
    injective = all(colons[i] != colons[j] for i, j in pairs)
    antichain = all(not colons[i] <= colons[j] for i, j in pairs)
    chain = all(colons[i] <= colons[j] or colons[j] <= colons[i] for i, j in pairs)
    opens = set(int(o) for o in T.opens)
    full = T.full
    # a minimal open is closed iff its complement is an oracle open
    min_opens_closed = all((full & ~m) in opens for m in X.min_open_masks)
    out = []
    if is_T0(X) != injective:
        out.append(f"T0 {is_T0(X)} but colon injectivity {injective}")
    t1, t2, disc = is_T1(X), is_T2(X), is_discrete(X)
    if not (t1 == antichain == disc == t2):
        out.append(f"T1 {t1}, antichain {antichain}, discrete {disc}, Hausdorff {t2}")
    if is_T3(X) != min_opens_closed:
        out.append(f"T3 {is_T3(X)} but minimal opens closed {min_opens_closed}")
    if is_nested(X) != chain:
        out.append(f"nested {is_nested(X)} but colon chain {chain}")
    return out


# -- basis agreement --------------------------------------------------------------------

def check_basis_agreement(case: Case) -> list[str]:
    tops = {kind: spec_topology(case.space, kind, case.max_points).opens
            for kind in ("mult", "saturated", "min_open")}
    out = []
    for kind in ("saturated", "min_open"):
        if not np.array_equal(tops["mult"], tops[kind]):
            out.append(f"topology from {kind} basis differs: {tops[kind].size} vs {tops['mult'].size} opens")
    return out


# -- closed-set laws ----------------------------------------------------------------------

def _random_family(rng, sets: tuple[MultSet, ...], max_len: int = 3) -> tuple[MultSet, ...]:
    k = int(rng.integers(0, max_len + 1))
    return tuple(sets[int(i)] for i in rng.integers(0, len(sets), size=k))


def check_closed_set_laws(cases: list[Case], pairs: int = 1000, seed: int = 0) -> list[str]:
    """Laws for v_set/d_set on seeded random family pairs, spread over ``cases``.

    ``cases`` share one ring; pair k is evaluated on case k mod len(cases).
    """
    if not cases:
        return []
    R = cases[0].module.ring
    sets = multiplicative_sets(R)
    one = next(S for S in sets if S.members == frozenset({R.one}))
    rng = np.random.default_rng(seed)
    out = []
    for case in cases:
        X = case.space
        if v_set(X, [one]):
            out.append(f"{case.label}: v_set({{1}}) is nonempty")
        if v_set(X, []) != X.all_points:
            out.append(f"{case.label}: v_set of the empty family is not every point")
    for k in range(pairs):
        case = cases[k % len(cases)]
        X = case.space
        F, G = _random_family(rng, sets), _random_family(rng, sets)
        vF, vG = v_set(X, F), v_set(X, G)
        if v_set(X, F + G) != vF & vG:
            out.append(f"{case.label}: intersection law fails for {F}, {G}")
        union = closed_union_family(X, F, G)
        if v_set(X, union) != vF | vG:
            out.append(f"{case.label}: closed_union_family identity fails for {F}, {G}")
        complement = frozenset().union(*(d_set(X, A) for A in F)) if F else frozenset()
        if X.all_points - vF != complement:
            out.append(f"{case.label}: complement of v_set differs from union of d_sets for {F}")
        for A in F:
            if d_set(X, A) != d_set(X, saturate(A)):
                out.append(f"{case.label}: d_set changes under saturation of {A}")
    return out


# -- closure operators --------------------------------------------------------------------

def check_operators(case: Case, samples: int = 500, seed: int = 0) -> list[str]:
    X, T = case.space, case.topology
    if X.n == 0:
        return []
    rng = np.random.default_rng(seed)
    subsets = rng.integers(0, 1 << X.n, size=samples, dtype=np.int64)
    full = np.int64(T.full)
    cl = kernels.closure_batch(T.opens, subsets, full)
    it = kernels.interior_batch(T.opens, subsets)
    lp = kernels.limit_points_batch(T.opens, subsets, X.n)
    multiplication = is_multiplication(case.module)
    out = []
    pts = lambda m: frozenset(i for i in range(X.n) if m >> i & 1)
    for k, m in enumerate(subsets):
        N = pts(int(m))
        if _mask(closure(X, N)) != int(cl[k]):
            out.append(f"closure of {sorted(N)}")
        if _mask(interior(X, N)) != int(it[k]):
            out.append(f"interior of {sorted(N)}")
        other = pts(int(subsets[(k + 1) % samples]))
        if closure(X, N | other) != closure(X, N) | closure(X, other):
            out.append(f"closure of union {sorted(N)} and {sorted(other)}")
        if multiplication:
            try:
                D = derived_set(X, N)
            except InvariantError as e:
                out.append(f"derived set of {sorted(N)}: {e}")
                continue
            if _mask(D) != int(lp[k]):
                out.append(f"derived set of {sorted(N)} differs from oracle limit points")
    return out


# -- isolated points and connectedness ------------------------------------------------------

def check_isolated(case: Case) -> list[str]:
    X = case.space
    try:
        iso = isolated_points(X)
    except InvariantError as e:
        return [str(e)]
    iso_subs = {X.points[p].members for p in iso}
    minimal = {P.members for P in minimal_primes(case.module)}
    out = []
    if not iso_subs <= minimal:
        out.append("isolated point that is not a minimal prime")
    if X.n and is_multiplication(case.module) and iso_subs != minimal:
        out.append("multiplication module with a non-isolated minimal prime")
    return out


def check_connectedness(case: Case) -> list[str]:
    X = case.space
    try:
        conn = is_connected(X)
    except InvariantError as e:
        return [str(e)]
    by_inclusion = comparability_connected(case.module)
    out = []
    if by_inclusion and not conn:
        out.append("inclusion-connected spectrum but disconnected space")
    if is_multiplication(case.module) and by_inclusion != conn:
        out.append("multiplication module where connectedness differs from inclusion connectivity")
    if X.n and is_field_ring(case.module.ring) and not conn:
        out.append("nonzero vector space with a disconnected spectrum")
    if X.n >= 2 and is_zero_dimensional(case.module) and conn:
        out.append("zero-dimensional module with at least two primes is connected")
    return out


# -- localization ------------------------------------------------------------------------

def cyclic_sets(R) -> list[MultSet]:
    """Distinct power sets {f^n}, one per element f, in canonical order."""
    seen, out = set(), []
    for f in range(R.size):
        S = power_set(R, R.label(f))
        if S.members not in seen:
            seen.add(S.members)
            out.append(S)
    return out


def check_localization(case: Case) -> list[str]:
    X = case.space
    out = []
    seen_kernels = set()
    for S in cyclic_sets(case.module.ring):
        if not d_set(X, S):
            continue
        # the localization depends on S only through its torsion kernel and D(S)
        key = (s_torsion(case.module, S).members, d_set(X, S))
        if key in seen_kernels:
            continue
        seen_kernels.add(key)
        try:
            report = localization_homeo_check(case.module, S, case.max_points, space=X)
        except InvariantError as e:
            out.append(f"S={S.name}: {e}")
            continue
        if not report.ok:
            out.append(f"S={S.name}: {report.counterexample}")
    return out


# -- compactness -------------------------------------------------------------------------

def check_compactness(case: Case) -> list[str]:
    X = case.space
    out = []
    cover = compact_cover(X)
    union = 0
    for p in cover:
        union |= X.min_open_masks[p]
    if union != X.full_mask:
        out.append("compact_cover does not cover")
    for p in cover:
        rest = [q for q in cover if q != p]
        if _union(X, rest) == X.full_mask:
            out.append("compact_cover is not irredundant")
            break
    if is_faithful(case.module):
        report = semi_local_compact_check(case.module, X)
        if not report.ok:
            out.append(f"semi-local check disagrees: {report.witnesses}")
    return out


def _union(X, pts):
    out = 0
    for p in pts:
        out |= X.min_open_masks[p]
    return out


CASE_CHECKS = {
    "oracle_equivalence": check_oracle,
    "characterizations": check_characterizations,
    "basis_agreement": check_basis_agreement,
    "operators": check_operators,
    "isolated_points": check_isolated,
    "connectedness": check_connectedness,
    "localization": check_localization,
    "compactness": check_compactness,
}


@dataclass
class SweepResult:
    cases: int
    failures: dict[str, list[str]] = field(default_factory=dict)
    seconds: dict[str, float] = field(default_factory=dict)

    def count(self, name: str) -> int:
        return len(self.failures.get(name, []))


def run_sweep(cases: list[Case], checks=None, seed: int = 0) -> SweepResult:
    import time
    checks = checks or list(CASE_CHECKS) + ["closed_set_laws"]
    result = SweepResult(len(cases))
    for name in checks:
        start = time.perf_counter()
        failures = []
        if name == "closed_set_laws":
            by_ring: dict = {}
            for c in cases:
                by_ring.setdefault(c.instance.ring_shape, []).append(c)
            for shape, group in by_ring.items():
                failures += _safe(check_closed_set_laws, group, 1000, seed)
        else:
            fn = CASE_CHECKS[name]
            for c in cases:
                failures += [f"{c.label}: {msg}" for msg in _safe(fn, c)]
        result.failures[name] = failures
        result.seconds[name] = time.perf_counter() - start
    return result
