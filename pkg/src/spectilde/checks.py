"""Instance-level checks that tie module structure to the topology.

Each check returns a small report dataclass with an ``ok`` flag; failures
carry a counterexample instead of raising.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from .algebra import (
    Ideal, MultSet, format_label, maximal_ideals, minimal_prime_ideals, satisfies_PA,
)
from .errors import InvariantError
from .modules import (
    FiniteModule, ModuleEpimorphism, PrimeSubmodule, Submodule, colon, ideal_times_module,
    is_faithful, is_prime_submodule, localize, pullback, spec,
)
from .oracle import DEFAULT_MAX_POINTS, spec_topology
from .topology import SpecSpace, build_spec_space, d_set, is_lindelof, is_quasi_compact


def _names(space: SpecSpace, pts) -> list[str]:
    return [space.points[i].name for i in sorted(pts)]


# -- compactness and semi-locality -------------------------------------------------------

@dataclass
class SemiLocalReport:
    ok: bool
    hypotheses_met: bool
    maximal_ideals: list[str]
    semi_local: bool | None = None
    quasi_compact: bool | None = None
    countably_many_maximal: bool | None = None
    lindelof: bool | None = None
    witnesses: list[dict] = field(default_factory=list)
    note: str = ""

    def as_dict(self) -> dict:
        return asdict(self)


def semi_local_compact_check(M: FiniteModule, space: SpecSpace | None = None) -> SemiLocalReport:
    """Finite-ring analogue: Max(R) finite iff compact, countable iff Lindelof.

    For faithful M, every maximal ideal Q must satisfy (QM : M) = Q with QM prime.
    """
    R = M.ring
    maxes = maximal_ideals(R)
    names = [Q.name for Q in maxes]
    if not is_faithful(M):
        return SemiLocalReport(True, False, names, note="hypotheses unmet: module is not faithful")
    space = space or build_spec_space(M)
    compact = is_quasi_compact(space)
    lindelof = is_lindelof(space)
    witnesses = []
    aligned = True
    for Q in maxes:
        QM = ideal_times_module(Q, M)
        prime = is_prime_submodule(QM)
        colon_ok = colon(QM) == Q
        aligned = aligned and prime and colon_ok
        witnesses.append({"ideal": Q.name, "QM": QM.name, "QM_prime": prime, "colon_equals": colon_ok})
    # a finite ring has finitely, hence countably, many maximal ideals
    semi_local = countable = True
    ok = aligned and semi_local == compact and countable == lindelof
    return SemiLocalReport(ok, True, names, semi_local, compact, countable, lindelof, witnesses)


# -- prime avoidance -------------------------------------------------------------------

@dataclass
class PrimeAvoidanceReport:
    ok: bool
    S: list
    T: list
    pa_holds: bool
    union_identity: dict | None = None
    max_identity: dict | None = None
    minimal_identity: dict | None = None
    notes: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return asdict(self)


def _as_primes(space: SpecSpace, family) -> list[PrimeSubmodule]:
    out = []
    for P in family:
        if isinstance(P, int):
            if not 0 <= P < space.n:
                raise ValueError(f"point index {P} out of range")
            out.append(space.points[P])
            continue
        sub = P.submodule if isinstance(P, PrimeSubmodule) else P
        if not isinstance(sub, Submodule) or sub.module != space.module:
            raise ValueError("family members must be submodules of the module")
        if not is_prime_submodule(sub):
            raise ValueError(f"{sub.name} is not a prime submodule")
        out.append(PrimeSubmodule(sub, colon(sub)))
    return out


def _avoiding(R, colons: Sequence[Ideal]) -> frozenset[int]:
    """R minus the union of the given ideals, as a raw element set."""
    union = frozenset().union(*(I.members for I in colons))
    return frozenset(range(R.size)) - union


def prime_avoidance_checks(M: FiniteModule, P_family: Sequence, Q_family: Sequence,
                           space: SpecSpace | None = None) -> PrimeAvoidanceReport:
    space = space or build_spec_space(M)
    R = M.ring
    Ps, Qs = _as_primes(space, P_family), _as_primes(space, Q_family)
    p_colons = list({P.colon: None for P in Ps})
    q_colons = list({Q.colon: None for Q in Qs})
    S, T = _avoiding(R, p_colons), _avoiding(R, q_colons)
    label = lambda X: [format_label(R.label(i)) for i in sorted(X)]
    all_colons = list({c: None for c in p_colons + q_colons})
    pa = satisfies_PA(all_colons, R)
    ok = True
    notes = []

    union_identity = None
    if pa:
        lhs = d_set(space, S) | d_set(space, T)
        rhs = d_set(space, S & T)
        union_identity = {"lhs": _names(space, lhs), "rhs": _names(space, rhs), "holds": lhs == rhs}
        ok = ok and lhs == rhs
    else:
        notes.append("union identity skipped: family fails prime avoidance")

    max_identity = None
    maxes = set(maximal_ideals(R))
    if set(p_colons) == maxes:
        got = d_set(space, S)
        max_identity = {"d_set": _names(space, got), "holds": got == space.all_points}
        ok = ok and got == space.all_points

    minimal_identity = None
    incomparable = all(not (a.members < b.members) for a in p_colons for b in p_colons)
    if p_colons and incomparable and satisfies_PA(p_colons, R) and is_faithful(M):
        got = d_set(space, S)
        same_colon = frozenset(i for i, P in enumerate(space.points) if P.colon in p_colons)
        lhs = got == same_colon
        rhs = set(p_colons) <= set(minimal_prime_ideals(R))
        minimal_identity = {"d_set_is_colon_class": lhs, "colons_minimal": rhs, "holds": lhs == rhs}
        ok = ok and lhs == rhs
    else:
        notes.append("minimal-prime criterion skipped: needs incomparable PA colons and a faithful module")

    return PrimeAvoidanceReport(ok, label(S), label(T), pa, union_identity, max_identity,
                                minimal_identity, notes)


# -- continuous maps ----------------------------------------------------------------------

@dataclass
class MapReport:
    ok: bool
    mapping: list[list[str]] = field(default_factory=list)
    counterexample: str | None = None
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return asdict(self)


def _point_index(space: SpecSpace, sub: Submodule) -> int | None:
    for i, P in enumerate(space.points):
        if P.members == sub.members:
            return i
    return None


def _preimage(mapping: list[int], mask: int) -> int:
    out = 0
    for src, dst in enumerate(mapping):
        if mask >> dst & 1:
            out |= 1 << src
    return out


def _image(mapping: list[int], mask: int) -> int:
    out = 0
    for src, dst in enumerate(mapping):
        if mask >> src & 1:
            out |= 1 << dst
    return out


def _pull_points(f: ModuleEpimorphism, source: SpecSpace, target: SpecSpace):
    """Index of the pullback of each target point, or a counterexample string."""
    mapping = []
    for P in target.points:
        try:
            pre = pullback(f, P.submodule)
        except InvariantError as e:
            return None, f"{P.name}: {e}"
        i = _point_index(source, pre)
        if i is None:
            return None, f"{P.name}: preimage {pre.name} is not a point of the source spectrum"
        mapping.append(i)
    return mapping, None


def induced_map_check(f: ModuleEpimorphism, max_points: int = DEFAULT_MAX_POINTS) -> MapReport:
    """The pullback map Spec(M') -> Spec(M) is well defined and continuous."""
    source, target = build_spec_space(f.source), build_spec_space(f.target)
    mapping, problem = _pull_points(f, source, target)
    if problem:
        return MapReport(False, counterexample=problem)
    pairs = [[target.points[j].name, source.points[i].name] for j, i in enumerate(mapping)]
    T_src = spec_topology(source, "min_open", max_points)
    T_dst = spec_topology(target, "mult", max_points)
    for b in T_src.basis:
        pre = _preimage(mapping, int(b))
        if not T_dst.is_open(T_dst.points(pre)):
            return MapReport(False, pairs, f"preimage of basis open {_names(source, T_src.points(b))} "
                                           f"is {_names(target, T_dst.points(pre))}, not open")
    return MapReport(True, pairs, details={"basis_opens_checked": int(T_src.basis.size)})


def localization_homeo_check(M: FiniteModule, S: MultSet, max_points: int = DEFAULT_MAX_POINTS,
                             space: SpecSpace | None = None) -> MapReport:
    """Spec(M_S) is homeomorphic to the subspace D(S) via pullback along M -> M_S."""
    space = space or build_spec_space(M)
    target = d_set(space, S)
    ML, proj = localize(M, S)
    local = build_spec_space(ML)
    mapping, problem = _pull_points(proj, space, local)
    details = {"d_set": _names(space, target), "localized_size": ML.size,
               "localized_points": local.names}
    if problem:
        return MapReport(False, counterexample=problem, details=details)
    pairs = [[local.points[j].name, space.points[i].name] for j, i in enumerate(mapping)]
    if len(set(mapping)) != len(mapping):
        return MapReport(False, pairs, "pullback map is not injective", details)
    if frozenset(mapping) != target:
        return MapReport(False, pairs, f"image {_names(space, mapping)} differs from D(S)", details)

    T_local = spec_topology(local, "mult", max_points)
    T_whole = spec_topology(space, "mult", max_points)
    sub_mask = sum(1 << i for i in target)
    subspace_opens = np.unique(T_whole.opens & sub_mask)
    local_opens = set(int(o) for o in T_local.opens)
    images = set(_image(mapping, int(o)) for o in T_local.opens)
    for U in subspace_opens:
        if _preimage(mapping, int(U)) not in local_opens:
            return MapReport(False, pairs, f"not continuous at subspace open {_names(space, T_whole.points(U))}",
                             details)
    for o in T_local.opens:
        if _image(mapping, int(o)) not in set(int(u) for u in subspace_opens):
            return MapReport(False, pairs, f"not open at {_names(local, T_local.points(o))}", details)
    check_count = len(images) == len(subspace_opens)
    return MapReport(check_count, pairs, None if check_count else "open families differ in size", details)
