"""Run a configured set of analyses and render the result as JSON, text or DOT."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable

import networkx as nx

from .algebra import format_label, make_mult_set, make_ring
from .checks import (
    induced_map_check, localization_homeo_check, prime_avoidance_checks, semi_local_compact_check,
)
from .config import ANALYSES, AnalysisConfig
from .errors import InvariantError, SizeBoundError
from .modules import (
    is_faithful, is_multiplication, make_module, quotient, submodule_generated,
)
from .oracle import compare, oracle_predicates, spec_topology
from .topology import (
    SpecSpace, build_spec_space, closure, comparability_connected, compact_cover, d_set,
    derived_set, interior, is_connected, is_discrete, is_lindelof, is_nested, is_quasi_compact,
    is_T0, is_T1, is_T2, is_T3, isolated_points, v_set,
)
from . import zlattice

CONVENTIONS = {
    "empty": "an empty spectrum is reported as not connected, with every separation axiom true "
             "and an empty compact cover",
    "compact": "compact is read as quasi-compact (no Hausdorff requirement)",
    "local": "finite spaces are locally compact; no separate predicate is reported",
    "dot": "points with equal colon ideals are indistinguishable and are drawn as one box node "
           "listing its members",
}


@dataclass
class RunContext:
    config: AnalysisConfig
    max_module_size: int
    max_oracle_points: int
    use_oracle: bool
    seed: int
    module: object = None
    space: SpecSpace | None = None
    topology: object = None
    notes: list[str] = field(default_factory=list)
    problems: list[str] = field(default_factory=list)

    def names(self, pts) -> list[str]:
        return [self.space.points[i].name for i in sorted(pts)]

    def point(self, ref) -> int:
        if isinstance(ref, int):
            if not 0 <= ref < self.space.n:
                raise ValueError(f"point index {ref} out of range")
            return ref
        names = self.space.names
        if ref not in names:
            raise ValueError(f"unknown point {ref!r}; points are {names}")
        return names.index(ref)


def _mult_sets(ctx: RunContext):
    R = ctx.module.ring
    return [make_mult_set(R, [_label(g) for g in gens]) for gens in ctx.config.mult_sets]


def _label(x):
    return tuple(x) if isinstance(x, list) else x


# -- analyses ------------------------------------------------------------------------------

def _spec(ctx: RunContext) -> dict:
    X = ctx.space
    out = {
        "points": X.n,
        "names": X.names,
        "minimal_opens": {X.points[p].name: ctx.names(X.min_open[p]) for p in range(X.n)},
        "isolated": ctx.names(isolated_points(X)),
    }
    if ctx.topology is not None:
        out["open_sets"] = [ctx.names(ctx.topology.points(o)) for o in ctx.topology.opens]
        out["open_count"] = int(ctx.topology.opens.size)
    return out


def _separation(ctx: RunContext) -> dict:
    X = ctx.space
    t2 = is_T2(X)
    return {"T0": is_T0(X), "T1": is_T1(X), "T2": t2, "T3": is_T3(X),
            "discrete": is_discrete(X), "hausdorff": t2}


def _nested(ctx: RunContext) -> dict:
    return {"nested": is_nested(ctx.space)}


def _connected(ctx: RunContext) -> dict:
    return {"connected": is_connected(ctx.space),
            "comparability_connected": comparability_connected(ctx.module),
            "multiplication_module": is_multiplication(ctx.module)}


def _closure_ops(ctx: RunContext) -> dict:
    X = ctx.space
    declared = ctx.config.subsets or {name: [name] for name in X.names}
    out = {}
    for name, refs in declared.items():
        N = frozenset(ctx.point(r) for r in refs)
        out[name] = {"subset": ctx.names(N), "closure": ctx.names(closure(X, N)),
                     "interior": ctx.names(interior(X, N)), "derived_set": ctx.names(derived_set(X, N))}
    families = {}
    sets = _mult_sets(ctx)
    for name, idx in ctx.config.families.items():
        families[name] = ctx.names(v_set(X, [sets[i] for i in idx]))
    if families:
        out["closed_sets"] = families
    return out


def _compactness(ctx: RunContext) -> dict:
    X = ctx.space
    return {"compact_cover": ctx.names(compact_cover(X)), "quasi_compact": is_quasi_compact(X),
            "lindelof": is_lindelof(X)}


def _semi_local(ctx: RunContext) -> dict:
    r = semi_local_compact_check(ctx.module, ctx.space)
    if not r.hypotheses_met:
        ctx.problems.append(f"semi-local: {r.note}")
    elif not r.ok:
        ctx.problems.append("semi-local: sides disagree")
    return r.as_dict()


def _prime_avoidance(ctx: RunContext) -> list:
    X = ctx.space
    pairs = ctx.config.prime_families
    if not pairs and X.n:
        pairs_idx = [([0], [X.n - 1])]
    else:
        pairs_idx = [([ctx.point(r) for r in f.P], [ctx.point(r) for r in f.Q]) for f in pairs]
    out = []
    for P, Q in pairs_idx:
        r = prime_avoidance_checks(ctx.module, P, Q, X)
        if not r.ok:
            ctx.problems.append("prime-avoidance: identity fails")
        out.append({"P": ctx.names(P), "Q": ctx.names(Q), **r.as_dict()})
    return out


def _localization(ctx: RunContext) -> list:
    sets = _mult_sets(ctx) or [make_mult_set(ctx.module.ring, [])]
    out = []
    for S in sets:
        D = d_set(ctx.space, S)
        r = localization_homeo_check(ctx.module, S, ctx.max_oracle_points, ctx.space)
        if not r.ok:
            ctx.problems.append(f"localization at {S.name}: {r.counterexample}")
        out.append({"S": S.name, "d_set": ctx.names(D), **r.as_dict()})
    return out


def _induced_map(ctx: RunContext) -> dict:
    epi = ctx.config.epimorphism
    if epi is None:
        raise ValueError("no 'epimorphism' declared")
    N = submodule_generated(ctx.module, [_label(x) for x in epi.kernel])
    Q, proj = quotient(ctx.module, N)
    r = induced_map_check(proj, ctx.max_oracle_points)
    if not r.ok:
        ctx.problems.append(f"induced-map: {r.counterexample}")
    return {"kernel": N.name, "target_size": Q.size, **r.as_dict()}


def _oracle_compare(ctx: RunContext) -> dict:
    if ctx.topology is None:
        return {"skipped": "oracle disabled"}
    found = compare(ctx.space, ctx.topology, samples=ctx.config.bounds.samples, seed=ctx.seed)
    preds = oracle_predicates(ctx.topology)
    if found:
        ctx.problems.append(f"oracle-compare: {len(found)} discrepancies")
    return {"sampled": ctx.topology.sampled, "discrepancies": [d.as_dict() for d in found],
            "predicates": {k: v for k, v in vars(preds).items() if k != "sampled"}}


def _lattice_witness(ctx: RunContext) -> dict:
    spec = ctx.config.lattice
    subs = {name: zlattice.hnf(g, spec.rank) for name, g in spec.submodules.items()}
    out = {"rank": spec.rank, "submodules": {}, "pairs": []}
    for name, N in subs.items():
        out["submodules"][name] = {"basis": str(N), "prime": zlattice.is_prime_lattice(N),
                                   "colon": zlattice.colon_lattice(N)}
    names = list(subs)
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            w = zlattice.t0_witness(subs[a], subs[b])
            verdict = "T0 criterion fails" if w["t0_criterion_fails"] else "T0 criterion not refuted"
            out["pairs"].append({"P": a, "Q": b, **w, "verdict": verdict})
    return out


RUNNERS: dict[str, Callable] = {
    "spec": _spec,
    "separation": _separation,
    "nested": _nested,
    "connected": _connected,
    "closure-operators": _closure_ops,
    "compactness": _compactness,
    "semi-local": _semi_local,
    "prime-avoidance": _prime_avoidance,
    "localization": _localization,
    "induced-map": _induced_map,
    "oracle-compare": _oracle_compare,
    "lattice-witness": _lattice_witness,
}


# -- orchestration --------------------------------------------------------------------------

@dataclass
class RunResult:
    report: dict
    clean: bool
    space: SpecSpace | None = None


def _instance(cfg: AnalysisConfig, ctx: RunContext) -> dict:
    out = {}
    if ctx.module is not None:
        M = ctx.module
        out["ring"] = M.ring.name
        out["module"] = {"factors": [list(f) if isinstance(f, tuple) else f for f in cfg.module.factors],
                         "size": M.size, "faithful": is_faithful(M)}
        out["mult_sets"] = [S.name for S in _mult_sets(ctx)]
    if cfg.lattice is not None:
        out["lattice"] = {"rank": cfg.lattice.rank, "submodules": cfg.lattice.submodules}
    out["seed"] = ctx.seed
    return out


def run(cfg: AnalysisConfig, max_module_size: int | None = None, max_oracle_points: int | None = None,
        use_oracle: bool = True, seed: int | None = None) -> RunResult:
    """Execute the configured analyses in vocabulary order.

    Resource-bound violations raise ``SizeBoundError``; any other failure is
    recorded inside its analysis entry.
    """
    ctx = RunContext(cfg, max_module_size or cfg.bounds.max_module_size,
                     max_oracle_points or cfg.bounds.max_oracle_points, use_oracle,
                     cfg.seed if seed is None else seed)
    if cfg.module is not None:
        R = make_ring(cfg.ring.shape, cfg.bounds.max_ring_size)
        factors = [tuple(f) if isinstance(f, (list, tuple)) else f for f in cfg.module.factors]
        ctx.module = make_module(R, factors, max_size=ctx.max_module_size)
        ctx.space = build_spec_space(ctx.module)
        if use_oracle:
            ctx.topology = spec_topology(ctx.space, "mult", ctx.max_oracle_points,
                                         seed=ctx.seed)
            if ctx.topology.sampled:
                ctx.notes.append(f"oracle ran in sampled mode: {ctx.space.n} points exceed "
                                 f"the bound of {ctx.max_oracle_points}")
        else:
            ctx.notes.append("oracle disabled; no fast-path cross-check was made")

    analyses = {}
    for name in ANALYSES:
        if name not in cfg.analyses:
            continue
        try:
            analyses[name] = RUNNERS[name](ctx)
        except SizeBoundError:
            raise
        except (InvariantError, ValueError) as e:
            analyses[name] = {"error": str(e)}
            ctx.problems.append(f"{name}: {e}")

    report = {"instance": _instance(cfg, ctx)}
    if ctx.space is not None:
        report["spec"] = [{"name": P.name, "elements": [format_label(x) for x in P.elements],
                           "colon": P.colon.name} for P in ctx.space.points]
    report["analyses"] = analyses
    if ctx.topology is not None:
        found = analyses.get("oracle-compare", {}).get("discrepancies")
        report["oracle"] = {"opens": int(ctx.topology.opens.size), "sampled": ctx.topology.sampled,
                            "compared": found is not None,
                            "discrepancies": len(found) if found is not None else None}
    notes = list(ctx.notes)
    if ctx.space is not None:
        if ctx.space.n == 0:
            notes.append(CONVENTIONS["empty"])
        if not is_T0(ctx.space):
            notes.append(CONVENTIONS["dot"])
        if {"compactness", "semi-local"} & set(cfg.analyses):
            notes += [CONVENTIONS["compact"], CONVENTIONS["local"]]
    notes += ctx.problems
    report["notes"] = notes
    return RunResult(report, not ctx.problems, ctx.space)


# -- emitters -------------------------------------------------------------------------------

def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def _fmt_value(v) -> str:
    if isinstance(v, list):
        return "{" + ", ".join(_fmt_value(x) for x in v) + "}"
    if isinstance(v, dict):
        return ", ".join(f"{k}={_fmt_value(x)}" for k, x in v.items())
    return str(v)


def to_text(report: dict) -> str:
    lines = []
    inst = report["instance"]
    if "ring" in inst:
        lines.append(f"{inst['ring']}-module of size {inst['module']['size']} "
                     f"(factors {inst['module']['factors']})")
    for P in report.get("spec", []):
        lines.append(f"  prime {P['name']}  colon {P['colon']}")
    for name, result in report["analyses"].items():
        lines.append(f"[{name}]")
        items = result.items() if isinstance(result, dict) else enumerate(result)
        for key, value in items:
            if isinstance(value, list) and value and isinstance(value[0], dict):
                lines.append(f"  {key}:")
                lines += [f"    {_fmt_value(x)}" for x in value]
            else:
                lines.append(f"  {key}: {_fmt_value(value)}")
    if "oracle" in report:
        o = report["oracle"]
        lines.append(f"oracle: {o['opens']} open sets, discrepancies {o['discrepancies']}")
    for n in report["notes"]:
        lines.append(f"note: {n}")
    return "\n".join(lines) + "\n"


def _dot_id(i: int) -> str:
    return f"c{i}"


def to_dot(space: SpecSpace) -> str:
    """Colon preorder with equivalent points collapsed; edges follow strict inclusion."""
    classes: dict[frozenset, list[int]] = {}
    for i, P in enumerate(space.points):
        classes.setdefault(P.colon.members, []).append(i)
    keys = list(classes)
    g = nx.DiGraph()
    g.add_nodes_from(range(len(keys)))
    for a, ka in enumerate(keys):
        for b, kb in enumerate(keys):
            if ka < kb:
                g.add_edge(a, b)
    reduced = nx.transitive_reduction(g)
    lines = ["digraph colon_preorder {", "  rankdir=BT;"]
    for c, key in enumerate(keys):
        members = [space.points[i].name for i in classes[key]]
        colon = space.points[classes[key][0]].colon.name
        if len(members) > 1:
            label = "\\n".join(members) + f"\\ncolon {colon}"
            lines.append(f'  {_dot_id(c)} [shape=box, label="{label}"];')
        else:
            lines.append(f'  {_dot_id(c)} [shape=ellipse, label="{members[0]}"];')
    for a, b in sorted(reduced.edges()):
        lines.append(f"  {_dot_id(a)} -> {_dot_id(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
