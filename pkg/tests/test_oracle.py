import dataclasses

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spectilde.algebra import make_ring
from spectilde.errors import InvariantError, SizeBoundError
from spectilde.modules import make_module
from spectilde.oracle import (
    check_axioms, compare, oracle_closure, oracle_interior, oracle_limit_points, oracle_predicates,
    sampled_topology, spec_basis, spec_topology, topology_from_basis,
)
from spectilde.topology import build_spec_space


def space(R, factors):
    return build_spec_space(make_module(make_ring(R), factors))


def test_discrete_two_points():
    T = topology_from_basis(["a", "b"], [{"a"}, {"b"}])
    assert len(T.opens) == 4
    p = oracle_predicates(T)
    assert p.discrete and p.t0 and p.t1 and p.t2 and not p.connected


def test_indiscrete_four_points():
    T = topology_from_basis(range(4), [range(4)])
    assert len(T.opens) == 2
    p = oracle_predicates(T)
    assert not p.t0 and p.t3 and p.connected
    assert oracle_closure(T, [0]) == frozenset(range(4))
    assert oracle_limit_points(T, [0]) == frozenset({1, 2, 3})
    assert oracle_interior(T, [0]) == frozenset()


def test_discrete_operators_fix_every_subset():
    T = topology_from_basis(range(3), [{0}, {1}, {2}])
    for N in ({0}, {1, 2}, set()):
        assert oracle_closure(T, N) == oracle_interior(T, N) == frozenset(N)


def test_single_point_and_empty_universe():
    p = oracle_predicates(topology_from_basis(["x"], [{"x"}]))
    assert p.t0 and p.t1 and p.t2 and p.t3 and p.connected
    T = topology_from_basis([], [])
    assert list(T.opens) == [0]


def test_point_bound():
    with pytest.raises(SizeBoundError):
        topology_from_basis(range(21), [range(21)])
    assert topology_from_basis(range(21), [range(21)], max_points=21).n == 21


def test_unknown_basis_point():
    with pytest.raises(ValueError):
        topology_from_basis(["a"], [{"b"}])


def _intersection_closed(family):
    out = set(family)
    while True:
        more = {a & b for a in out for b in out} - out
        if not more:
            return sorted(out, key=sorted)
        out |= more


@given(st.integers(0, 7).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.frozensets(st.integers(0, max(n - 1, 0)), max_size=n), max_size=6))))
def test_generated_family_satisfies_axioms(args):
    n, family = args
    basis = _intersection_closed(b for b in family if all(x < n for x in b))
    T = topology_from_basis(range(n), basis)
    check_axioms(T)
    opens = set(T.open_sets())
    for U in opens:
        for V in opens:
            assert U | V in opens and U & V in opens
    for k in range(1 << min(len(basis), 10)):
        U = frozenset().union(*[b for i, b in enumerate(basis) if k >> i & 1])
        assert U in opens


def test_non_basis_family_is_rejected():
    T = topology_from_basis(range(4), [{0, 1, 2}, {0, 1, 3}])
    with pytest.raises(InvariantError):
        check_axioms(T)


def test_sampled_topology_is_labelled():
    T = sampled_topology(range(25), np.array([1, 2, 4], dtype=np.int64), samples=10)
    assert T.sampled and 0 in T.opens


@pytest.mark.parametrize("inst", [(6, [6]), (2, [2, 2]), (6, [2, 2, 3]), ((2, 3), [6]), (6, [])])
def test_compare_clean(inst):
    X = space(*inst)
    assert compare(X, spec_topology(X)) == []


def test_spec_topologies_from_three_bases_agree():
    X = space(12, [2, 12])
    tops = [spec_topology(X, k).opens for k in ("mult", "saturated", "min_open")]
    assert all(np.array_equal(tops[0], t) for t in tops[1:])
    with pytest.raises(ValueError):
        spec_basis(X, "nope")


def test_z6_regular_has_four_opens():
    X = space(6, [6])
    T = spec_topology(X)
    assert sorted(len(U) for U in T.open_sets()) == [0, 1, 1, 2]


def test_corrupted_preorder_is_reported():
    X = space(6, [6])
    T = spec_topology(X)
    leq = X.leq.copy()
    leq[0, 1] = True
    broken = dataclasses.replace(X, leq=leq)
    report = compare(broken, T)
    assert report
    assert {d.check for d in report} >= {"t1", "closure"}


def test_corrupted_min_open_is_reported():
    X = space(2, [2, 2])
    T = spec_topology(X)
    broken = dataclasses.replace(X, min_open=tuple(frozenset({p}) for p in range(X.n)))
    assert "min_open" in {d.check for d in compare(broken, T)}


def test_sampled_mode_checks_sampled_opens():
    X = space(2, [2, 2, 2])  # 15 points
    T = spec_topology(X, max_points=10, samples=64)
    assert T.sampled
    assert compare(X, T) == []
