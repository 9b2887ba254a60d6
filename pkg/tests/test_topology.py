import pytest
from hypothesis import given
from hypothesis import strategies as st

from spectilde.algebra import complement_of, make_mult_set, make_ring, mult_set_from_members, saturate
from spectilde.modules import make_module
from spectilde.topology import (
    build_spec_space, closed_union_family, closure, comparability_connected, compact_cover, d_set,
    derived_set, interior, is_connected, is_discrete, is_lindelof, is_nested, is_quasi_compact,
    is_T0, is_T1, is_T2, is_T3, isolated_points, v_set,
)


def space(R, factors):
    return build_spec_space(make_module(make_ring(R), factors))


def by_name(X, *names):
    return frozenset(X.names.index(n) for n in names)


@pytest.fixture
def z6():
    return space(6, [6])


@pytest.fixture
def v4():
    return space(2, [2, 2])


@pytest.fixture
def mixed():
    return space(6, [2, 2, 3])


@pytest.fixture
def single():
    return space(4, [4])


@pytest.fixture
def empty():
    return space(6, [])


def test_build_examples(z6, v4, single, empty):
    assert sorted(z6.names) == ["(2)", "(3)"]
    assert not z6.leq[0, 1] and not z6.leq[1, 0]
    assert z6.min_open == (frozenset({0}), frozenset({1}))
    assert v4.n == 4 and v4.leq.all()
    assert all(m == v4.all_points for m in v4.min_open)
    assert single.n == 1 and single.min_open == (frozenset({0}),)
    assert empty.n == 0


def test_v_set_examples(z6):
    R = z6.ring
    assert v_set(z6, [mult_set_from_members(R, [R.index(1), R.index(3)])]) == by_name(z6, "(3)")
    assert v_set(z6, [make_mult_set(R, [])]) == frozenset()
    assert v_set(z6, []) == z6.all_points


def test_d_set_examples(z6):
    R = z6.ring
    assert d_set(z6, make_mult_set(R, [2])) == by_name(z6, "(3)")
    two = next(P for P in z6.points if P.name == "(2)")
    assert d_set(z6, complement_of(two.colon)) == by_name(z6, "(2)")
    assert d_set(z6, make_mult_set(R, [])) == z6.all_points


def test_closed_union_family_examples(z6):
    R = z6.ring
    A = [mult_set_from_members(R, [R.index(1), R.index(3)])]
    B = [make_mult_set(R, [2])]
    T = closed_union_family(z6, A, B)
    assert v_set(z6, T) == v_set(z6, A) | v_set(z6, B) == z6.all_points
    assert v_set(z6, closed_union_family(z6, A, A)) == v_set(z6, A)
    one = [make_mult_set(R, [])]
    assert v_set(z6, closed_union_family(z6, A, one)) == v_set(z6, A)


def test_closure_operator_examples(z6, v4):
    zero = by_name(v4, "(0)")
    assert closure(v4, zero) == v4.all_points
    assert derived_set(v4, zero) == v4.all_points - zero
    two = by_name(z6, "(2)")
    assert closure(z6, two) == two and interior(z6, two) == two and derived_set(z6, two) == frozenset()
    for X in (z6, v4):
        assert closure(X, X.all_points) == interior(X, X.all_points) == X.all_points


def test_isolated_examples(z6, v4, single):
    assert isolated_points(z6) == z6.all_points
    assert isolated_points(v4) == frozenset()
    assert isolated_points(single) == single.all_points


def test_separation_examples(z6, v4, single):
    assert is_T0(z6) and is_T1(z6) and is_discrete(z6) and is_T2(z6)
    assert not is_T0(v4)
    assert all(f(single) for f in (is_T0, is_T1, is_T2, is_discrete, is_T3))


def test_t3_examples(z6, v4, mixed):
    assert is_T3(v4) and is_T3(z6) and is_T3(mixed)
    assert not is_T0(mixed)


def test_nested_examples(z6, v4, single):
    assert is_nested(v4) and not is_nested(z6) and is_nested(single)


def test_connected_examples(z6, v4, mixed):
    assert is_connected(v4) and comparability_connected(v4.module)
    assert not is_connected(z6) and not comparability_connected(z6.module)
    assert not is_connected(mixed)


def test_compact_cover_examples(z6, v4, empty):
    assert sorted(z6.points[p].name for p in compact_cover(z6)) == ["(2)", "(3)"]
    assert len(compact_cover(v4)) == 1
    assert compact_cover(empty) == [] and is_quasi_compact(empty) and is_lindelof(empty)


def test_empty_space_conventions(empty):
    assert all(f(empty) for f in (is_T0, is_T1, is_T2, is_T3, is_discrete, is_nested))
    assert not is_connected(empty)
    assert isolated_points(empty) == frozenset()


INSTANCES = [(6, [6]), (2, [2, 2]), (6, [2, 2, 3]), (12, [2, 12]), ((2, 3), [6]), (30, [30]),
             ((2, 4), [(2, 0), (4, 1)]), (4, [2, 4]), (3, [3, 3])]


@given(st.sampled_from(INSTANCES), st.data())
def test_closure_interior_duality_and_laws(inst, data):
    X = space(*inst)
    pick = st.frozensets(st.integers(0, X.n - 1))
    A, B = data.draw(pick), data.draw(pick)
    full = X.all_points
    assert A <= closure(X, A) and interior(X, A) <= A
    assert closure(X, closure(X, A)) == closure(X, A)
    assert closure(X, A | B) == closure(X, A) | closure(X, B)
    assert interior(X, A) == full - closure(X, full - A)
    assert derived_set(X, A) <= closure(X, A)
    assert closure(X, A) == A | derived_set(X, A)


@given(st.sampled_from(INSTANCES), st.data())
def test_d_set_invariant_under_saturation(inst, data):
    X = space(*inst)
    R = X.ring
    gens = data.draw(st.lists(st.integers(0, R.size - 1), max_size=3))
    S = make_mult_set(R, [R.label(g) for g in gens])
    assert d_set(X, S) == d_set(X, saturate(S))
    assert X.all_points - v_set(X, [S]) == d_set(X, S)


@pytest.mark.parametrize("inst", INSTANCES)
def test_min_open_contains_point(inst):
    X = space(*inst)
    for p in range(X.n):
        assert p in X.min_open[p]
        assert X.min_open[p] == frozenset(q for q in range(X.n) if X.leq[q, p])
