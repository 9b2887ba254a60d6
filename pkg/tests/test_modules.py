import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spectilde.algebra import ideal_generated, make_mult_set, make_ring, maximal_ideals, prime_ideals
from spectilde.errors import SizeBoundError
from spectilde.modules import (
    ModuleEpimorphism, annihilator, colon, ideal_times_module, is_faithful, is_multiplication,
    is_prime_submodule, is_uniserial, is_weak_multiplication, is_zero_dimensional, localize,
    make_module, minimal_primes, pullback, quotient, s_torsion, spec, submodule_generated,
    submodules,
)


def sub_of(M, labels):
    return submodule_generated(M, labels)


def brute_submodules(M):
    R = M.ring
    out = set()
    for bits in range(1 << M.size):
        S = {i for i in range(M.size) if bits >> i & 1}
        if M.zero not in S:
            continue
        if all(M.add[a, b] in S for a in S for b in S) and all(M.act[r, a] in S for r in range(R.size) for a in S):
            out.add(frozenset(S))
    return out


def brute_is_prime(N):
    M, R = N.module, N.module.ring
    if len(N.members) == M.size:
        return False
    col = {r for r in range(R.size) if all(M.act[r, m] in N.members for m in range(M.size))}
    for r in range(R.size):
        for m in range(M.size):
            if M.act[r, m] in N.members and m not in N.members and r not in col:
                return False
    return True


SMALL = [(6, [6]), (2, [2, 2]), (4, [4]), (6, [2, 2]), (4, [2, 4]), (6, [2, 6]), (12, [12]),
         ((2, 3), [6]), ((2, 2), [(2, 0), (2, 1)]), (3, [3, 3]), (2, [2, 2, 2]), (6, [2, 2, 3])]


# -- construction --------------------------------------------------------------------------

def test_make_module_examples():
    assert make_module(make_ring(6), [6]).size == 6
    M = make_module(make_ring(6), [2, 2])
    two = M.ring.index(2)
    assert M.size == 4 and (M.act[two] == M.zero).all()
    assert make_module(make_ring(2), [2]).size == 2


def test_ill_defined_action_rejected():
    with pytest.raises(ValueError, match="ill-defined"):
        make_module(make_ring(6), [4])


def test_module_size_bound():
    with pytest.raises(SizeBoundError):
        make_module(make_ring(2), [2] * 9)


def test_product_ring_routes_factors_by_crt():
    R = make_ring([2, 3])
    M = make_module(R, [6])
    assert M.size == 6 and is_faithful(M)
    pinned = make_module(R, [(2, 0), (3, 1)])
    assert len(spec(pinned)) == len(spec(M)) == 2


# -- submodules ------------------------------------------------------------------------------

@pytest.mark.parametrize("R,factors,count", [(6, [6], 4), (2, [2, 2], 5), (4, [4], 3)])
def test_submodule_counts(R, factors, count):
    assert len(submodules(make_module(make_ring(R), factors))) == count


@pytest.mark.parametrize("R,factors", SMALL)
def test_submodules_match_exhaustion(R, factors):
    M = make_module(make_ring(R), factors)
    assert {N.members for N in submodules(M)} == brute_submodules(M)


@pytest.mark.parametrize("R,factors", SMALL)
def test_primes_match_definition(R, factors):
    M = make_module(make_ring(R), factors)
    expected = {N.members for N in submodules(M) if brute_is_prime(N)}
    assert {P.members for P in spec(M)} == expected
    for P in spec(M):
        assert P.colon in prime_ideals(M.ring)


@pytest.mark.parametrize("R,factors", SMALL)
def test_primes_are_proper_submodules_over_pm(R, factors):
    # over a finite ring, P is prime iff it is proper and contains pM for a maximal p
    M = make_module(make_ring(R), factors)
    structural = set()
    for N in submodules(M):
        if N.is_proper and any(ideal_times_module(p, M).members <= N.members for p in maximal_ideals(M.ring)):
            structural.add(N.members)
    assert {P.members for P in spec(M)} == structural


@pytest.mark.parametrize("R,factors", SMALL)
def test_colon_times_module_inside_submodule(R, factors):
    M = make_module(make_ring(R), factors)
    for N in submodules(M):
        assert ideal_times_module(colon(N), M).members <= N.members


# -- colon ideals and primality ----------------------------------------------------------------

def test_colon_examples():
    Z6 = make_ring(6)
    M = make_module(Z6, [6])
    assert colon(sub_of(M, [2])) == ideal_generated(Z6, [2])
    V = make_module(make_ring(2), [2, 2])
    assert colon(sub_of(V, [(1, 0)])).name == "(0)"
    assert colon(M.whole) == ideal_generated(Z6, [1])


def test_prime_examples():
    M = make_module(make_ring(6), [6])
    assert is_prime_submodule(sub_of(M, [2]))
    assert not is_prime_submodule(M.zero_submodule)
    V = make_module(make_ring(2), [2, 2])
    assert is_prime_submodule(V.zero_submodule)


def test_spec_examples():
    M = make_module(make_ring(6), [6])
    assert sorted(P.name for P in spec(M)) == ["(2)", "(3)"]
    V = make_module(make_ring(2), [2, 2])
    assert len(spec(V)) == 4 and {P.colon.name for P in spec(V)} == {"(0)"}
    assert [P.name for P in spec(make_module(make_ring(4), [4]))] == ["(2)"]


def test_zero_module_has_empty_spectrum():
    assert spec(make_module(make_ring(6), [])) == ()


def test_minimal_primes_examples():
    M = make_module(make_ring(6), [6])
    assert sorted(P.name for P in minimal_primes(M)) == ["(2)", "(3)"]
    V = make_module(make_ring(2), [2, 2])
    assert [P.name for P in minimal_primes(V)] == ["(0)"]
    Z4 = make_module(make_ring(4), [4])
    assert [P.name for P in minimal_primes(Z4)] == ["(2)"]


# -- module classes --------------------------------------------------------------------------------

def test_multiplication_examples():
    assert is_multiplication(make_module(make_ring(6), [6]))
    V = make_module(make_ring(2), [2, 2])
    assert not is_multiplication(V) and not is_weak_multiplication(V)
    assert is_multiplication(make_module(make_ring(2), [2]))


def test_class_predicates():
    assert is_uniserial(make_module(make_ring(4), [4]))
    M = make_module(make_ring(6), [6])
    assert is_zero_dimensional(M) and is_faithful(M)
    N = make_module(make_ring(6), [2, 2])
    assert not is_faithful(N) and annihilator(N).name == "(2)"


@pytest.mark.parametrize("R,factors", SMALL)
def test_multiplication_implies_weak(R, factors):
    M = make_module(make_ring(R), factors)
    assert not is_multiplication(M) or is_weak_multiplication(M)
    assert {P.members for P in minimal_primes(M)} <= {P.members for P in spec(M)}


# -- epimorphisms ---------------------------------------------------------------------------------

def test_pullback_along_quotient():
    M = make_module(make_ring(6), [6])
    Q, proj = quotient(M, sub_of(M, [3]))
    assert Q.size == 3
    assert pullback(proj, Q.zero_submodule).name == "(3)"


def test_pullback_along_identity():
    M = make_module(make_ring(6), [2, 2, 3])
    f = ModuleEpimorphism.identity(M)
    for P in spec(M):
        assert pullback(f, P.submodule) == P.submodule


def test_pullback_along_projection():
    R = make_ring(2)
    V, W = make_module(R, [2, 2]), make_module(R, [2])
    f = ModuleEpimorphism.from_function(V, W, lambda v: (v[0],))
    assert sorted(pullback(f, W.zero_submodule).elements) == [(0, 0), (0, 1)]


def test_non_epimorphism_rejected():
    R = make_ring(2)
    V, W = make_module(R, [2]), make_module(R, [2, 2])
    with pytest.raises(ValueError):
        ModuleEpimorphism.from_function(V, W, lambda v: (v[0], 0))
    with pytest.raises(ValueError):
        ModuleEpimorphism(W, V, np.zeros(4, dtype=np.int64))


@pytest.mark.parametrize("R,factors", SMALL)
def test_pullback_preserves_primes_for_every_quotient(R, factors):
    M = make_module(make_ring(R), factors)
    for N in submodules(M):
        Q, proj = quotient(M, N)
        for P in spec(Q):
            pre = pullback(proj, P.submodule)
            assert is_prime_submodule(pre) and colon(pre) == P.colon


# -- localization --------------------------------------------------------------------------------

def test_localization_examples():
    R = make_ring(6)
    M = make_module(R, [6])
    Q, proj = localize(M, make_mult_set(R, [2]))
    assert Q.size == 3 and sorted(proj.kernel.elements) == [(0,), (3,)]
    two = R.index(2)
    assert len(np.unique(Q.act[two])) == Q.size
    Q1, p1 = localize(M, make_mult_set(R, []))
    assert Q1.size == 6 and (p1.mapping == np.arange(6)).all()
    Q3, p3 = localize(M, make_mult_set(R, [3]))
    assert Q3.size == 2 and sorted(x[0] for x in p3.kernel.elements) == [0, 2, 4]


@given(st.sampled_from(SMALL), st.integers(0, 100))
def test_localization_makes_s_bijective(inst, g):
    R, factors = inst
    M = make_module(make_ring(R), factors)
    S = make_mult_set(M.ring, [M.ring.label(g % M.ring.size)])
    Q, proj = localize(M, S)
    assert proj.kernel == s_torsion(M, S)
    for s in S.members:
        assert len(np.unique(Q.act[s])) == Q.size
