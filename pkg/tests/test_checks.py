import pytest

from spectilde.algebra import make_mult_set, make_ring, mult_set_from_members
from spectilde.checks import (
    induced_map_check, localization_homeo_check, prime_avoidance_checks, semi_local_compact_check,
)
from spectilde.modules import ModuleEpimorphism, make_module, submodule_generated
from spectilde.topology import build_spec_space


def module(R, factors):
    return make_module(make_ring(R), factors)


def point(X, name):
    return X.names.index(name)


def test_semi_local_z6_agrees_with_witnesses():
    rep = semi_local_compact_check(module(6, [6]))
    assert rep.ok and rep.hypotheses_met and rep.quasi_compact and rep.lindelof
    assert {(w["ideal"], w["QM"]) for w in rep.witnesses} == {("(2)", "(2)"), ("(3)", "(3)")}
    assert all(w["QM_prime"] and w["colon_equals"] for w in rep.witnesses)


def test_semi_local_non_faithful_is_reported_not_raised():
    rep = semi_local_compact_check(module(6, [2, 2]))
    assert rep.ok and not rep.hypotheses_met and "not faithful" in rep.note


def test_semi_local_field():
    rep = semi_local_compact_check(module(2, [2]))
    assert rep.ok and rep.maximal_ideals == ["(0)"]


def test_prime_avoidance_z6():
    M = module(6, [6])
    X = build_spec_space(M)
    rep = prime_avoidance_checks(M, [point(X, "(2)")], [point(X, "(3)")], X)
    assert rep.ok and rep.pa_holds
    assert rep.S == ["1", "3", "5"]
    assert rep.union_identity["holds"] and sorted(rep.union_identity["lhs"]) == ["(2)", "(3)"]


def test_prime_avoidance_max_family():
    M = module(6, [6])
    X = build_spec_space(M)
    rep = prime_avoidance_checks(M, [0, 1], [0], X)
    assert rep.max_identity == {"d_set": X.names, "holds": True}
    assert rep.ok


def test_prime_avoidance_single_family_both_sides():
    M = module(6, [6])
    X = build_spec_space(M)
    rep = prime_avoidance_checks(M, [point(X, "(3)")], [point(X, "(3)")], X)
    assert rep.ok and rep.S == rep.T
    assert rep.union_identity["lhs"] == rep.union_identity["rhs"]


def test_prime_avoidance_accepts_submodules_and_rejects_non_primes():
    M = module(6, [6])
    R = M.ring
    two = submodule_generated(M, [(2,)])
    assert prime_avoidance_checks(M, [two], [two]).ok
    with pytest.raises(ValueError):
        prime_avoidance_checks(M, [submodule_generated(M, [(0,)])], [two])
    with pytest.raises(ValueError):
        prime_avoidance_checks(M, [7], [0])


def test_localization_z6_at_powers_of_two():
    M = module(6, [6])
    R = M.ring
    S = mult_set_from_members(R, [R.index(1), R.index(2), R.index(4)])
    rep = localization_homeo_check(M, S)
    assert rep.ok
    assert rep.details["d_set"] == ["(3)"]
    assert rep.details["localized_size"] == 3 and len(rep.details["localized_points"]) == 1


def test_localization_at_one_is_identity():
    M = module(12, [2, 12])
    rep = localization_homeo_check(M, make_mult_set(M.ring, []))
    assert rep.ok
    assert sorted(src for _, src in rep.mapping) == sorted(build_spec_space(M).names)


def test_induced_map_projection_onto_a_line():
    R = make_ring(2)
    M, N = make_module(R, [2, 2]), make_module(R, [2])
    f = ModuleEpimorphism.from_function(M, N, lambda x: (x[0],))
    rep = induced_map_check(f)
    assert rep.ok
    assert rep.mapping == [["(0)", f.kernel.name]]


def test_induced_map_identity():
    M = module(6, [2, 2, 3])
    rep = induced_map_check(ModuleEpimorphism.identity(M))
    assert rep.ok and all(a == b for a, b in rep.mapping)
