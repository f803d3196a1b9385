from fractions import Fraction

import pytest

from maghom.distmod import (
    DistanceModule,
    coinvariants,
    direct_sum,
    hom_from_trivial,
    invariants,
    representable_module,
    shift_module,
    trivial_module,
    validate_module,
)
from maghom.errors import UnknownPoint, UnvalidatedModule
from maghom.gen import random_module
from maghom.instances import c3, k2, standard_suite, x2


def rep_x2():
    return representable_module(x2(), "a")


def test_trivial_module_is_valid():
    for s in (k2(), c3()):
        m = trivial_module(s, 0, 1)
        assert m.validated
        assert validate_module(s, m) == []


def test_trivial_zero_rank():
    m = trivial_module(k2(), 2, 0)
    assert m.grades() == []
    assert m.total_rank(Fraction(2)) == 0


def test_trivial_shift_consistency():
    s = c3()
    assert trivial_module(s, 2, 1) == shift_module(trivial_module(s, 0, 1), 2)


def test_representable_x2():
    m = rep_x2()
    assert m.rank_at(0, Fraction(0)) == 1
    assert m.rank_at(1, Fraction(1)) == 1
    assert m.action_matrix(0, 1, Fraction(0)) == ((1,),)


def test_representable_one_point():
    from maghom.space import validate_space

    s = validate_space(["p"], [[0]])
    m = representable_module(s, "p")
    assert m.rank_at(0, Fraction(0)) == 1 and m.grades() == [0]


def test_representable_c3_validates():
    s = c3()
    m = representable_module(s, "a")
    assert validate_module(s, m) == []
    with pytest.raises(UnknownPoint):
        representable_module(s, "zz")


def test_validation_flags_composition_violation():
    s = x2()
    # claims a nonzero action but disagrees with composing through a itself
    bad = DistanceModule(
        s,
        {0: {Fraction(0): 1}, 1: {Fraction(1): 1}},
        {(0, 1): {Fraction(0): ((2,),)}},
    )
    ok = validate_module(s, bad)
    assert ok == []  # a single-pair module is consistent
    worse = DistanceModule(
        s,
        {0: {Fraction(0): 1, Fraction(1): 1}, 1: {Fraction(1): 1, Fraction(2): 1}},
        {(0, 1): {Fraction(0): ((2,),), Fraction(1): ((3,),)}},
    )
    # composing M(a,b) after M(a,a)=id must equal M(a,b): fine; but
    # between(a, b, b) holds, so M(b,b) M(a,b) = M(a,b) must hold too: fine.
    assert validate_module(s, worse) == []


def test_validation_catches_manufactured_violation():
    s = c3()
    m = representable_module(s, "a")
    actions = {pair: dict(per) for pair, per in m.actions.items()}
    # between(a, b, c) holds: killing the (b, c) action breaks composition
    actions.pop((1, 2))
    broken = DistanceModule(s, {i: dict(c) for i, c in enumerate(m.components)}, actions)
    problems = validate_module(s, broken)
    assert problems
    assert any(v.kind == "CompositionViolation" for v in problems)
    witnesses = {v.witness[:3] for v in problems if v.kind == "CompositionViolation"}
    assert ("a", "b", "c") in witnesses


def test_validation_catches_shape_mismatch():
    s = x2()
    bad = DistanceModule(
        s,
        {0: {Fraction(0): 1}, 1: {Fraction(1): 1}},
        {(0, 1): {Fraction(0): ((1, 1),)}},
    )
    problems = validate_module(s, bad)
    assert problems and problems[0].kind == "ShapeMismatch"


def test_shift_module_roundtrip():
    m = rep_x2()
    assert shift_module(m, 0) == m
    assert shift_module(shift_module(m, Fraction(3, 2)), Fraction(-3, 2)) == m
    shifted = shift_module(trivial_module(k2(), 0, 1), 2)
    assert shifted.rank_at(0, Fraction(2)) == 1


def test_invariants_trivial_k2():
    inv = invariants(trivial_module(k2(), 0, 1))
    assert [(b.grade, b.rank) for b in inv] == [(0, 2)]


def test_invariants_representable_x2():
    inv = invariants(rep_x2())
    assert [(b.grade, b.rank) for b in inv] == [(1, 1)]
    (block,) = inv
    assert block.kernels == (("b", ((1,),)),)


def test_invariants_zero_module():
    assert invariants(trivial_module(k2(), 0, 0)) == []


def test_coinvariants_trivial_k2():
    co = coinvariants(trivial_module(k2(), 0, 1))
    assert [(b.grade, b.betti, b.torsion) for b in co] == [(0, 2, ())]


def test_coinvariants_representable_x2():
    co = coinvariants(rep_x2())
    assert [(b.grade, b.betti, b.torsion) for b in co] == [(0, 1, ())]


def test_coinvariants_torsion():
    s = x2()
    doubled = DistanceModule(
        s,
        {0: {Fraction(0): 1}, 1: {Fraction(1): 1}},
        {(0, 1): {Fraction(0): ((2,),)}},
    )
    assert validate_module(s, doubled) == []
    co = coinvariants(doubled)
    assert [(b.grade, b.betti, b.torsion) for b in co] == [(0, 1, ()), (1, 0, (2,))]


def test_hom_from_trivial_examples():
    assert hom_from_trivial(trivial_module(k2(), 0, 1), 0) == 2
    assert hom_from_trivial(rep_x2(), 1) == 1
    assert hom_from_trivial(rep_x2(), 7) == 0


def test_hom_from_trivial_matches_invariants_rank():
    suite = standard_suite()
    for seed in range(12):
        _, space = suite[seed % len(suite)]
        m = random_module(space, seed)
        ranks = {b.grade: b.rank for b in invariants(m)}
        for g in m.grades():
            assert hom_from_trivial(m, g) == ranks.get(g, 0)


def test_invariants_shift_compatibility():
    m = rep_x2()
    s = Fraction(3, 2)
    shifted = shift_module(m, s)
    assert [(b.grade - s, b.rank) for b in invariants(shifted)] == [
        (b.grade, b.rank) for b in invariants(m)
    ]
    assert [(b.grade - s, b.betti, b.torsion) for b in coinvariants(shifted)] == [
        (b.grade, b.betti, b.torsion) for b in coinvariants(m)
    ]


def test_trivial_is_faithful_at_rank_level():
    s = c3()
    m = trivial_module(s, 1, 2)
    assert [(b.grade, b.rank) for b in invariants(m)] == [(1, 6)]
    assert [(b.grade, b.betti) for b in coinvariants(m)] == [(1, 6)]


def test_direct_sum_ranks_and_validity():
    a = trivial_module(c3(), 0, 1)
    b = representable_module(c3(), "a")
    m = direct_sum(a, b)
    assert m.validated
    assert m.rank_at(0, Fraction(0)) == 2
    assert validate_module(c3(), m) == []


def test_functors_require_validation():
    s = x2()
    raw = DistanceModule(s, {0: {Fraction(0): 1}, 1: {}}, {})
    with pytest.raises(UnvalidatedModule):
        invariants(raw)
    with pytest.raises(UnvalidatedModule):
        coinvariants(raw)
    with pytest.raises(UnvalidatedModule):
        hom_from_trivial(raw, 0)
