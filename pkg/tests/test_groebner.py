"""Tests for the Buchberger engine, ideal operations, and Hilbert data."""

import random

import pytest

from reflectarr.arrangements import Monomial, Symmetric, build_arrangement
from reflectarr.cyclotomic import CyclotomicField
from reflectarr.groebner import (
    BUDGET_ENV,
    Budget,
    BudgetExceededError,
    Ideal,
    hilbert_multiplicity,
    ideal_equal,
    ideal_intersection,
    ideal_power,
    ideal_product,
    ideal_sum,
    normal_form,
    radical_member,
)
from reflectarr.multipoly import GREVLEX, LEX, MultiPoly
from reflectarr.singular import singular_ideal_definitional

Q = CyclotomicField(1)


def xyz(nvars=3, field=Q):
    return [MultiPoly.variable(i, nvars, field) for i in range(nvars)]


def divides(a, b):
    return all(i <= j for i, j in zip(a, b))


def test_reduced_basis_is_monic_and_autoreduced():
    x, y, z = xyz()
    gb = Ideal([3 * x + 3 * y, 5 * y ** 2 - z * x, x * y * z]).groebner_basis()
    elems = list(gb)
    assert all(e.leading_coeff() == Q.one for e in elems)
    lms = [e.leading_monomial() for e in elems]
    for i, e in enumerate(elems):
        for j, lm in enumerate(lms):
            if i != j:
                assert not any(divides(lm, mon) for mon in e.terms)


def test_known_groebner_basis():
    x, y, _ = xyz()
    gb = Ideal([x ** 2 - y, x * y - 1]).groebner_basis(LEX)
    assert {p for p in gb} == {x - y ** 2, y ** 3 - 1}


def test_canonicity_under_shuffle():
    x, y, z = xyz()
    gens = [x ** 2 + y * z, y ** 2 - z ** 2, x * z + y ** 2, z ** 3 - x * y]
    reference = Ideal(gens).serialize()
    rng = random.Random(7)
    for _ in range(20):
        shuffled = gens[:]
        rng.shuffle(shuffled)
        assert Ideal(shuffled).serialize() == reference


def test_normal_form_and_contains():
    x, y, _ = xyz()
    ideal = Ideal([x - y])
    assert normal_form(x ** 2 - y ** 2, ideal).is_zero
    assert ideal.contains(x ** 3 - y ** 3)
    assert not ideal.contains(x + y)
    nf = normal_form(x ** 2, ideal)
    assert nf == y ** 2


def test_unit_and_zero_ideals():
    x, _, _ = xyz()
    assert Ideal([x, x + MultiPoly.one(3, Q)]).is_unit()
    assert not Ideal([x]).is_unit()
    zero = Ideal([MultiPoly.zero(3, Q)], nvars=3, field=Q)
    assert zero.is_zero_ideal()


def test_ideal_equal_presentation_independent():
    x, y, _ = xyz()
    a = Ideal([x + y, x - y])
    b = Ideal([x, y])
    assert ideal_equal(a, b)
    assert not ideal_equal(a, Ideal([x]))


def test_sum_product_power():
    x, y, z = xyz()
    a, b = Ideal([x]), Ideal([y])
    assert ideal_equal(ideal_sum(a, b), Ideal([x, y]))
    assert ideal_equal(ideal_product(a, b), Ideal([x * y]))
    sq = ideal_power(Ideal([x, y]), 2)
    assert ideal_equal(sq, Ideal([x ** 2, x * y, y ** 2]))
    assert len(ideal_power(Ideal([x, y, z]), 3).gens) == 10


def test_intersection_known_cases():
    x, y, _ = xyz()
    assert ideal_equal(ideal_intersection([Ideal([x]), Ideal([y])]),
                       Ideal([x * y]))
    got = ideal_intersection([Ideal([x ** 2, y]), Ideal([x])])
    assert ideal_equal(got, Ideal([x ** 2, x * y]))
    # intersection with the whole ring is the identity
    one = MultiPoly.one(3, Q)
    assert ideal_equal(ideal_intersection([Ideal([x]), Ideal([one])]),
                       Ideal([x]))


def test_intersection_membership_cross_check():
    x, y, z = xyz()
    a = Ideal([x - y, z ** 2])
    b = Ideal([x + y])
    both = ideal_intersection([a, b])
    for g in both.gens:
        assert a.contains(g)
        assert b.contains(g)
    # a witness in a but not b stays out
    assert not both.contains(x - y)


def test_radical_member():
    x, y, _ = xyz()
    ideal = Ideal([x ** 2])
    assert radical_member(x, ideal)
    assert not radical_member(y, ideal)
    assert radical_member(x * y, Ideal([x ** 3 * y ** 2]))


def katsura_gens():
    x, y, z = xyz()
    one = MultiPoly.one(3, Q)
    return [x + 2 * y + 2 * z - one,
            x ** 2 + 2 * y ** 2 + 2 * z ** 2 - x,
            2 * x * y + 2 * y * z - y]


def test_budget_raises_and_env_override(monkeypatch):
    with pytest.raises(BudgetExceededError):
        Ideal(katsura_gens()).groebner_basis(budget=Budget(3))
    monkeypatch.setenv(BUDGET_ENV, "3")
    with pytest.raises(BudgetExceededError) as info:
        Ideal(katsura_gens()).groebner_basis()
    assert info.value.limit == 3
    monkeypatch.delenv(BUDGET_ENV)
    Ideal(katsura_gens()).groebner_basis()


def test_budget_error_reports_usage():
    try:
        Ideal(katsura_gens()).groebner_basis(budget=Budget(1))
    except BudgetExceededError as exc:
        assert exc.used > exc.limit == 1
    else:
        pytest.fail("budget did not trip")


def test_hilbert_multiplicity_coordinate_lines():
    x, y, z = xyz()
    cross = Ideal([x * y, x * z, y * z])
    data = hilbert_multiplicity(cross)
    assert data.dimension == 1
    assert data.multiplicity == 3


def test_hilbert_multiplicity_point():
    x, y, z = xyz()
    data = hilbert_multiplicity(Ideal([x, y, z]))
    assert data.dimension == 0
    assert data.multiplicity == 1


def test_hilbert_multiplicity_counts_flats():
    data = hilbert_multiplicity(
        singular_ideal_definitional(build_arrangement(Symmetric(4))))
    assert data.dimension == 2
    assert data.multiplicity == 7
    data = hilbert_multiplicity(
        singular_ideal_definitional(build_arrangement(Monomial(3, 3))))
    assert data.dimension == 1
    assert data.multiplicity == 12


def test_content_hash_stable_under_presentation():
    x, y, _ = xyz()
    assert Ideal([x + y, x - y]).content_hash() == Ideal([y, x]).content_hash()
    assert Ideal([x]).content_hash() != Ideal([y]).content_hash()


def test_cyclotomic_coefficients_in_engine():
    field = CyclotomicField(3)
    x, y, z = xyz(3, field)
    w = field.root
    # x^3 - y^3 factors through the three twisted differences
    cubes = Ideal([x - y, x - w * y, x - w * w * y])
    prod = (x - y) * (x - w * y) * (x - w * w * y)
    assert prod == x ** 3 - y ** 3
    assert ideal_intersection([Ideal([x - w ** k * y]) for k in range(3)]) \
        .contains(x ** 3 - y ** 3)
    assert cubes.contains(x - y)
