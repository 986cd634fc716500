"""Property suites: randomized invariants at one hundred cases apiece."""

import random

from reflectarr.cyclotomic import CyclotomicField

import propsuites

CASES = 100


def test_field_axioms_hold():
    rng = random.Random(propsuites.SEED)
    field = CyclotomicField(12)
    for _ in range(CASES):
        propsuites.field_axiom_case(rng, field)


def test_groebner_canonical_under_shuffles():
    rng = random.Random(propsuites.SEED + 1)
    field = CyclotomicField(1)
    for _ in range(CASES):
        propsuites.gb_shuffle_case(rng, field)


def test_intersection_membership_agreement():
    rng = random.Random(propsuites.SEED + 2)
    field = CyclotomicField(1)
    for _ in range(CASES):
        propsuites.intersection_membership_case(rng, field)


def test_ordinary_power_inside_symbolic_power():
    rng = random.Random(propsuites.SEED + 3)
    for _ in range(CASES):
        propsuites.ordinary_in_symbolic_case(rng)


def test_vanishing_oracle_agrees_with_normal_form():
    rng = random.Random(propsuites.SEED + 4)
    for _ in range(CASES):
        propsuites.oracle_agreement_case(rng)
