"""Exact singular-locus ideals of reflection arrangements.

The package builds the hyperplane arrangements of the symmetric and
monomial reflection groups over cyclotomic fields, computes the radical
ideal of their codimension-2 singular loci by several independent
constructions, and decides containments of symbolic powers in ordinary
powers with certified witnesses.
"""

from .arrangements import (
    Arrangement,
    FullMonomial,
    GroupSpec,
    GroupSpecError,
    Monomial,
    Product,
    Sporadic,
    Symmetric,
    build_arrangement,
    flats_of_codim,
    parse_group,
    spec_label,
    spec_rank,
)
from .cyclotomic import CycNum, CyclotomicField
from .groebner import (
    Budget,
    BudgetExceededError,
    Ideal,
    ideal_equal,
    ideal_intersection,
    normal_form,
    radical_member,
)
from .multipoly import MultiPoly, format_poly, parse_poly
from .singular import (
    basic_invariants,
    explicit_generators,
    hilbert_burch_multiplicity,
    load_sporadic_table,
    singular_ideal_definitional,
    sporadic_table_check,
    verify_theorem_eqJ,
)
from .symbolic import (
    ContainmentQuery,
    ContainmentReport,
    alpha,
    check_containment,
    in_symbolic_power,
    product_containment,
    reduce_via_localization,
    symbolic_power,
)

__version__ = "0.1.0"

__all__ = [
    "Arrangement", "Budget", "BudgetExceededError", "ContainmentQuery",
    "ContainmentReport", "CycNum", "CyclotomicField", "FullMonomial",
    "GroupSpec", "GroupSpecError", "Ideal", "Monomial", "MultiPoly",
    "Product", "Sporadic", "Symmetric", "alpha", "basic_invariants",
    "build_arrangement", "check_containment", "explicit_generators",
    "flats_of_codim", "format_poly", "hilbert_burch_multiplicity",
    "ideal_equal", "ideal_intersection", "in_symbolic_power",
    "load_sporadic_table", "normal_form", "parse_group", "parse_poly",
    "product_containment", "radical_member", "reduce_via_localization",
    "singular_ideal_definitional", "spec_label", "spec_rank",
    "sporadic_table_check", "symbolic_power", "verify_theorem_eqJ",
]
