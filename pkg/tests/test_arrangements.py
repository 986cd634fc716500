"""Tests for group specs, arrangement construction, flats, and fixers."""

import pytest

from reflectarr.arrangements import (
    Arrangement,
    FullMonomial,
    GroupSpecError,
    Monomial,
    Product,
    Sporadic,
    Symmetric,
    arrangement_from_text,
    arrangement_to_text,
    build_arrangement,
    classify_fixer,
    essentialize,
    flats_of_codim,
    is_constructible,
    localize,
    parse_group,
    spec_conductor,
    spec_label,
    spec_nvars,
    spec_rank,
)


# --- specs and parsing ------------------------------------------------------

def test_parse_group_round_trip():
    for text in ("A3", "G(3,3,3)", "G(2,1,4)", "A2xG(2,2,2)", "A1xA1xA1"):
        spec = parse_group(text)
        assert spec_label(spec) == text
        assert parse_group(spec_label(spec)) == spec


def test_parse_group_shapes():
    assert parse_group("A3") == Symmetric(4)
    assert parse_group("G(3,3,2)") == Monomial(3, 2)
    assert parse_group("G(2,1,3)") == FullMonomial(2, 3)
    assert parse_group("A1xG(2,2,3)") == Product((Symmetric(2), Monomial(2, 3)))


def test_parse_group_rejects_bad_input():
    for text in ("G(3,2,3)", "G(0,0,2)", "B2", "", "x", "A-1", "G(2,2)"):
        with pytest.raises(GroupSpecError):
            parse_group(text)


def test_trivial_groups_build_empty_arrangements():
    for text in ("A0", "G(2,2,1)"):
        arr = build_arrangement(parse_group(text))
        assert len(arr) == 0


def test_sporadic_gated():
    with pytest.raises(GroupSpecError):
        parse_group("G24")
    spec = parse_group("G24", allow_sporadic=True)
    assert spec == Sporadic("G24")
    assert not is_constructible(spec)
    # sporadic names cannot appear inside products
    with pytest.raises(GroupSpecError):
        parse_group("A1xG24", allow_sporadic=True)


def test_spec_invariants():
    assert spec_nvars(Symmetric(4)) == 4
    assert spec_rank(Symmetric(4)) == 3
    assert spec_rank(Monomial(3, 3)) == 3
    assert spec_conductor(Monomial(3, 3)) == 3
    assert spec_conductor(Product((Monomial(2, 2), Monomial(3, 2)))) == 6
    assert spec_conductor(Symmetric(5)) == 1


# --- hyperplane counts and defining polynomial ------------------------------

COUNTS = {
    "A3": 6,
    "A4": 10,
    "G(3,3,3)": 9,
    "G(4,4,3)": 12,
    "G(2,1,3)": 9,
    "G(3,1,3)": 12,
    "G(2,2,4)": 12,
    "G(2,1,4)": 16,
}


def test_hyperplane_counts():
    for label, expected in COUNTS.items():
        arr = build_arrangement(parse_group(label))
        assert len(arr) == expected, label


def test_defining_polynomial_degree_and_squarefree():
    arr = build_arrangement(parse_group("G(3,3,3)"))
    f = arr.defining_polynomial()
    assert f.degree() == 9
    # squarefree: product of distinct linear forms
    assert len({h.sort_key() for h in arr}) == len(arr)


def test_product_arrangement_is_block_disjoint():
    arr = build_arrangement(parse_group("A1xG(2,2,2)"))
    assert arr.nvars == 4
    assert len(arr) == 1 + 2
    for h in arr:
        support = [i for i, c in enumerate(h.coeffs) if c]
        assert max(support) - min(support) <= 1 or support == [2, 3]


def test_duplicate_hyperplanes_deduplicated():
    arr = build_arrangement(Symmetric(3))
    again = Arrangement(arr.nvars, arr.field, list(arr) + [list(arr)[0]])
    assert len(again) == len(arr)
    from reflectarr.arrangements import Hyperplane
    clash = Hyperplane(list(arr)[0].coeffs, order=5)
    with pytest.raises(ValueError):
        Arrangement(arr.nvars, arr.field, list(arr) + [clash])


def test_rebuild_with_shuffled_order_is_canonical():
    arr = build_arrangement(parse_group("G(2,1,3)"))
    reversed_arr = Arrangement(arr.nvars, arr.field, list(arr)[::-1])
    assert [h.sort_key() for h in reversed_arr] == [h.sort_key() for h in arr]


# --- flats ------------------------------------------------------------------

FLAT_COUNTS_CODIM2 = {
    "A2": 1,
    "A3": 7,
    "A4": 25,
    "G(3,3,3)": 12,
    "G(4,4,3)": 19,
    # full monomial rank 3: 3 coordinate pairs + m^2 triples + 3m mixed
    "G(2,1,3)": 13,
    "G(3,1,3)": 21,
    "G(2,2,4)": 34,
    "G(2,1,4)": 58,
    "G(3,3,4)": 69,
}


def test_codim2_flat_counts_frozen():
    for label, expected in FLAT_COUNTS_CODIM2.items():
        arr = build_arrangement(parse_group(label))
        assert len(flats_of_codim(arr, 2)) == expected, label


def test_flat_count_formula_symmetric():
    # C(k,3) triple points plus 3*C(k,4) pairs of disjoint transpositions
    from math import comb
    for k in (3, 4, 5):
        arr = build_arrangement(Symmetric(k))
        expected = comb(k, 3) + 3 * comb(k, 4)
        assert len(flats_of_codim(arr, 2)) == expected


def test_flats_deduplicated_and_closed():
    arr = build_arrangement(parse_group("G(3,3,3)"))
    flats = flats_of_codim(arr, 2)
    seen = {f.sort_key() for f in flats}
    assert len(seen) == len(flats)
    for f in flats:
        assert len(f.incident) >= 2
        assert f.codim == 2


def test_codim3_flats():
    arr = build_arrangement(parse_group("G(2,2,4)"))
    flats = flats_of_codim(arr, 3)
    assert all(f.codim == 3 for f in flats)
    assert len(flats) == len({f.sort_key() for f in flats})
    assert len(flats) > 0


def test_incidence_is_exact():
    arr = build_arrangement(Symmetric(4))
    field = arr.field
    for flat in flats_of_codim(arr, 2):
        forms = flat.basis_forms(arr.nvars, field)
        for idx, h in enumerate(arr):
            vanishes = _form_in_span(h.form(arr.nvars, field), forms)
            assert vanishes == (idx in flat.incident)


def _form_in_span(form, basis_forms):
    from reflectarr import linalg
    field = form.field
    nv = form.nvars

    def vec(f):
        unit = [0] * nv
        out = []
        for i in range(nv):
            e = tuple(1 if j == i else 0 for j in range(nv))
            out.append(f.terms.get(e, field.zero))
        return out

    rows = [vec(f) for f in basis_forms]
    return linalg.rank(rows + [vec(form)], field) == len(rows)


# --- fixer classification ---------------------------------------------------

def fixer_distribution(label, codim=2):
    spec = parse_group(label)
    arr = build_arrangement(spec)
    dist: dict[str, int] = {}
    for flat in flats_of_codim(arr, codim):
        name = spec_label(classify_fixer(spec, flat, arr))
        dist[name] = dist.get(name, 0) + 1
    return dist


def test_fixer_distribution_g333():
    assert fixer_distribution("G(3,3,3)") == {"G(3,3,2)": 3, "A2": 9}


def test_fixer_distribution_g213():
    assert fixer_distribution("G(2,1,3)") == {
        "G(2,1,2)": 3,
        "A1xG(2,1,1)": 4,
        "A2": 4,
        "G(2,1,1)xA1": 2,
    }


def test_fixer_distribution_symmetric4():
    dist = fixer_distribution("A3")
    assert dist == {"A2": 4, "A1xA1": 3}


def test_codim3_fixers_rank4():
    dist = fixer_distribution("G(3,3,4)", codim=3)
    assert "G(3,3,3)" in dist
    total = sum(dist.values())
    assert total == len(flats_of_codim(build_arrangement(parse_group("G(3,3,4)")), 3))


# --- localization -----------------------------------------------------------

def test_localize_keeps_incident_hyperplanes():
    arr = build_arrangement(Symmetric(4))
    flat = flats_of_codim(arr, 2)[0]
    local = localize(arr, flat)
    assert len(local) == len(flat.incident)
    keys = {list(arr)[i].sort_key() for i in flat.incident}
    assert {h.sort_key() for h in local} == keys


def test_essentialize_drops_to_flat_rank():
    spec = parse_group("G(3,3,4)")
    arr = build_arrangement(spec)
    for flat in flats_of_codim(arr, 3):
        fixer = classify_fixer(spec, flat, arr)
        ess = essentialize(localize(arr, flat), flat)
        assert ess.rank() == 3
        assert len(ess) == len(flat.incident)
        # the essentialized arrangement realizes the fixer's arrangement
        assert len(ess) == len(build_arrangement(fixer))


def test_localization_preserves_subposet():
    arr = build_arrangement(Symmetric(4))
    flat = max(flats_of_codim(arr, 2), key=lambda f: len(f.incident))
    local = localize(arr, flat)
    # a triple point keeps its single codim-2 flat
    assert len(flat.incident) == 3
    assert len(flats_of_codim(local, 2)) == 1


# --- text round-trip --------------------------------------------------------

def test_text_round_trip():
    arr = build_arrangement(parse_group("G(3,3,3)"))
    text = arrangement_to_text(arr)
    back = arrangement_from_text(text)
    assert back.nvars == arr.nvars
    assert back.conductor == arr.conductor
    assert {h.sort_key() for h in back} == {h.sort_key() for h in arr}
    assert arrangement_to_text(back) == text


def test_text_round_trip_orders():
    arr = build_arrangement(parse_group("G(3,1,3)"))
    back = arrangement_from_text(arrangement_to_text(arr))
    orders = sorted(h.order for h in back)
    assert orders == sorted(h.order for h in arr)
    assert orders.count(3) == 3
