"""Tests for sparse multivariate polynomials and polynomial matrices."""

import pytest

from reflectarr.cyclotomic import CyclotomicField
from reflectarr.multipoly import (
    GREVLEX,
    LEX,
    MultiPoly,
    PolyMatrix,
    PolyParseError,
    determinant,
    embed_poly,
    equal_up_to_scalar,
    format_poly,
    linear_substitution,
    maximal_minors,
    parse_poly,
    partial_derivative,
    poly_divexact,
)

Q = CyclotomicField(1)


def xyz(nvars=3, field=Q):
    return [MultiPoly.variable(i, nvars, field) for i in range(nvars)]


def test_arithmetic_and_degree():
    x, y, z = xyz()
    p = (x + y) * (x - y)
    assert p == x ** 2 - y ** 2
    assert p.degree() == 2
    assert (p - p).is_zero
    assert MultiPoly.zero(3, Q).degree() == -1
    assert p.is_homogeneous()
    assert not (p + x).is_homogeneous()


def test_leading_terms_by_order():
    x, y, z = xyz()
    p = x * y ** 2 + x ** 2 * z + y * z ** 2 + x
    # grevlex picks x^2 z among the degree-3 monomials, lex agrees here
    assert p.leading_monomial(GREVLEX) == (1, 2, 0)
    assert p.leading_monomial(LEX) == (2, 0, 1)


def test_monic():
    x, y, _ = xyz()
    p = (x + y) * 3
    assert p.monic() == x + y
    assert MultiPoly.zero(3, Q).monic().is_zero


def test_pow():
    x, y, _ = xyz()
    assert (x + y) ** 3 == x ** 3 + 3 * x ** 2 * y + 3 * x * y ** 2 + y ** 3
    assert (x + y) ** 0 == MultiPoly.one(3, Q)


def test_format_parse_roundtrip():
    x, y, z = xyz()
    polys = [x ** 2 - y ** 2, x * y * z + z ** 3, -x + 2 * y - 3 * z,
             MultiPoly.one(3, Q) * 7]
    for p in polys:
        assert parse_poly(format_poly(p), 3, Q) == p


def test_parse_cyclotomic_coefficients():
    field = CyclotomicField(3)
    p = parse_poly("z*x0 + x1", 2, field)
    assert p.coeff((1, 0)) == field.root
    with pytest.raises(PolyParseError):
        parse_poly("x0 +* x1", 2, Q)
    with pytest.raises(PolyParseError):
        parse_poly("x5", 2, Q)


def test_partial_derivative():
    x, y, z = xyz()
    p = x ** 3 * y + z
    assert partial_derivative(p, 0) == 3 * x ** 2 * y
    assert partial_derivative(p, 1) == x ** 3
    assert partial_derivative(p, 2) == MultiPoly.one(3, Q)


def test_embed_poly():
    x0, x1 = xyz(2)
    p = x0 * x1 + x0 ** 2
    q = embed_poly(p, 4, 1)
    y = xyz(4)
    assert q == y[1] * y[2] + y[1] ** 2
    with pytest.raises(ValueError):
        embed_poly(p, 3, 2)


def test_linear_substitution():
    x, y, _ = xyz()
    # swap x and y
    m = [[Q.zero, Q.one, Q.zero],
         [Q.one, Q.zero, Q.zero],
         [Q.zero, Q.zero, Q.one]]
    p = x ** 2 + 2 * y
    assert linear_substitution(p, m) == y ** 2 + 2 * x
    singular = [[Q.one, Q.zero, Q.zero]] * 3
    with pytest.raises(Exception):
        linear_substitution(p, singular)


def test_poly_divexact():
    x, y, _ = xyz()
    f = (x + y) * (x - y) * (x + 2 * y)
    g = x + 2 * y
    assert poly_divexact(f, g) == (x + y) * (x - y)
    with pytest.raises(ArithmeticError):
        poly_divexact(x ** 2 + y, x + y)


def test_equal_up_to_scalar():
    x, y, _ = xyz()
    assert equal_up_to_scalar((x + y) * 5, x + y)
    assert not equal_up_to_scalar(x + y, x - y)
    assert not equal_up_to_scalar(x + y, MultiPoly.zero(3, Q))


def test_determinant_vandermonde():
    x, y, z = xyz()
    one = MultiPoly.one(3, Q)
    m = PolyMatrix([[one, x, x ** 2],
                    [one, y, y ** 2],
                    [one, z, z ** 2]])
    want = (y - x) * (z - x) * (z - y)
    assert determinant(m) == want
    assert determinant(m, method="expansion") == want
    assert determinant(m, method="bareiss") == want


def test_maximal_minors_sign_convention():
    # minors of a (k+1) x k matrix carry the alternating cofactor signs:
    # dropping row i contributes (-1)^i det
    x, y, z = xyz()
    one = MultiPoly.one(3, Q)
    m = PolyMatrix([[one, x], [one, y], [one, z]])
    minors = maximal_minors(m)
    assert minors == [z - y, x - z, y - x]
    # alternating row expansion of a repeated-column determinant vanishes
    acc = MultiPoly.zero(3, Q)
    for row, minor in zip((x, y, z), minors):
        acc = acc + row * minor
    det = determinant(PolyMatrix([[x, one, x], [y, one, y], [z, one, z]]))
    assert acc == det
    assert acc.is_zero


def test_poly_matrix_validation():
    x, y, z = xyz()
    with pytest.raises(ValueError):
        PolyMatrix([[x, y], [z]])
    m = PolyMatrix([[x, y], [y, z]])
    assert m.drop_row(0).nrows == 1
    assert m.drop_col(1).ncols == 1
    assert m.transpose().entry(0, 1) == y
