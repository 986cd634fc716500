"""Sparse multivariate polynomials over a cyclotomic field.

Monomials are exponent tuples; a polynomial is a dict from exponent tuple
to a nonzero CycNum.  Three monomial orders are supported: graded reverse
lexicographic, lexicographic, and a block order that eliminates a leading
group of variables (grevlex inside each block).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .cyclotomic import CyclotomicField, CycNum


@dataclass(frozen=True)
class MonomialOrder:
    name: str
    block: int = 0

    def key(self, e: tuple[int, ...]):
        if self.name == "grevlex":
            return (sum(e), *(-v for v in reversed(e)))
        if self.name == "lex":
            return e
        if self.name == "elim":
            k = self.block
            head, tail = e[:k], e[k:]
            return (sum(head), *(-v for v in reversed(head)),
                    sum(tail), *(-v for v in reversed(tail)))
        raise ValueError(f"unknown order {self.name!r}")

    def label(self) -> str:
        return f"elim{self.block}" if self.name == "elim" else self.name


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def elimination_order(block: int) -> MonomialOrder:
    """Block order whose leading block of `block` variables is eliminated."""
    if block < 1:
        raise ValueError("elimination block must be nonempty")
    return MonomialOrder("elim", block)


def order_from_label(label: str) -> MonomialOrder:
    if label == "grevlex":
        return GREVLEX
    if label == "lex":
        return LEX
    m = re.fullmatch(r"elim(\d+)", label)
    if m:
        return elimination_order(int(m.group(1)))
    raise ValueError(f"unknown order label {label!r}")


def exp_add(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def exp_sub(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x - y for x, y in zip(a, b))


def exp_lcm(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(max(x, y) for x, y in zip(a, b))


def exp_divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(a, b))


class MultiPoly:
    """Immutable sparse polynomial; do not mutate `terms` after creation."""

    __slots__ = ("nvars", "field", "terms")

    def __init__(self, nvars: int, field: CyclotomicField, terms=None):
        self.nvars = nvars
        self.field = field
        clean: dict[tuple[int, ...], CycNum] = {}
        for e, c in (terms or {}).items():
            c = field.coerce(c)
            if c:
                clean[tuple(e)] = c
        self.terms = clean

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, nvars: int, field: CyclotomicField) -> "MultiPoly":
        return cls(nvars, field)

    @classmethod
    def constant(cls, value, nvars: int, field: CyclotomicField) -> "MultiPoly":
        return cls(nvars, field, {(0,) * nvars: field.coerce(value)})

    @classmethod
    def one(cls, nvars: int, field: CyclotomicField) -> "MultiPoly":
        return cls.constant(1, nvars, field)

    @classmethod
    def variable(cls, i: int, nvars: int, field: CyclotomicField) -> "MultiPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, field, {tuple(e): field.one})

    @classmethod
    def linear_form(cls, coeffs, nvars: int, field: CyclotomicField) -> "MultiPoly":
        terms = {}
        for i, c in enumerate(coeffs):
            c = field.coerce(c)
            if c:
                e = [0] * nvars
                e[i] = 1
                terms[tuple(e)] = c
        return cls(nvars, field, terms)

    # -- basic queries ------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def leading_term(self, order: MonomialOrder = GREVLEX):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> tuple[int, ...]:
        return self.leading_term(order)[0]

    def leading_coeff(self, order: MonomialOrder = GREVLEX) -> CycNum:
        return self.leading_term(order)[1]

    def sorted_terms(self, order: MonomialOrder = GREVLEX):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]),
                      reverse=True)

    def coeff(self, exponent) -> CycNum:
        return self.terms.get(tuple(exponent), self.field.zero)

    # -- arithmetic ----------------------------------------------------
    def _check(self, other: "MultiPoly") -> None:
        if self.nvars != other.nvars:
            raise ValueError("polynomials live in different rings")
        if self.field is not other.field:
            raise ValueError("polynomials have different coefficient fields")

    def _coerce_scalar(self, value):
        if isinstance(value, (int, Fraction, CycNum)):
            return self.field.coerce(value)
        return None

    def __add__(self, other):
        s = self._coerce_scalar(other)
        if s is not None:
            other = MultiPoly.constant(s, self.nvars, self.field)
        elif not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            cur = terms.get(e)
            v = c if cur is None else cur + c
            if v:
                terms[e] = v
            elif cur is not None:
                del terms[e]
        out = MultiPoly(self.nvars, self.field)
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = MultiPoly(self.nvars, self.field)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, MultiPoly):
            return self + (-other)
        s = self._coerce_scalar(other)
        if s is None:
            return NotImplemented
        return self + MultiPoly.constant(-s, self.nvars, self.field)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        s = self._coerce_scalar(other)
        if s is not None:
            if not s:
                return MultiPoly.zero(self.nvars, self.field)
            out = MultiPoly(self.nvars, self.field)
            out.terms = {e: c * s for e, c in self.terms.items()}
            return out
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        terms: dict[tuple[int, ...], CycNum] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = exp_add(e1, e2)
                p = c1 * c2
                cur = terms.get(e)
                v = p if cur is None else cur + p
                if v:
                    terms[e] = v
                elif cur is not None:
                    del terms[e]
        out = MultiPoly(self.nvars, self.field)
        out.terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers take nonnegative integers")
        result = MultiPoly.one(self.nvars, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def monic(self, order: MonomialOrder = GREVLEX) -> "MultiPoly":
        if not self.terms:
            return self
        inv = self.leading_coeff(order).inverse()
        return self * inv

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            s = self._coerce_scalar(other)
            if s is None:
                return NotImplemented
            other = MultiPoly.constant(s, self.nvars, self.field)
        return (self.nvars == other.nvars and self.field is other.field
                and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((self.nvars, self.field.conductor,
                     frozenset(self.terms.items())))

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"MultiPoly({format_poly(self)})"


def partial_derivative(p: MultiPoly, i: int) -> MultiPoly:
    if not 0 <= i < p.nvars:
        raise ValueError("variable index out of range")
    terms: dict[tuple[int, ...], CycNum] = {}
    for e, c in p.terms.items():
        if e[i]:
            ne = list(e)
            ne[i] -= 1
            terms[tuple(ne)] = c * e[i]
    out = MultiPoly(p.nvars, p.field)
    out.terms = terms
    return out


def embed_poly(p: MultiPoly, nvars: int, offset: int) -> MultiPoly:
    """Reinterpret p in a larger ring, shifting its variables by offset."""
    if offset < 0 or offset + p.nvars > nvars:
        raise ValueError("embedding window out of range")
    terms = {}
    for e, c in p.terms.items():
        ne = [0] * nvars
        ne[offset:offset + p.nvars] = e
        terms[tuple(ne)] = c
    out = MultiPoly(nvars, p.field)
    out.terms = terms
    return out


def linear_substitution(p: MultiPoly, matrix) -> MultiPoly:
    """Substitute x_i -> sum_j matrix[i][j] * x_j; matrix must be invertible."""
    field = p.field
    rows = [[field.coerce(c) for c in row] for row in matrix]
    if len(rows) != p.nvars or any(len(r) != p.nvars for r in rows):
        raise ValueError("substitution matrix has the wrong shape")
    if linalg.rank(rows, field) != p.nvars:
        raise linalg.SingularMatrixError("substitution matrix is singular")
    images = [MultiPoly.linear_form(row, p.nvars, field) for row in rows]
    # cache powers of each image as needed
    powers: list[list[MultiPoly]] = [[MultiPoly.one(p.nvars, field)] for _ in rows]
    result = MultiPoly.zero(p.nvars, field)
    for e, c in sorted(p.terms.items()):
        term = MultiPoly.constant(c, p.nvars, field)
        for i, k in enumerate(e):
            while len(powers[i]) <= k:
                powers[i].append(powers[i][-1] * images[i])
            if k:
                term = term * powers[i][k]
        result = result + term
    return result


def equal_up_to_scalar(p: MultiPoly, q: MultiPoly):
    """Return the scalar c with p == c*q, or None if no such c exists."""
    if p.is_zero or q.is_zero:
        return p.field.one if (p.is_zero and q.is_zero) else None
    if set(p.terms) != set(q.terms):
        return None
    e = next(iter(p.terms))
    c = p.terms[e] / q.terms[e]
    return c if p == q * c else None


# ---------------------------------------------------------------------------
# printing and parsing


def _format_cyc_coeff(c: CycNum) -> tuple[str, bool]:
    """Render a coefficient; the flag says whether it needs parentheses."""
    s = str(c)
    needs = (" " in s)
    return s, needs


def format_monomial(e: tuple[int, ...]) -> str:
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(f"x{i}")
        elif k > 1:
            parts.append(f"x{i}^{k}")
    return "*".join(parts)


def format_poly(p: MultiPoly, order: MonomialOrder = GREVLEX) -> str:
    if p.is_zero:
        return "0"
    chunks = []
    for e, c in p.sorted_terms(order):
        mono = format_monomial(e)
        coeff_str, needs_paren = _format_cyc_coeff(c)
        if not mono:
            piece = f"({coeff_str})" if needs_paren else coeff_str
        elif needs_paren:
            piece = f"({coeff_str})*{mono}"
        elif coeff_str == "1":
            piece = mono
        elif coeff_str == "-1":
            piece = f"-{mono}"
        else:
            piece = f"{coeff_str}*{mono}"
        if not chunks:
            chunks.append(piece)
        elif piece.startswith("-"):
            chunks.append(f"- {piece[1:]}")
        else:
            chunks.append(f"+ {piece}")
    return " ".join(chunks)


_TOKEN = re.compile(r"\s*(\d+|x\d+|z|[()+\-*^/])")


class PolyParseError(ValueError):
    pass


class _Parser:
    def __init__(self, text: str, nvars: int, field: CyclotomicField):
        self.nvars = nvars
        self.field = field
        self.tokens: list[str] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                if text[pos:].strip():
                    raise PolyParseError(f"bad token at {text[pos:]!r}")
                break
            self.tokens.append(m.group(1))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, tok: str):
        got = self.take()
        if got != tok:
            raise PolyParseError(f"expected {tok!r}, got {got!r}")

    def parse(self) -> MultiPoly:
        p = self.expr()
        if self.peek() is not None:
            raise PolyParseError(f"trailing input at {self.peek()!r}")
        return p

    def expr(self) -> MultiPoly:
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take() == "-":
                sign = -sign
        p = self.term() * sign
        while self.peek() in ("+", "-"):
            op = self.take()
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> MultiPoly:
        p = self.factor()
        while self.peek() == "*":
            self.take()
            p = p * self.factor()
        return p

    def factor(self) -> MultiPoly:
        if self.peek() == "-":
            self.take()
            return -self.factor()
        p = self.atom()
        if self.peek() == "^":
            self.take()
            tok = self.take()
            if tok is None or not tok.isdigit():
                raise PolyParseError("exponent must be a nonnegative integer")
            p = p ** int(tok)
        return p

    def atom(self) -> MultiPoly:
        tok = self.take()
        if tok is None:
            raise PolyParseError("unexpected end of input")
        if tok == "(":
            p = self.expr()
            self.expect(")")
            return p
        if tok == "z":
            return MultiPoly.constant(self.field.root, self.nvars, self.field)
        if tok.startswith("x"):
            idx = int(tok[1:])
            if idx >= self.nvars:
                raise PolyParseError(f"variable {tok} out of range (nvars={self.nvars})")
            return MultiPoly.variable(idx, self.nvars, self.field)
        if tok.isdigit():
            num = int(tok)
            if self.peek() == "/":
                self.take()
                den = self.take()
                if den is None or not den.isdigit() or int(den) == 0:
                    raise PolyParseError("bad rational literal")
                return MultiPoly.constant(Fraction(num, int(den)),
                                          self.nvars, self.field)
            return MultiPoly.constant(num, self.nvars, self.field)
        raise PolyParseError(f"unexpected token {tok!r}")


def parse_poly(text: str, nvars: int, field: CyclotomicField) -> MultiPoly:
    return _Parser(text, nvars, field).parse()


# ---------------------------------------------------------------------------
# polynomial matrices


def poly_divexact(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Exact quotient f/g; raises ArithmeticError when g does not divide f."""
    if g.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    rem = f
    quot = MultiPoly.zero(f.nvars, f.field)
    glm, glc = g.leading_term(GREVLEX)
    while rem:
        rlm, rlc = rem.leading_term(GREVLEX)
        if not exp_divides(glm, rlm):
            raise ArithmeticError("division is not exact")
        e = exp_sub(rlm, glm)
        c = rlc / glc
        t = MultiPoly(f.nvars, f.field, {e: c})
        quot = quot + t
        rem = rem - t * g
    return quot


class PolyMatrix:
    """Dense matrix of polynomials in a fixed ring."""

    def __init__(self, rows: list[list[MultiPoly]]):
        if not rows or not rows[0]:
            raise ValueError("matrix must be nonempty")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix")
        first = rows[0][0]
        for r in rows:
            for p in r:
                if p.nvars != first.nvars or p.field is not first.field:
                    raise ValueError("entries live in different rings")
        self.entries = [list(r) for r in rows]
        self.nrows = len(rows)
        self.ncols = width
        self.nvars = first.nvars
        self.field = first.field

    def entry(self, i: int, j: int) -> MultiPoly:
        return self.entries[i][j]

    def drop_row(self, i: int) -> "PolyMatrix":
        return PolyMatrix([r for k, r in enumerate(self.entries) if k != i])

    def drop_col(self, j: int) -> "PolyMatrix":
        return PolyMatrix([[p for k, p in enumerate(r) if k != j]
                           for r in self.entries])

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix([[self.entries[i][j] for i in range(self.nrows)]
                           for j in range(self.ncols)])


def _det_expansion(m: PolyMatrix) -> MultiPoly:
    n = m.nrows
    if n == 1:
        return m.entry(0, 0)
    total = MultiPoly.zero(m.nvars, m.field)
    sub = m.drop_col(0)
    for i in range(n):
        p = m.entry(i, 0)
        if p.is_zero:
            continue
        minor = _det_expansion(sub.drop_row(i))
        term = p * minor
        total = total + term if i % 2 == 0 else total - term
    return total


def _det_bareiss(m: PolyMatrix) -> MultiPoly:
    """Fraction-free elimination; intermediate divisions are exact."""
    n = m.nrows
    a = [[p for p in row] for row in m.entries]
    sign = 1
    prev = MultiPoly.one(m.nvars, m.field)
    for k in range(n - 1):
        if a[k][k].is_zero:
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero), None)
            if swap is None:
                return MultiPoly.zero(m.nvars, m.field)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = poly_divexact(num, prev)
            a[i][k] = MultiPoly.zero(m.nvars, m.field)
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign == 1 else -det


def determinant(m: PolyMatrix, method: str = "auto") -> MultiPoly:
    """Determinant of a square polynomial matrix.

    "expansion" runs cofactor expansion (intended for size <= 5),
    "bareiss" runs fraction-free elimination, "auto" picks by size.
    """
    if m.nrows != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    if method == "auto":
        method = "expansion" if m.nrows <= 5 else "bareiss"
    if method == "expansion":
        return _det_expansion(m)
    if method == "bareiss":
        return _det_bareiss(m)
    raise ValueError(f"unknown determinant method {method!r}")


def maximal_minors(m: PolyMatrix) -> list[MultiPoly]:
    """Signed maximal minors of an almost-square matrix.

    For an (k+1) x k matrix the i-th entry is (-1)^i times the determinant
    with row i omitted (column omission in the transposed case), listed in
    omission order.
    """
    if m.nrows == m.ncols + 1:
        mats = [m.drop_row(i) for i in range(m.nrows)]
    elif m.ncols == m.nrows + 1:
        mats = [m.drop_col(j) for j in range(m.ncols)]
    else:
        raise ValueError("matrix must be one off square")
    out = []
    for k, sub in enumerate(mats):
        d = determinant(sub)
        out.append(d if k % 2 == 0 else -d)
    return out
