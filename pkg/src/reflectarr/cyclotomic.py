"""Exact scalar arithmetic over the cyclotomic fields Q(zeta_m).

A field element is a residue class in Q[t]/(Phi_m), stored as a coefficient
vector of length phi(m) = deg Phi_m.  All arithmetic is exact; mixing
elements of different conductors is an error rather than a coercion.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

Rational = Fraction


class FieldMismatchError(ValueError):
    """Operands belong to cyclotomic fields with different conductors."""


def _divexact_int(num: list[int], den: list[int]) -> list[int]:
    # exact division of dense integer polynomials, constant term first
    num = list(num)
    quot = [0] * (len(num) - len(den) + 1)
    for k in range(len(quot) - 1, -1, -1):
        c = num[k + len(den) - 1]
        if c % den[-1] != 0:
            raise ArithmeticError("division is not exact")
        quot[k] = c // den[-1]
        for i, d in enumerate(den):
            num[k + i] -= quot[k] * d
    if any(num):
        raise ArithmeticError("division left a remainder")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, constant term first, monic with integer entries.

    Computed by exact division of t^m - 1 by the product of Phi_d over the
    proper divisors d of m.
    """
    if m < 1:
        raise ValueError("conductor must be a positive integer")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly = _divexact_int(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    # dense rational polynomials, constant term first
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    for k in range(len(q) - 1, -1, -1):
        if len(a) < k + len(b):
            continue
        c = a[k + len(b) - 1] / b[-1]
        q[k] = c
        for i, d in enumerate(b):
            a[k + i] -= c * d
    return _poly_trim(q), _poly_trim(a)


class CyclotomicField:
    """Q(zeta_m) presented as Q[t]/(Phi_m).  Instances are interned by m."""

    _cache: dict[int, "CyclotomicField"] = {}

    def __new__(cls, conductor: int):
        field = cls._cache.get(conductor)
        if field is not None:
            return field
        field = super().__new__(cls)
        field._init(conductor)
        cls._cache[conductor] = field
        return field

    def _init(self, conductor: int) -> None:
        modulus = cyclotomic_polynomial(conductor)
        self.conductor = conductor
        self.modulus = modulus
        self.degree = len(modulus) - 1
        # reduction rows: t^(degree + i) mod Phi_m for i = 0..degree-2;
        # Phi_m is monic over Z, so the rows stay integral
        rows = []
        if self.degree > 0:
            cur = [-c for c in modulus[:-1]]
            rows.append(tuple(cur))
            for _ in range(self.degree - 2):
                top = cur[-1]
                cur = [0] + cur[:-1]
                if top:
                    cur = [c + top * r for c, r in zip(cur, rows[0])]
                rows.append(tuple(cur))
        self._red_rows = tuple(rows)
        self.zero = self._make((Fraction(0),) * self.degree)
        self.one = self._make((Fraction(1),) + (Fraction(0),) * (self.degree - 1))

    def _make(self, coeffs: tuple[Fraction, ...]) -> "CycNum":
        el = object.__new__(CycNum)
        el.field = self
        el.coeffs = coeffs
        return el

    def element(self, coeffs) -> "CycNum":
        """Element from an iterable of rationals; longer vectors are reduced."""
        vec = [Fraction(c) for c in coeffs]
        if len(vec) > self.degree:
            vec = self._reduce_long(vec)
        vec += [Fraction(0)] * (self.degree - len(vec))
        return self._make(tuple(vec))

    def _reduce_long(self, vec: list[Fraction]) -> list[Fraction]:
        d = self.degree
        out = vec[:d] + [Fraction(0)] * (d - min(len(vec), d))
        for i, c in enumerate(vec[d:]):
            if c:
                row = self._red_rows[i]
                for j in range(d):
                    if row[j]:
                        out[j] += c * row[j]
        return out

    def from_rational(self, q) -> "CycNum":
        return self.element([Fraction(q)])

    def zeta_power(self, k: int) -> "CycNum":
        """The root of unity zeta_m^k."""
        k %= self.conductor
        vec = [Fraction(0)] * (k + 1)
        vec[k] = Fraction(1)
        return self.element(vec)

    @property
    def root(self) -> "CycNum":
        return self.zeta_power(1)

    def coerce(self, value) -> "CycNum":
        if isinstance(value, CycNum):
            if value.field is not self:
                raise FieldMismatchError(
                    f"conductor {value.field.conductor} vs {self.conductor}")
            return value
        if isinstance(value, (int, Fraction)):
            return self.from_rational(value)
        raise TypeError(f"cannot coerce {type(value).__name__} into Q(zeta)")

    def __repr__(self) -> str:
        return f"CyclotomicField({self.conductor})"


class CycNum:
    """An element of a fixed cyclotomic field; immutable."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CyclotomicField, coeffs):
        self.field = field
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        if len(self.coeffs) != field.degree:
            raise ValueError("coefficient vector has the wrong length")

    def _match(self, other) -> "CycNum":
        return self.field.coerce(other)

    def __bool__(self) -> bool:
        return any(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def __add__(self, other):
        try:
            o = self._match(other)
        except TypeError:
            return NotImplemented
        return self.field._make(tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = self._match(other)
        except TypeError:
            return NotImplemented
        return self.field._make(tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return self.field._make(tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        try:
            o = self._match(other)
        except TypeError:
            return NotImplemented
        f = self.field
        d = f.degree
        if d == 1:
            return f._make((self.coeffs[0] * o.coeffs[0],))
        a, b = self.coeffs, o.coeffs
        conv = [Fraction(0)] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        out = conv[:d]
        rows = f._red_rows
        for i in range(d, 2 * d - 1):
            c = conv[i]
            if c:
                row = rows[i - d]
                for j in range(d):
                    if row[j]:
                        out[j] += c * row[j]
        return f._make(tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        """Multiplicative inverse via the extended Euclidean algorithm."""
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero in Q(zeta)")
        f = self.field
        if f.degree == 1:
            return f._make((Fraction(1) / self.coeffs[0],))
        # invert the residue against the modulus in Q[t]
        r0 = [Fraction(c) for c in f.modulus]
        r1 = _poly_trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, r = _poly_divmod(r0, r1)
            # s_next = s0 - q * s1
            prod = [Fraction(0)] * (len(q) + len(s1) - 1) if q and s1 else []
            for i, qi in enumerate(q):
                if qi:
                    for j, sj in enumerate(s1):
                        prod[i + j] += qi * sj
            nxt = [Fraction(0)] * max(len(s0), len(prod))
            for i, c in enumerate(s0):
                nxt[i] += c
            for i, c in enumerate(prod):
                nxt[i] -= c
            r0, r1 = r1, r
            s0, s1 = s1, _poly_trim(nxt)
        if len(r0) != 1:
            raise ZeroDivisionError("element is not invertible")
        lead = r0[0]
        return f.element([c / lead for c in s0])

    def __truediv__(self, other):
        try:
            o = self._match(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = self.field.one
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, CycNum):
            if other.field is not self.field:
                raise FieldMismatchError("comparing elements of different fields")
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational:
            return hash(self.coeffs[0])
        return hash((self.field.conductor, self.coeffs))

    def sort_key(self) -> tuple:
        return self.coeffs

    def __str__(self) -> str:
        parts = []
        for k in range(self.field.degree - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                mag = str(abs(c))
            else:
                zpow = "z" if k == 1 else f"z^{k}"
                mag = zpow if abs(c) == 1 else f"{abs(c)}*{zpow}"
            if not parts:
                parts.append(mag if c > 0 else f"-{mag}")
            else:
                parts.append(f"+ {mag}" if c > 0 else f"- {mag}")
        return " ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"<{self} in Q(zeta_{self.field.conductor})>"


QQ = CyclotomicField(1)
