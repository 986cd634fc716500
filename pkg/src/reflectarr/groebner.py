"""Deterministic Buchberger engine and ideal-level operations.

The engine uses the normal selection strategy (smallest S-pair lcm in the
active order) together with Buchberger's coprimality and chain criteria.
Work is metered in leading-term reduction steps against an optional budget;
running out raises BudgetExceededError rather than returning anything.

Internally coefficients are plain Fractions whenever the field is Q itself
(conductor 1 or 2) and CycNum elements otherwise; basis elements are kept
monic so every reduction step is division-free.
"""

from __future__ import annotations

import hashlib
import heapq
import itertools
import json
import os
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import CyclotomicField
from .multipoly import (GREVLEX, MonomialOrder, MultiPoly, elimination_order,
                        exp_add, exp_divides, exp_lcm, exp_sub, format_poly)

BUDGET_ENV = "REFLECTARR_BUDGET"


class BudgetExceededError(RuntimeError):
    """The reduction-step ceiling was reached before the answer."""

    def __init__(self, limit: int, used: int):
        super().__init__(f"reduction budget exhausted ({used} steps, limit {limit})")
        self.limit = limit
        self.used = used


class Budget:
    """Mutable counter of reduction steps with an optional ceiling."""

    __slots__ = ("limit", "used")

    def __init__(self, limit: int | None = None):
        self.limit = limit
        self.used = 0

    def spend(self, n: int = 1) -> None:
        self.used += n
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceededError(self.limit, self.used)


def env_budget_limit() -> int | None:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else None


def as_budget(budget) -> Budget:
    if budget is None:
        return Budget(env_budget_limit())
    if isinstance(budget, int):
        return Budget(budget)
    return budget


# ---------------------------------------------------------------------------
# engine representation


def _to_engine(p: MultiPoly, rational: bool) -> dict:
    if rational:
        return {e: c.coeffs[0] for e, c in p.terms.items()}
    return dict(p.terms)


def _from_engine(terms: dict, nvars: int, field: CyclotomicField,
                 rational: bool) -> MultiPoly:
    out = MultiPoly(nvars, field)
    if rational:
        out.terms = {e: field._make((c,)) for e, c in terms.items()}
    else:
        out.terms = dict(terms)
    return out


def _monic_entry(terms: dict, keyf, rational: bool):
    lm = max(terms, key=keyf)
    lc = terms[lm]
    inv = (Fraction(1) / lc) if rational else lc.inverse()
    if not (lc == 1):
        terms = {e: c * inv for e, c in terms.items()}
    return (lm, keyf(lm), terms)


def _neg_key(key: tuple) -> tuple:
    return tuple(-v for v in key)


def _reduce_full(fterms: dict, basis: list, keyf, budget: Budget) -> dict:
    """Full normal form of a term dict against monic basis entries."""
    p = dict(fterms)
    heap = [(_neg_key(keyf(e)), e) for e in p]
    heapq.heapify(heap)
    rem: dict = {}
    while heap:
        _, e = heapq.heappop(heap)
        c = p.get(e)
        if c is None:
            continue
        hit = None
        for lm, _, gterms in basis:
            if exp_divides(lm, e):
                hit = (lm, gterms)
                break
        if hit is None:
            rem[e] = c
            del p[e]
            continue
        budget.spend()
        lm, gterms = hit
        q = exp_sub(e, lm)
        del p[e]
        for ge, gc in gterms.items():
            if ge == lm:
                continue
            te = exp_add(ge, q)
            cur = p.get(te)
            if cur is None:
                v = -(c * gc)
                if v:
                    p[te] = v
                    heapq.heappush(heap, (_neg_key(keyf(te)), te))
            else:
                v = cur - c * gc
                if v:
                    p[te] = v
                else:
                    del p[te]
    return rem


def _spoly(f, g) -> dict:
    lcm = exp_lcm(f[0], g[0])
    qf = exp_sub(lcm, f[0])
    qg = exp_sub(lcm, g[0])
    out = {exp_add(e, qf): c for e, c in f[2].items()}
    for e, c in g[2].items():
        te = exp_add(e, qg)
        cur = out.get(te)
        if cur is None:
            out[te] = -c
        else:
            v = cur - c
            if v:
                out[te] = v
            else:
                del out[te]
    return out


def _buchberger(seed_terms: list[dict], keyf, rational: bool,
                budget: Budget) -> list:
    """Reduced Groebner basis as monic engine entries, ascending by order."""
    basis: list = []
    pairs: list = []
    pending: set[tuple[int, int]] = set()

    def push_pairs(j: int) -> None:
        lmj = basis[j][0]
        for i in range(j):
            lcm = exp_lcm(basis[i][0], lmj)
            pending.add((i, j))
            heapq.heappush(pairs, (keyf(lcm), i, j, lcm))

    seeds = [t for t in seed_terms if t]
    seeds.sort(key=lambda t: keyf(max(t, key=keyf)))
    for t in seeds:
        nf = _reduce_full(t, basis, keyf, budget)
        if nf:
            basis.append(_monic_entry(nf, keyf, rational))
            push_pairs(len(basis) - 1)

    while pairs:
        _, i, j, lcm = heapq.heappop(pairs)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        fi, fj = basis[i], basis[j]
        if lcm == exp_add(fi[0], fj[0]):
            continue  # coprime leading monomials
        chain = False
        for k in range(len(basis)):
            if k == i or k == j:
                continue
            if exp_divides(basis[k][0], lcm):
                a = (i, k) if i < k else (k, i)
                b = (j, k) if j < k else (k, j)
                if a not in pending and b not in pending:
                    chain = True
                    break
        if chain:
            continue
        nf = _reduce_full(_spoly(fi, fj), basis, keyf, budget)
        if nf:
            basis.append(_monic_entry(nf, keyf, rational))
            push_pairs(len(basis) - 1)

    # minimalize, then tail-reduce to the unique reduced basis
    kept: list = []
    for entry in sorted(basis, key=lambda b: b[1]):
        if not any(exp_divides(k[0], entry[0]) for k in kept):
            kept.append(entry)
    reduced = []
    for idx, entry in enumerate(kept):
        others = kept[:idx] + kept[idx + 1:]
        nf = _reduce_full(entry[2], others, keyf, budget)
        reduced.append(_monic_entry(nf, keyf, rational))
    reduced.sort(key=lambda b: b[1])
    return reduced


# ---------------------------------------------------------------------------
# public objects


class GroebnerBasis:
    """Reduced, monic Groebner basis; elements ascend in the order."""

    __slots__ = ("order", "nvars", "field", "elements", "_engine", "_rational")

    def __init__(self, order: MonomialOrder, elements: tuple, nvars: int,
                 field: CyclotomicField):
        self.order = order
        self.nvars = nvars
        self.field = field
        self.elements = tuple(elements)
        self._rational = field.degree == 1
        keyf = order.key
        self._engine = [
            (p.leading_monomial(order), keyf(p.leading_monomial(order)),
             _to_engine(p, self._rational))
            for p in self.elements
        ]

    def normal_form(self, f: MultiPoly, budget=None) -> MultiPoly:
        if f.nvars != self.nvars or f.field is not self.field:
            raise ValueError("polynomial lives in a different ring")
        rem = _reduce_full(_to_engine(f, self._rational), self._engine,
                           self.order.key, as_budget(budget))
        return _from_engine(rem, self.nvars, self.field, self._rational)

    def reduces_to_zero(self, f: MultiPoly, budget=None) -> bool:
        return self.normal_form(f, budget).is_zero

    def is_unit_ideal(self) -> bool:
        return (len(self.elements) == 1
                and self.elements[0].degree() == 0)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)


class Ideal:
    """Finitely generated ideal with per-order cached reduced bases."""

    def __init__(self, gens, nvars: int | None = None,
                 field: CyclotomicField | None = None,
                 empty_locus: bool = False):
        gens = list(gens)
        if gens:
            nvars = gens[0].nvars
            field = gens[0].field
            for g in gens:
                if g.nvars != nvars or g.field is not field:
                    raise ValueError("generators live in different rings")
        elif nvars is None or field is None:
            raise ValueError("empty generator list needs explicit ring data")
        seen = set()
        cleaned = []
        for g in gens:
            if g.is_zero:
                continue
            if g in seen:
                continue
            seen.add(g)
            cleaned.append(g)
        if not cleaned:
            cleaned = [MultiPoly.zero(nvars, field)]
        self.gens = tuple(cleaned)
        self.nvars = nvars
        self.field = field
        self.empty_locus = empty_locus
        self._gb_cache: dict[MonomialOrder, GroebnerBasis] = {}

    def groebner_basis(self, order: MonomialOrder = GREVLEX,
                       budget=None) -> GroebnerBasis:
        gb = self._gb_cache.get(order)
        if gb is None:
            rational = self.field.degree == 1
            engine = _buchberger(
                [_to_engine(g, rational) for g in self.gens],
                order.key, rational, as_budget(budget))
            elements = tuple(
                _from_engine(t[2], self.nvars, self.field, rational)
                for t in engine)
            gb = GroebnerBasis(order, elements, self.nvars, self.field)
            self._gb_cache[order] = gb
        return gb

    def set_cached_basis(self, gb: GroebnerBasis) -> None:
        self._gb_cache[gb.order] = gb

    def contains(self, f: MultiPoly, budget=None) -> bool:
        return self.groebner_basis(budget=budget).reduces_to_zero(f, budget)

    def is_unit(self, budget=None) -> bool:
        return self.groebner_basis(budget=budget).is_unit_ideal()

    def is_zero_ideal(self) -> bool:
        return all(g.is_zero for g in self.gens)

    def serialize(self, order: MonomialOrder = GREVLEX,
                  budget=None) -> dict:
        # The reduced basis is unique for the order, so two presentations
        # of the same ideal serialize identically.
        gb = self.groebner_basis(order, budget)
        elements = sorted(gb, key=lambda g: order.key(g.leading_monomial(order)))
        return {
            "nvars": self.nvars,
            "conductor": self.field.conductor,
            "order": order.label(),
            "generators": [format_poly(g, order) for g in elements],
        }

    def content_hash(self, order: MonomialOrder = GREVLEX) -> str:
        blob = json.dumps(self.serialize(order), sort_keys=True,
                          separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def __repr__(self) -> str:
        gens = ", ".join(format_poly(g) for g in self.gens[:4])
        more = ", ..." if len(self.gens) > 4 else ""
        return f"Ideal({gens}{more})"


def normal_form(f: MultiPoly, ideal_or_gb, order: MonomialOrder = GREVLEX,
                budget=None) -> MultiPoly:
    if isinstance(ideal_or_gb, GroebnerBasis):
        return ideal_or_gb.normal_form(f, budget)
    return ideal_or_gb.groebner_basis(order, budget).normal_form(f, budget)


def ideal_equal(a: Ideal, b: Ideal, order: MonomialOrder = GREVLEX,
                budget=None) -> bool:
    """Equality via the canonical reduced bases in a common order."""
    if a.nvars != b.nvars or a.field is not b.field:
        raise ValueError("ideals live in different rings")
    ga = a.groebner_basis(order, budget).elements
    gb = b.groebner_basis(order, budget).elements
    return ga == gb


def ideal_sum(a: Ideal, b: Ideal) -> Ideal:
    return Ideal(list(a.gens) + list(b.gens))


def ideal_product(a: Ideal, b: Ideal) -> Ideal:
    return Ideal([f * g for f in a.gens for g in b.gens])


def ideal_power(a: Ideal, r: int) -> Ideal:
    """Generated by all r-fold products of generators (with repetition)."""
    if r < 1:
        raise ValueError("power must be a positive integer")
    gens = []
    for combo in itertools.combinations_with_replacement(a.gens, r):
        p = combo[0]
        for q in combo[1:]:
            p = p * q
        gens.append(p)
    return Ideal(gens)


def _intersect_pair(a: Ideal, b: Ideal, budget: Budget) -> Ideal:
    """a cap b via t*a + (1-t)*b and elimination of the auxiliary t."""
    nv, field = a.nvars, a.field
    rational = field.degree == 1
    order = elimination_order(1)
    keyf = order.key
    seeds = []
    for f in a.gens:
        seeds.append({(1,) + e: c for e, c in _to_engine(f, rational).items()})
    for g in b.gens:
        t = {}
        for e, c in _to_engine(g, rational).items():
            t[(0,) + e] = c
            t[(1,) + e] = -c
        seeds.append(t)
    gb = _buchberger(seeds, keyf, rational, budget)
    kept = []
    for lm, _, terms in gb:
        if lm[0] == 0:  # leading monomial free of t, hence the whole element
            kept.append({e[1:]: c for e, c in terms.items()})
    elements = tuple(_from_engine(t, nv, field, rational) for t in kept)
    elements = tuple(sorted(elements, key=lambda p: GREVLEX.key(
        p.leading_monomial(GREVLEX))))
    out = Ideal(elements, nvars=nv, field=field)
    # the t-free slice of the reduced elimination basis is itself the
    # reduced grevlex basis of the intersection
    out.set_cached_basis(GroebnerBasis(GREVLEX, elements, nv, field))
    return out


def ideal_intersection(ideals, budget=None) -> Ideal:
    """Pairwise fold, in input order, of the elimination construction."""
    ideals = list(ideals)
    if not ideals:
        raise ValueError("intersection of an empty family")
    shared = as_budget(budget)
    acc = ideals[0]
    for nxt in ideals[1:]:
        if acc.nvars != nxt.nvars or acc.field is not nxt.field:
            raise ValueError("ideals live in different rings")
        acc = _intersect_pair(acc, nxt, shared)
    return acc


def radical_member(f: MultiPoly, ideal: Ideal, budget=None) -> bool:
    """f in sqrt(I) iff 1 in I + (1 - y*f) in one more variable."""
    nv, field = ideal.nvars, ideal.field
    shared = as_budget(budget)
    rational = field.degree == 1
    seeds = []
    for g in ideal.gens:
        seeds.append({e + (0,): c for e, c in _to_engine(g, rational).items()})
    trick = {(0,) * (nv + 1): field.one.coeffs[0] if rational else field.one}
    for e, c in _to_engine(f, rational).items():
        te = e + (1,)
        cur = trick.get(te)
        v = -c if cur is None else cur - c
        if v:
            trick[te] = v
        elif cur is not None:
            del trick[te]
    seeds.append(trick)
    gb = _buchberger(seeds, GREVLEX.key, rational, shared)
    return len(gb) == 1 and sum(gb[0][0]) == 0


# ---------------------------------------------------------------------------
# Hilbert series of the leading-term ideal


@dataclass(frozen=True)
class HilbertData:
    """Series h(t)/(1-t)^dimension with h(1) = multiplicity != 0."""

    dimension: int
    numerator: tuple[int, ...]
    multiplicity: int


def _minimalize_monomials(gens: list[tuple]) -> list[tuple]:
    out: list[tuple] = []
    for e in sorted(set(gens), key=lambda e: (sum(e), e)):
        if not any(exp_divides(o, e) for o in out):
            out.append(e)
    return out


def _poly_mul_int(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _trim_int(p: list[int]) -> list[int]:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _hilbert_numerator(gens: list[tuple]) -> list[int]:
    """Numerator of the Hilbert series of R/(gens) over (1-t)^nvars."""
    gens = _minimalize_monomials(gens)
    if not gens:
        return [1]
    if any(sum(e) == 0 for e in gens):
        return [0]
    simple = [e for e in gens if sum(1 for v in e if v) == 1]
    if len(simple) == len(gens):
        # pairwise distinct supports after minimalization: complete intersection
        out = [1]
        for e in gens:
            out = _poly_mul_int(out, [1] + [0] * (sum(e) - 1) + [-1])
        return _trim_int(out)
    counts: dict[int, int] = {}
    for e in gens:
        if sum(1 for v in e if v) == 1:
            continue
        for i, v in enumerate(e):
            if v:
                counts[i] = counts.get(i, 0) + 1
    piv = max(sorted(counts), key=lambda i: counts[i])
    p = tuple(1 if i == piv else 0 for i in range(len(gens[0])))
    plus = _hilbert_numerator(gens + [p])
    colon = [tuple(max(v - q, 0) for v, q in zip(e, p)) for e in gens]
    quot = _hilbert_numerator(colon)
    out = [0] * max(len(plus), len(quot) + 1)
    for i, c in enumerate(plus):
        out[i] += c
    for i, c in enumerate(quot):
        out[i + 1] += c
    return _trim_int(out)


def _divide_by_one_minus_t(p: list[int]) -> list[int]:
    q = [0] * (len(p) - 1) if len(p) > 1 else [0]
    acc = 0
    for i in range(len(p) - 1):
        acc += p[i]
        q[i] = acc
    if acc + p[-1] != 0:
        raise ArithmeticError("polynomial not divisible by 1-t")
    return _trim_int(q) if q else [0]


def hilbert_multiplicity(ideal: Ideal, budget=None) -> HilbertData:
    """Dimension and multiplicity of R/I via the leading-term ideal.

    Requires homogeneous generators.  The numerator is returned with the
    (1-t) factors cancelled, so numerator(1) is the multiplicity.
    """
    for g in ideal.gens:
        if not g.is_homogeneous():
            raise ValueError("Hilbert data needs homogeneous generators")
    gb = ideal.groebner_basis(GREVLEX, budget)
    if gb.is_unit_ideal():
        raise ValueError("quotient by the unit ideal is the zero ring")
    lts = [p.leading_monomial(GREVLEX) for p in gb.elements]
    if not lts or all(g.is_zero for g in ideal.gens):
        num = [1]
    else:
        num = _hilbert_numerator(lts)
    cancelled = 0
    while sum(num) == 0:
        num = _divide_by_one_minus_t(num)
        cancelled += 1
    return HilbertData(dimension=ideal.nvars - cancelled,
                       numerator=tuple(num),
                       multiplicity=sum(num))
