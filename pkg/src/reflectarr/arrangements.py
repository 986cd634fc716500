"""Reflection hyperplane arrangements and their intersection lattice.

Supported group specifications: the symmetric-group family A{n}, the
monomial families G(m,m,n) and G(m,1,n), finite products of these, and
named sporadic groups (data only: the sporadic entries never build an
arrangement, they exist for tabulated invariants).

Hyperplanes x_i - zeta^s x_j live over Q(zeta_m); a product arrangement is
assembled over the least common conductor.  Flats are canonicalised by the
reduced row echelon form of their defining linear forms.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from math import lcm

from . import linalg
from .cyclotomic import CyclotomicField, CycNum
from .groebner import Ideal
from .multipoly import MultiPoly, parse_poly

log = logging.getLogger(__name__)

SPORADIC_NAMES = tuple(f"G{k}" for k in range(23, 38))


@dataclass(frozen=True)
class Symmetric:
    """Symmetric group on `letters` letters, acting on as many coordinates."""
    letters: int


@dataclass(frozen=True)
class Monomial:
    """G(m,m,rank): all root-of-unity differences x_i - zeta^s x_j."""
    m: int
    rank: int


@dataclass(frozen=True)
class FullMonomial:
    """G(m,1,rank): the monomial arrangement plus coordinate hyperplanes."""
    m: int
    rank: int


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Sporadic:
    name: str


GroupSpec = Symmetric | Monomial | FullMonomial | Product | Sporadic


class GroupSpecError(ValueError):
    """Malformed or unsupported group specification."""


def validate_spec(spec: GroupSpec) -> None:
    if isinstance(spec, Symmetric):
        if spec.letters < 1:
            raise GroupSpecError("symmetric group needs at least one letter")
    elif isinstance(spec, (Monomial, FullMonomial)):
        if spec.m < 2:
            raise GroupSpecError("monomial families need m >= 2")
        if spec.rank < 1:
            raise GroupSpecError("rank must be positive")
    elif isinstance(spec, Product):
        if not spec.factors:
            raise GroupSpecError("empty product")
        for f in spec.factors:
            if isinstance(f, (Product, Sporadic)):
                raise GroupSpecError("product factors must be irreducible and constructible")
            validate_spec(f)
    elif isinstance(spec, Sporadic):
        if spec.name not in SPORADIC_NAMES:
            raise GroupSpecError(f"unknown sporadic group {spec.name!r}")
    else:
        raise GroupSpecError(f"not a group spec: {spec!r}")


def is_constructible(spec: GroupSpec) -> bool:
    return not isinstance(spec, Sporadic)


def spec_nvars(spec: GroupSpec) -> int:
    if isinstance(spec, Symmetric):
        return spec.letters
    if isinstance(spec, (Monomial, FullMonomial)):
        return spec.rank
    if isinstance(spec, Product):
        return sum(spec_nvars(f) for f in spec.factors)
    raise GroupSpecError("sporadic groups carry no coordinate space here")


def spec_rank(spec: GroupSpec) -> int:
    if isinstance(spec, Symmetric):
        return spec.letters - 1
    if isinstance(spec, (Monomial, FullMonomial)):
        return spec.rank
    if isinstance(spec, Product):
        return sum(spec_rank(f) for f in spec.factors)
    raise GroupSpecError("sporadic groups carry no arrangement rank here")


def spec_conductor(spec: GroupSpec) -> int:
    if isinstance(spec, Symmetric):
        return 1
    if isinstance(spec, (Monomial, FullMonomial)):
        return spec.m
    if isinstance(spec, Product):
        return lcm(*(spec_conductor(f) for f in spec.factors))
    raise GroupSpecError("sporadic groups carry no conductor here")


def spec_label(spec: GroupSpec) -> str:
    if isinstance(spec, Symmetric):
        return f"A{spec.letters - 1}"
    if isinstance(spec, Monomial):
        return f"G({spec.m},{spec.m},{spec.rank})"
    if isinstance(spec, FullMonomial):
        return f"G({spec.m},1,{spec.rank})"
    if isinstance(spec, Product):
        return "x".join(spec_label(f) for f in spec.factors)
    return spec.name


_ATOM_A = re.compile(r"A(\d+)$")
_ATOM_G = re.compile(r"G\((\d+),(\d+),(\d+)\)$")
_ATOM_SPORADIC = re.compile(r"G(2[3-9]|3[0-7])$")


def parse_group(text: str, allow_sporadic: bool = False) -> GroupSpec:
    """Parse the group grammar: A{n}, G(m,p,n) with p in {1, m}, products
    joined by `x`, and (where allowed) sporadic names G23..G37."""
    atoms = [a.strip() for a in text.strip().split("x")]
    if any(not a for a in atoms):
        raise GroupSpecError(f"malformed group {text!r}")
    parsed = []
    for atom in atoms:
        m = _ATOM_A.match(atom)
        if m:
            parsed.append(Symmetric(int(m.group(1)) + 1))
            continue
        m = _ATOM_G.match(atom)
        if m:
            mm, p, n = (int(g) for g in m.groups())
            if mm == 1 and p == 1:
                parsed.append(Symmetric(n))
            elif p == mm and mm >= 2:
                parsed.append(Monomial(mm, n))
            elif p == 1 and mm >= 2:
                parsed.append(FullMonomial(mm, n))
            else:
                raise GroupSpecError(
                    f"{atom}: only p = 1 or p = m is supported")
            continue
        m = _ATOM_SPORADIC.match(atom)
        if m:
            if not allow_sporadic or len(atoms) > 1:
                raise GroupSpecError(
                    f"sporadic group {atom} is valid only for table lookups")
            parsed.append(Sporadic(atom))
            continue
        raise GroupSpecError(f"cannot parse group atom {atom!r}")
    spec = parsed[0] if len(parsed) == 1 else Product(tuple(parsed))
    validate_spec(spec)
    return spec


# ---------------------------------------------------------------------------
# hyperplanes, arrangements, flats


class Hyperplane:
    """A linear form, normalised so its first nonzero coefficient is 1,
    together with the order of the cyclic reflection subgroup fixing it."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order: int = 2):
        coeffs = tuple(coeffs)
        lead = next((c for c in coeffs if c), None)
        if lead is None:
            raise ValueError("zero linear form is not a hyperplane")
        if not (lead == 1):
            inv = lead.inverse()
            coeffs = tuple(c * inv for c in coeffs)
        self.coeffs = coeffs
        self.order = order

    def form(self, nvars: int, field: CyclotomicField) -> MultiPoly:
        return MultiPoly.linear_form(self.coeffs, nvars, field)

    def sort_key(self):
        return tuple(c.sort_key() for c in self.coeffs)

    def __eq__(self, other):
        return isinstance(other, Hyperplane) and self.coeffs == other.coeffs \
            and self.order == other.order

    def __hash__(self):
        return hash((self.coeffs, self.order))

    def __repr__(self):
        return f"Hyperplane({self.coeffs!r}, order={self.order})"


class Arrangement:
    """Deduplicated, canonically ordered central hyperplane arrangement."""

    def __init__(self, nvars: int, field: CyclotomicField, hyperplanes,
                 source: GroupSpec | None = None):
        seen: dict[tuple, Hyperplane] = {}
        for h in hyperplanes:
            prev = seen.get(h.coeffs)
            if prev is None:
                seen[h.coeffs] = h
            elif prev.order != h.order:
                raise ValueError("duplicate hyperplane with conflicting order")
        self.nvars = nvars
        self.field = field
        self.hyperplanes = tuple(sorted(seen.values(),
                                        key=Hyperplane.sort_key))
        self.source = source
        self._defining = None

    def __len__(self) -> int:
        return len(self.hyperplanes)

    def __iter__(self):
        return iter(self.hyperplanes)

    @property
    def conductor(self) -> int:
        return self.field.conductor

    def rank(self) -> int:
        rows = [list(h.coeffs) for h in self.hyperplanes]
        return linalg.rank(rows, self.field) if rows else 0

    def defining_polynomial(self) -> MultiPoly:
        """Product of the hyperplane forms (reflection orders play no part)."""
        if self._defining is None:
            p = MultiPoly.one(self.nvars, self.field)
            for h in self.hyperplanes:
                p = p * h.form(self.nvars, self.field)
            self._defining = p
        return self._defining

    def forms(self) -> list[MultiPoly]:
        return [h.form(self.nvars, self.field) for h in self.hyperplanes]


def build_arrangement(spec: GroupSpec,
                      field: CyclotomicField | None = None) -> Arrangement:
    validate_spec(spec)
    if not is_constructible(spec):
        raise GroupSpecError(f"{spec.name} is table data only; no arrangement")
    cond = spec_conductor(spec)
    if field is None:
        field = CyclotomicField(cond)
    elif field.conductor % cond:
        raise ValueError("field conductor incompatible with the group")
    nvars = spec_nvars(spec)
    hyperplanes: list[Hyperplane] = []

    def emit(s: GroupSpec, offset: int) -> None:
        if isinstance(s, Product):
            for f in s.factors:
                emit(f, offset)
                offset += spec_nvars(f)
            return
        k = spec_nvars(s)
        zero, one = field.zero, field.one
        if isinstance(s, Symmetric):
            for i in range(k):
                for j in range(i + 1, k):
                    coeffs = [zero] * nvars
                    coeffs[offset + i] = one
                    coeffs[offset + j] = -one
                    hyperplanes.append(Hyperplane(coeffs, 2))
            return
        root = field.zeta_power(field.conductor // s.m)
        for i in range(k):
            for j in range(i + 1, k):
                for power in range(s.m):
                    coeffs = [zero] * nvars
                    coeffs[offset + i] = one
                    coeffs[offset + j] = -(root ** power)
                    hyperplanes.append(Hyperplane(coeffs, 2))
        if isinstance(s, FullMonomial):
            for i in range(k):
                coeffs = [zero] * nvars
                coeffs[offset + i] = one
                hyperplanes.append(Hyperplane(coeffs, s.m))

    emit(spec, 0)
    return Arrangement(nvars, field, hyperplanes, source=spec)


@dataclass(frozen=True)
class Flat:
    """An intersection of hyperplanes, canonicalised by its RREF basis.

    `incident` lists the indices of every arrangement hyperplane containing
    the flat (the set is closed by construction)."""

    basis: tuple
    codim: int
    incident: tuple

    def basis_forms(self, nvars: int, field: CyclotomicField) -> list[MultiPoly]:
        return [MultiPoly.linear_form(row, nvars, field) for row in self.basis]

    def prime_ideal(self, arrangement: Arrangement) -> Ideal:
        return Ideal(self.basis_forms(arrangement.nvars, arrangement.field))

    def sort_key(self):
        return tuple(tuple(c.sort_key() for c in row) for row in self.basis)


def _flat_from_rows(rows, arrangement: Arrangement, expect_codim: int) -> Flat:
    field = arrangement.field
    red, pivots = linalg.rref(rows, field)
    if len(red) != expect_codim:
        raise ValueError("rows do not have the expected rank")
    incident = tuple(
        k for k, h in enumerate(arrangement.hyperplanes)
        if linalg.in_row_space(list(h.coeffs), red, pivots))
    return Flat(basis=tuple(tuple(r) for r in red), codim=expect_codim,
                incident=incident)


def flat_from_forms(arrangement: Arrangement, coeff_rows) -> Flat:
    field = arrangement.field
    rows = [[field.coerce(c) for c in row] for row in coeff_rows]
    red, _ = linalg.rref(rows, field)
    return _flat_from_rows(rows, arrangement, len(red))


def flats_of_codim(arrangement: Arrangement, codim: int) -> list[Flat]:
    """All codimension-2 or -3 flats, canonically ordered.

    Codimension 2 comes from pairs of hyperplanes; codimension 3 extends
    each codimension-2 flat by one non-incident hyperplane.  Duplicates
    collapse on the RREF basis.
    """
    if codim not in (2, 3):
        raise ValueError("only codimension 2 and 3 are enumerated")
    field = arrangement.field
    hs = arrangement.hyperplanes
    flats2: dict[tuple, Flat] = {}
    for i in range(len(hs)):
        for j in range(i + 1, len(hs)):
            rows = [list(hs[i].coeffs), list(hs[j].coeffs)]
            red, pivots = linalg.rref(rows, field)
            if len(red) != 2:
                continue
            key = tuple(tuple(c.sort_key() for c in r) for r in red)
            if key not in flats2:
                incident = tuple(
                    k for k, h in enumerate(hs)
                    if linalg.in_row_space(list(h.coeffs), red, pivots))
                flats2[key] = Flat(tuple(tuple(r) for r in red), 2, incident)
    level2 = sorted(flats2.values(), key=Flat.sort_key)
    if codim == 2:
        return level2
    flats3: dict[tuple, Flat] = {}
    for flat in level2:
        for k, h in enumerate(hs):
            if k in flat.incident:
                continue
            rows = [list(r) for r in flat.basis] + [list(h.coeffs)]
            red, pivots = linalg.rref(rows, field)
            key = tuple(tuple(c.sort_key() for c in r) for r in red)
            if key not in flats3:
                incident = tuple(
                    idx for idx, hh in enumerate(hs)
                    if linalg.in_row_space(list(hh.coeffs), red, pivots))
                flats3[key] = Flat(tuple(tuple(r) for r in red), 3, incident)
    return sorted(flats3.values(), key=Flat.sort_key)


def localize(arrangement: Arrangement, flat: Flat) -> Arrangement:
    """Subarrangement of the hyperplanes containing the flat."""
    return Arrangement(arrangement.nvars, arrangement.field,
                       [arrangement.hyperplanes[i] for i in flat.incident])


def essentialize(arrangement: Arrangement, flat: Flat) -> Arrangement:
    """Rewrite a localized arrangement in codim(X) coordinates.

    The flat's RREF basis forms become the new coordinates; the remaining
    coordinates are dropped.  Valid when every hyperplane contains the
    flat, which makes each form a combination of the basis forms.  The
    intersection lattice is unchanged.
    """
    field = arrangement.field
    basis = [list(r) for r in flat.basis]
    red, pivots = linalg.rref(basis, field)
    out = []
    for h in arrangement.hyperplanes:
        coords = [h.coeffs[p] for p in pivots]
        residue = list(h.coeffs)
        for c, row in zip(coords, red):
            residue = [a - c * b for a, b in zip(residue, row)]
        if any(residue):
            raise ValueError("hyperplane does not contain the flat")
        out.append(Hyperplane(coords, h.order))
    return Arrangement(flat.codim, field, out)


# ---------------------------------------------------------------------------
# fixer classification


class UnclassifiableFlatError(ValueError):
    """The incident hyperplanes do not match any recognised factor shape."""


@dataclass(frozen=True)
class FixerFactor:
    spec: GroupSpec
    support: tuple          # original variable indices, ascending
    twists: tuple           # per-support root-of-unity exponents


@dataclass(frozen=True)
class FixerClassification:
    spec: GroupSpec
    factors: tuple


def _decode_hyperplane(h: Hyperplane, field: CyclotomicField, m: int):
    nz = [k for k, c in enumerate(h.coeffs) if c]
    if len(nz) == 1:
        return ("coord", nz[0], None)
    if len(nz) == 2:
        i, j = nz
        ratio = -h.coeffs[j]
        root = field.zeta_power(field.conductor // m)
        val = field.one
        for s in range(m):
            if ratio == val:
                return ("pair", (i, j), s)
            val = val * root
        raise UnclassifiableFlatError(f"ratio {ratio} is not an m-th root of unity")
    raise UnclassifiableFlatError("hyperplane touches more than two coordinates")


def classify_fixer(spec: GroupSpec, flat: Flat,
                   arrangement: Arrangement | None = None) -> GroupSpec:
    return classify_fixer_detailed(spec, flat, arrangement).spec


def classify_fixer_detailed(spec: GroupSpec, flat: Flat,
                            arrangement: Arrangement | None = None
                            ) -> FixerClassification:
    """Identify the pointwise stabiliser of a flat as a product of
    irreducible factors, from the incident hyperplanes alone.

    Incident hyperplanes are grouped by connectivity of their coordinate
    supports.  A group with coordinate hyperplanes must be a full monomial
    block; one with a doubly-covered pair must be a monomial block; the
    single-root groups must be twisted symmetric blocks.  Anything else is
    logged and rejected rather than guessed.
    """
    if not isinstance(spec, (Symmetric, Monomial, FullMonomial)):
        raise GroupSpecError("fixers are classified for irreducible constructible specs")
    if arrangement is None:
        arrangement = build_arrangement(spec)
    m = spec_conductor(spec)
    field = arrangement.field
    decoded = []
    for idx in flat.incident:
        decoded.append(_decode_hyperplane(arrangement.hyperplanes[idx], field, m))

    # union-find over the coordinates touched by incident hyperplanes
    parent: dict[int, int] = {}

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for kind, where, _ in decoded:
        if kind == "coord":
            parent.setdefault(where, where)
        else:
            i, j = where
            parent.setdefault(i, i)
            parent.setdefault(j, j)
            union(i, j)

    classes: dict[int, list] = {}
    for item in decoded:
        anchor = item[1] if item[0] == "coord" else item[1][0]
        classes.setdefault(find(anchor), []).append(item)

    factors = []
    for root_idx in sorted(classes):
        items = classes[root_idx]
        support = sorted({i for kind, where, _ in items
                          for i in ((where,) if kind == "coord" else where)})
        coords = {where for kind, where, _ in items if kind == "coord"}
        pairs: dict[tuple, set] = {}
        for kind, where, s in items:
            if kind == "pair":
                pairs.setdefault(where, set()).add(s)
        k = len(support)
        all_pairs = {(a, b) for ai, a in enumerate(support)
                     for b in support[ai + 1:]}
        if coords:
            if not pairs:
                if k != 1:
                    _reject(flat, "isolated coordinate class with gaps")
                factors.append(FixerFactor(FullMonomial(m, 1),
                                           tuple(support), (0,)))
                continue
            full = (coords == set(support)
                    and set(pairs) == all_pairs
                    and all(v == set(range(m)) for v in pairs.values()))
            if not full:
                _reject(flat, "coordinate class is not a full monomial block")
            factors.append(FixerFactor(FullMonomial(m, k), tuple(support),
                                       (0,) * k))
        elif any(len(v) > 1 for v in pairs.values()):
            full = (set(pairs) == all_pairs
                    and all(v == set(range(m)) for v in pairs.values()))
            if not full:
                _reject(flat, "multi-root class is not a monomial block")
            factors.append(FixerFactor(Monomial(m, k), tuple(support),
                                       (0,) * k))
        else:
            if set(pairs) != all_pairs:
                _reject(flat, "single-root class is not a complete graph")
            # assign twists along a spanning tree, then verify the cocycle
            twist = {support[0]: 0}
            todo = [support[0]]
            edges = {p: next(iter(v)) for p, v in pairs.items()}
            while todo:
                cur = todo.pop()
                for (a, b), s in edges.items():
                    if a == cur and b not in twist:
                        twist[b] = (twist[a] - s) % m
                        todo.append(b)
                    elif b == cur and a not in twist:
                        twist[a] = (twist[b] + s) % m
                        todo.append(a)
            consistent = all((twist[a] - twist[b]) % m == s % m
                             for (a, b), s in edges.items())
            if len(twist) != k or not consistent:
                _reject(flat, "single-root class has inconsistent twists")
            factors.append(FixerFactor(Symmetric(k), tuple(support),
                                       tuple(twist[i] for i in support)))

    factors.sort(key=lambda f: f.support)
    specs = tuple(f.spec for f in factors)
    combined = specs[0] if len(specs) == 1 else Product(specs)
    return FixerClassification(spec=combined, factors=tuple(factors))


def _reject(flat: Flat, reason: str):
    log.warning("unclassifiable flat (codim %d): %s", flat.codim, reason)
    raise UnclassifiableFlatError(reason)


# ---------------------------------------------------------------------------
# plain-text arrangement files


def arrangement_to_text(arrangement: Arrangement) -> str:
    lines = [f"nvars {arrangement.nvars}",
             f"conductor {arrangement.conductor}"]
    for h in arrangement.hyperplanes:
        form = h.form(arrangement.nvars, arrangement.field)
        lines.append(f"{form} ; {h.order}")
    return "\n".join(lines) + "\n"


def arrangement_from_text(text: str) -> Arrangement:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) < 2 or not lines[0].startswith("nvars ") \
            or not lines[1].startswith("conductor "):
        raise ValueError("arrangement text needs nvars and conductor headers")
    nvars = int(lines[0].split()[1])
    field = CyclotomicField(int(lines[1].split()[1]))
    hyperplanes = []
    for ln in lines[2:]:
        if ";" in ln:
            form_txt, order_txt = ln.rsplit(";", 1)
            order = int(order_txt)
        else:
            form_txt, order = ln, 2
        p = parse_poly(form_txt.strip(), nvars, field)
        if p.degree() != 1 or not p.is_homogeneous():
            raise ValueError(f"not a linear form: {form_txt.strip()!r}")
        coeffs = [field.zero] * nvars
        for e, c in p.terms.items():
            coeffs[e.index(1)] = c
        hyperplanes.append(Hyperplane(coeffs, order))
    return Arrangement(nvars, field, hyperplanes)
