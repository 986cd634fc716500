"""Symbolic powers of the singular ideal and containment decisions.

The singular ideal is radical and unmixed of height two, so its m-th
symbolic power is the intersection of P^m over the codimension-2 flat
primes.  Containment against ordinary powers is decided directly by
normal-form reduction, or for rank 4 at (3, 2) by localizing at flats
and deciding the rank-3 fixers.  Failure reports carry a witness checked
by two independent membership oracles.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field

from . import linalg
from .arrangements import (
    Arrangement,
    Flat,
    GroupSpec,
    Product,
    UnclassifiableFlatError,
    build_arrangement,
    classify_fixer,
    flats_of_codim,
    spec_label,
    spec_rank,
    validate_spec,
)
from .groebner import (
    BudgetExceededError,
    Ideal,
    as_budget,
    ideal_intersection,
    ideal_power,
)
from .multipoly import MultiPoly, format_poly, linear_substitution
from .singular import cached_definitional, explicit_generators, _FAMILY

HOLDS = "holds"
FAILS = "fails"
ABSTAIN = "abstain"
BUDGET = "budget-exceeded"


def _flat_power(flat: Flat, arrangement: Arrangement, m: int) -> Ideal:
    l1, l2 = flat.basis_forms(arrangement.nvars, arrangement.field)
    gens = [l1 ** a * l2 ** (m - a) for a in range(m + 1)]
    return Ideal(gens, nvars=arrangement.nvars, field=arrangement.field)


_SYMBOLIC_CACHE: dict[tuple[str, int], Ideal] = {}
_POWER_CACHE: dict[tuple[str, int], Ideal] = {}


def clear_caches() -> None:
    """Drop memoized powers and singular ideals.

    A warm cache can answer a budgeted query without spending any steps,
    which is correct but makes exhaustion behavior depend on history;
    call this to get cold-start behavior deterministically.
    """
    from .singular import _DEFINITIONAL_CACHE
    _SYMBOLIC_CACHE.clear()
    _POWER_CACHE.clear()
    _DEFINITIONAL_CACHE.clear()


def _cache_key(arrangement: Arrangement) -> str | None:
    if arrangement.source is None:
        return None
    return spec_label(arrangement.source)


def symbolic_power(arrangement: Arrangement, m: int, budget=None) -> Ideal:
    """Intersection of the m-th powers of the codimension-2 flat primes."""
    if m < 1:
        raise ValueError("symbolic exponent must be positive")
    budget = as_budget(budget)
    key = _cache_key(arrangement)
    if key is not None and (key, m) in _SYMBOLIC_CACHE:
        return _SYMBOLIC_CACHE[(key, m)]
    flats = flats_of_codim(arrangement, 2)
    if not flats:
        one = MultiPoly.one(arrangement.nvars, arrangement.field)
        out = Ideal([one], empty_locus=True)
    else:
        out = ideal_intersection(
            [_flat_power(f, arrangement, m) for f in flats], budget=budget)
    if key is not None:
        _SYMBOLIC_CACHE[(key, m)] = out
    return out


def _singular_ideal(arrangement: Arrangement, budget=None) -> Ideal:
    src = arrangement.source
    if isinstance(src, _FAMILY) and spec_rank(src) >= 3:
        return explicit_generators(src, arrangement.field)
    if src is not None:
        return cached_definitional(src, budget=budget)
    from .singular import singular_ideal_definitional
    return singular_ideal_definitional(arrangement, budget=budget)


def ordinary_power(arrangement: Arrangement, r: int, budget=None) -> Ideal:
    key = _cache_key(arrangement)
    if key is not None and (key, r) in _POWER_CACHE:
        return _POWER_CACHE[(key, r)]
    out = ideal_power(_singular_ideal(arrangement, budget=budget), r)
    if key is not None:
        _POWER_CACHE[(key, r)] = out
    return out


def _flat_frame(flat: Flat, arrangement: Arrangement):
    """Inverse of a coordinate change whose first two coordinates are the
    flat's basis forms."""
    n = arrangement.nvars
    field = arrangement.field
    rows = [list(v) for v in flat.basis]
    for i in range(n):
        if len(rows) == n:
            break
        unit = [field.zero] * n
        unit[i] = field.one
        if linalg.rank(rows + [unit], field) > len(rows):
            rows.append(unit)
    return linalg.invert(rows, field)


def order_of_vanishing(f: MultiPoly, flat: Flat,
                       arrangement: Arrangement) -> int | None:
    """Order of f along the flat: least joint degree in the flat's two
    basis forms after a linear change of coordinates.  None for f = 0."""
    if f.is_zero:
        return None
    g = linear_substitution(f, _flat_frame(flat, arrangement))
    return min(e[0] + e[1] for e in g.terms)


def in_symbolic_power(f: MultiPoly, arrangement: Arrangement, m: int) -> bool:
    """Membership oracle that never builds a Groebner basis: f lies in the
    m-th symbolic power iff it vanishes to order at least m along every
    codimension-2 flat."""
    if f.is_zero:
        return True
    for flat in flats_of_codim(arrangement, 2):
        ord_f = order_of_vanishing(f, flat, arrangement)
        if ord_f is not None and ord_f < m:
            return False
    return True


def alpha(ideal: Ideal, budget=None) -> int:
    """Least degree of a nonzero form in a homogeneous ideal."""
    gb = ideal.groebner_basis(budget=budget)
    degs = [g.degree() for g in gb if not g.is_zero]
    if not degs:
        raise ValueError("zero ideal has no nonzero form")
    return min(degs)


@dataclass(frozen=True)
class ContainmentQuery:
    """Does the m-th symbolic power lie in the r-th ordinary power?"""

    spec: GroupSpec | None = None
    arrangement: Arrangement | None = None
    m: int = 3
    r: int = 2
    strategy: str = "direct"

    def __post_init__(self):
        if not self.m >= self.r >= 1:
            raise ValueError("need m >= r >= 1")
        if (self.spec is None) == (self.arrangement is None):
            raise ValueError("give exactly one of spec, arrangement")
        if self.strategy not in ("direct", "reduce", "reduce-then-direct"):
            raise ValueError(f"unknown strategy {self.strategy!r}")

    def resolve(self) -> Arrangement:
        if self.arrangement is not None:
            return self.arrangement
        validate_spec(self.spec)
        return build_arrangement(self.spec)

    def label(self) -> str:
        if self.spec is not None:
            return spec_label(self.spec)
        return f"<arrangement on {self.arrangement.nvars} variables>"


@dataclass
class ContainmentReport:
    query: dict
    verdict: str
    witness: MultiPoly | None = None
    reduction_trace: list = dc_field(default_factory=list)
    hashes: dict = dc_field(default_factory=dict)
    seconds: float = 0.0
    note: str = ""

    def as_dict(self) -> dict:
        return {
            "query": self.query,
            "verdict": self.verdict,
            "witness": None if self.witness is None else format_poly(self.witness),
            "witness_degree": None if self.witness is None else self.witness.degree(),
            "reduction_trace": self.reduction_trace,
            "hashes": self.hashes,
            "seconds": round(self.seconds, 3),
            "note": self.note,
        }


def _query_echo(q: ContainmentQuery) -> dict:
    return {"group": q.label(), "m": q.m, "r": q.r, "strategy": q.strategy}


def check_containment(q: ContainmentQuery, budget=None) -> ContainmentReport:
    """Decide the containment with the requested strategy.

    Direct strategy: reduce every generator of the symbolic power against
    a basis of the ordinary power.  A witness is reported on failure and
    must pass both membership oracles.  The defining polynomial of the
    arrangement is tried first; it short-circuits failures only.
    """
    if q.strategy in ("reduce", "reduce-then-direct"):
        return reduce_via_localization(q, budget=budget)
    t0 = time.perf_counter()
    budget = as_budget(budget)
    report = ContainmentReport(query=_query_echo(q), verdict=ABSTAIN)
    try:
        arrangement = q.resolve()
        power = ordinary_power(arrangement, q.r, budget=budget)
        gb = power.groebner_basis(budget=budget)
        report.hashes["ordinary_power"] = power.content_hash()

        f_a = arrangement.defining_polynomial()
        if in_symbolic_power(f_a, arrangement, q.m) \
                and not gb.reduces_to_zero(f_a, budget):
            report.verdict = FAILS
            report.witness = f_a
            report.note = "witnessed by the defining polynomial"
        else:
            sym = symbolic_power(arrangement, q.m, budget=budget)
            report.hashes["symbolic_power"] = sym.content_hash()
            witness = None
            for g in sorted(sym.gens, key=MultiPoly.degree):
                if not gb.reduces_to_zero(g, budget):
                    witness = g
                    break
            if witness is None:
                report.verdict = HOLDS
            else:
                if not in_symbolic_power(witness, arrangement, q.m):
                    raise AssertionError("witness fails the vanishing oracle")
                report.verdict = FAILS
                report.witness = witness
    except BudgetExceededError as exc:
        report.verdict = BUDGET
        report.note = str(exc)
    report.seconds = time.perf_counter() - t0
    return report


def _local_verdict(fixer: GroupSpec, m: int, r: int, memo: dict,
                   budget=None) -> tuple[str, ContainmentReport | None]:
    """Containment verdict for a flat's fixer.  Rank at most 2 gives a
    complete intersection where symbolic and ordinary powers coincide."""
    label = spec_label(fixer)
    if label in memo:
        return memo[label]
    if spec_rank(fixer) <= 2:
        out = (HOLDS, None)
    elif isinstance(fixer, Product):
        sub_verdicts = [_local_verdict(f, m, r, memo, budget)[0]
                        for f in fixer.factors]
        out = (_product_clause(sub_verdicts, m, r), None)
    else:
        sub = check_containment(
            ContainmentQuery(spec=fixer, m=m, r=r, strategy="direct"),
            budget=budget)
        out = (sub.verdict, sub)
    memo[label] = out
    return out


def _product_clause(verdicts: list[str], m: int, r: int) -> str:
    if any(v == FAILS for v in verdicts):
        return FAILS
    if any(v == BUDGET for v in verdicts):
        return BUDGET
    if any(v == ABSTAIN for v in verdicts):
        return ABSTAIN
    if m == 2 * r - 1:
        return HOLDS
    return ABSTAIN


def reduce_via_localization(q: ContainmentQuery, budget=None) -> ContainmentReport:
    """Decide a rank-4 containment at (3, 2) from its flat localizations.

    Every associated prime of the square lives at a flat of codimension 2
    or 3.  Codimension-2 localizations are complete intersections and hold
    outright; codimension-3 localizations are decided on the essentialized
    fixer arrangement, memoized by fixer type.  One failing codimension-3
    flat certifies global failure.
    """
    if q.spec is None:
        raise ValueError("localization reduction needs a group spec")
    if (q.m, q.r) != (3, 2):
        raise ValueError("localization reduction is proved at (m, r) = (3, 2)")
    if spec_rank(q.spec) < 4:
        raise ValueError("localization reduction targets rank >= 4")
    budget = as_budget(budget)
    t0 = time.perf_counter()
    report = ContainmentReport(query=_query_echo(q), verdict=ABSTAIN)
    arrangement = q.resolve()
    memo: dict = {}
    failing = None
    abstained = False
    over_budget = False
    for codim in (2, 3):
        for flat in flats_of_codim(arrangement, codim):
            entry = {"codim": codim,
                     "flat": [format_poly(f) for f in flat.basis_forms(
                         arrangement.nvars, arrangement.field)]}
            if codim == 2:
                entry["fixer"] = spec_label(classify_fixer(q.spec, flat, arrangement))
                entry["verdict"] = HOLDS
                entry["note"] = "complete intersection"
                report.reduction_trace.append(entry)
                continue
            try:
                fixer = classify_fixer(q.spec, flat, arrangement)
            except UnclassifiableFlatError as exc:
                entry["fixer"] = None
                entry["verdict"] = ABSTAIN
                entry["note"] = str(exc)
                report.reduction_trace.append(entry)
                abstained = True
                continue
            entry["fixer"] = spec_label(fixer)
            verdict, sub = _local_verdict(fixer, q.m, q.r, memo, budget)
            entry["verdict"] = verdict
            if sub is not None and sub.witness is not None:
                entry["local_witness"] = format_poly(sub.witness)
                entry["local_witness_degree"] = sub.witness.degree()
            report.reduction_trace.append(entry)
            if verdict == FAILS and failing is None:
                failing = entry
            abstained = abstained or verdict == ABSTAIN
            over_budget = over_budget or verdict == BUDGET
    if failing is not None:
        report.verdict = FAILS
        report.note = (f"codimension-3 flat with fixer {failing['fixer']} "
                       "fails locally")
    elif over_budget:
        report.verdict = BUDGET
    elif abstained:
        report.verdict = ABSTAIN
        report.note = "some flat could not be classified or decided"
    else:
        report.verdict = HOLDS
    report.seconds = time.perf_counter() - t0
    return report


def product_containment(factors, m: int, r: int, budget=None) -> ContainmentReport:
    """Containment verdict for a product arrangement from factor verdicts.

    Any failing factor makes the product fail; all factors holding proves
    the product only at m = 2r - 1, and anything else abstains.  Factors
    are group specs or arrangements.
    """
    t0 = time.perf_counter()
    budget = as_budget(budget)
    trace = []
    verdicts = []
    for fac in factors:
        if isinstance(fac, Arrangement):
            fq = ContainmentQuery(arrangement=fac, m=m, r=r)
            rank = fac.rank()
            label = f"<arrangement on {fac.nvars} variables>"
        else:
            fq = ContainmentQuery(spec=fac, m=m, r=r)
            rank = spec_rank(fac)
            label = spec_label(fac)
        if rank <= 2:
            verdict = HOLDS
            note = "complete intersection"
        else:
            sub = check_containment(fq, budget=budget)
            verdict = sub.verdict
            note = sub.note
        trace.append({"factor": label, "verdict": verdict, "note": note})
        verdicts.append(verdict)
    overall = _product_clause(verdicts, m, r)
    note = ""
    if overall == ABSTAIN and all(v == HOLDS for v in verdicts):
        note = "all factors hold but the product clause needs m = 2r - 1"
    report = ContainmentReport(
        query={"group": " x ".join(t["factor"] for t in trace),
               "m": m, "r": r, "strategy": "product"},
        verdict=overall, reduction_trace=trace, note=note)
    report.seconds = time.perf_counter() - t0
    return report
