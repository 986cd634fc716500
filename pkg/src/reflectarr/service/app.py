"""FastAPI service exposing the package operations.

The CLI talks to this app in-process by default; `reflectarr serve`
publishes the same app over uvicorn.  Errors use a structured body whose
`kind` distinguishes bad requests from budget overruns so clients can
map them to exit codes.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from fastapi.responses import JSONResponse

from .. import singular, suites, symbolic
from ..arrangements import (
    GroupSpecError,
    arrangement_to_text,
    build_arrangement,
    flats_of_codim,
    parse_group,
    spec_label,
    spec_rank,
)
from ..groebner import BudgetExceededError, Ideal
from ..multipoly import format_poly, maximal_minors
from . import schemas

app = FastAPI(title="reflectarr", version="0.1.0")


def _usage(message: str) -> HTTPException:
    return HTTPException(status_code=422, detail={
        "kind": "usage", "message": message})


def _budget(exc: BudgetExceededError) -> HTTPException:
    return HTTPException(status_code=409, detail={
        "kind": "budget", "message": str(exc),
        "limit": exc.limit, "used": exc.used})


@app.exception_handler(GroupSpecError)
async def _group_error(_, exc: GroupSpecError):
    return JSONResponse(status_code=422, content={
        "detail": {"kind": "usage", "message": str(exc)}})


@app.exception_handler(BudgetExceededError)
async def _budget_error(_, exc: BudgetExceededError):
    return JSONResponse(status_code=409, content={
        "detail": {"kind": "budget", "message": str(exc),
                   "limit": exc.limit, "used": exc.used}})


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/build", response_model=schemas.BuildResponse)
def build(req: schemas.BuildRequest) -> schemas.BuildResponse:
    spec = parse_group(req.group)
    arr = build_arrangement(spec)
    return schemas.BuildResponse(
        label=spec_label(spec), nvars=arr.nvars, rank=arr.rank(),
        conductor=arr.field.conductor,
        hyperplane_count=len(arr.hyperplanes),
        text=arrangement_to_text(arr))


@app.post("/flats", response_model=schemas.FlatsResponse)
def flats(req: schemas.FlatsRequest) -> schemas.FlatsResponse:
    spec = parse_group(req.group)
    arr = build_arrangement(spec)
    found = flats_of_codim(arr, req.codim)
    return schemas.FlatsResponse(
        label=spec_label(spec), codim=req.codim, count=len(found),
        flats=[[format_poly(f) for f in
                flat.basis_forms(arr.nvars, arr.field)] for flat in found])


@app.post("/singular-ideal", response_model=schemas.SingularIdealResponse)
def singular_ideal(req: schemas.SingularIdealRequest) -> schemas.SingularIdealResponse:
    if req.route not in schemas.ROUTES:
        raise _usage(f"route must be one of {schemas.ROUTES}")
    spec = parse_group(req.group)
    arr = build_arrangement(spec)
    try:
        if req.route == "definitional":
            ideal = singular.singular_ideal_definitional(arr, budget=req.budget)
        elif req.route == "explicit":
            ideal = singular.explicit_generators(spec, arr.field)
        elif req.route == "jacobian":
            inv = singular.basic_invariants(spec, arr.field)
            minors = maximal_minors(
                singular.jacobian_matrix(inv, arr.nvars - 1))
            ideal = Ideal([p.monic() for p in minors if p])
        else:
            if spec_rank(spec) < 2:
                raise _usage("derivation route needs rank at least 2")
            minors = maximal_minors(
                singular.derivation_matrix(spec, arr.nvars - 1, arr.field))
            ideal = Ideal([p.monic() for p in minors if p])
    except ValueError as exc:
        raise _usage(str(exc)) from exc
    except BudgetExceededError as exc:
        raise _budget(exc) from exc
    return schemas.SingularIdealResponse(
        label=spec_label(spec), route=req.route, nvars=arr.nvars,
        conductor=arr.field.conductor,
        generators=[format_poly(g) for g in ideal.gens],
        generator_degrees=[g.degree() for g in ideal.gens],
        content_hash=ideal.content_hash(),
        empty_locus=ideal.empty_locus)


def _containment(req: schemas.CheckRequest, strategy: str) -> schemas.CheckResponse:
    spec = parse_group(req.group)
    try:
        query = symbolic.ContainmentQuery(spec=spec, m=req.m, r=req.r,
                                          strategy=strategy)
        report = symbolic.check_containment(query, budget=req.budget)
    except ValueError as exc:
        raise _usage(str(exc)) from exc
    return schemas.CheckResponse(**report.as_dict())


@app.post("/check", response_model=schemas.CheckResponse)
def check(req: schemas.CheckRequest) -> schemas.CheckResponse:
    return _containment(req, req.strategy)


@app.post("/reduce", response_model=schemas.CheckResponse)
def reduce(req: schemas.CheckRequest) -> schemas.CheckResponse:
    return _containment(req, "reduce")


@app.post("/table", response_model=schemas.TableResponse)
def table(name: str | None = None) -> schemas.TableResponse:
    rows = []
    for rec in singular.load_sporadic_table():
        if name is not None and rec.name != name:
            continue
        chk = singular.sporadic_table_check(rec)
        rows.append(schemas.TableRow(
            name=rec.name, exponents=list(rec.exponents),
            coexponents=list(rec.coexponents), e_M=rec.e_m, e_Q=rec.e_q,
            flat_count=rec.flat_count,
            computed_e_M=chk["computed_e_M"],
            computed_e_Q=chk["computed_e_Q"],
            jacobian_route=chk["jacobian_route"],
            derivation_route=chk["derivation_route"],
            jacobian_route_matches_claim=chk["jacobian_route_matches_claim"],
            derivation_route_matches_claim=chk["derivation_route_matches_claim"]))
    if name is not None and not rows:
        raise _usage(f"unknown sporadic name {name!r}")
    ok = all(r.computed_e_M == r.e_M and r.computed_e_Q == r.e_Q for r in rows)
    discrepancies = [r.name for r in rows
                     if not (r.jacobian_route_matches_claim
                             and r.derivation_route_matches_claim)]
    return schemas.TableResponse(rows=rows, ok=ok,
                                 claim_discrepancies=discrepancies)


@app.post("/verify-eqj", response_model=schemas.VerifyEqJResponse)
def verify_eqj(req: schemas.VerifyEqJRequest) -> schemas.VerifyEqJResponse:
    spec = parse_group(req.group)
    try:
        report = singular.verify_theorem_eqJ(spec, budget=req.budget)
    except ValueError as exc:
        raise _usage(str(exc)) from exc
    except BudgetExceededError as exc:
        raise _budget(exc) from exc
    return schemas.VerifyEqJResponse(**report)


@app.post("/suite", response_model=schemas.SuiteResponse)
def suite(req: schemas.SuiteRequest) -> schemas.SuiteResponse:
    if (req.name is None) == (req.document is None):
        raise _usage("give exactly one of name, document")
    try:
        if req.name is not None:
            loaded = suites.bundled_suite(req.name)
        else:
            loaded = suites.suite_from_dict(req.document)
    except suites.SuiteError as exc:
        raise _usage(str(exc)) from exc
    return schemas.SuiteResponse(**suites.run_suite(loaded, workers=req.workers))
