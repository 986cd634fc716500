"""Request and response models for the HTTP service."""

from __future__ import annotations

from pydantic import BaseModel, Field

ROUTES = ("definitional", "explicit", "jacobian", "derivation")


class BuildRequest(BaseModel):
    group: str


class BuildResponse(BaseModel):
    label: str
    nvars: int
    rank: int
    conductor: int
    hyperplane_count: int
    text: str


class FlatsRequest(BaseModel):
    group: str
    codim: int = Field(default=2, ge=2, le=3)


class FlatsResponse(BaseModel):
    label: str
    codim: int
    count: int
    flats: list[list[str]]


class SingularIdealRequest(BaseModel):
    group: str
    route: str = "explicit"
    budget: int | None = Field(default=None, gt=0)


class SingularIdealResponse(BaseModel):
    label: str
    route: str
    nvars: int
    conductor: int
    generators: list[str]
    generator_degrees: list[int]
    content_hash: str
    empty_locus: bool = False


class CheckRequest(BaseModel):
    group: str
    m: int = Field(default=3, ge=1)
    r: int = Field(default=2, ge=1)
    strategy: str = "direct"
    budget: int | None = Field(default=None, gt=0)


class CheckResponse(BaseModel):
    query: dict
    verdict: str
    witness: str | None = None
    witness_degree: int | None = None
    reduction_trace: list[dict]
    hashes: dict
    seconds: float
    note: str = ""


class TableRow(BaseModel):
    name: str
    exponents: list[int]
    coexponents: list[int]
    e_M: int
    e_Q: int
    flat_count: int
    computed_e_M: int
    computed_e_Q: int
    jacobian_route: bool
    derivation_route: bool
    jacobian_route_matches_claim: bool
    derivation_route_matches_claim: bool


class TableResponse(BaseModel):
    rows: list[TableRow]
    ok: bool
    claim_discrepancies: list[str]


class VerifyEqJRequest(BaseModel):
    group: str
    budget: int | None = Field(default=None, gt=0)


class VerifyEqJResponse(BaseModel):
    spec: str
    ok: bool
    checks: list[dict]
    hashes: dict
    seconds: float


class SuiteRequest(BaseModel):
    name: str | None = None
    document: dict | None = None
    workers: int = Field(default=4, ge=1, le=16)


class SuiteResponse(BaseModel):
    suite: str
    budget: int | None
    queries: list[dict]
    passed: int
    failed: int
    budget_exceeded: bool
    ok: bool


class ErrorBody(BaseModel):
    kind: str  # usage | budget | internal
    message: str
    limit: int | None = None
    used: int | None = None
