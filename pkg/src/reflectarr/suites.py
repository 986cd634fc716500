"""Batch verification suites with byte-stable reports.

A suite is a JSON document naming queries, their parameters, and the
expected outcome with a provenance note.  Queries run in a worker pool;
reports are order-normalized before serialization so reruns and
different schedules produce identical bytes (timings are therefore kept
out of the stable files).
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .arrangements import parse_group
from .groebner import BudgetExceededError
from .singular import (
    load_sporadic_table,
    sporadic_table_check,
    verify_theorem_eqJ,
)
from .symbolic import BUDGET, ContainmentQuery, check_containment

_OPERATIONS = ("check", "reduce", "verify-eqJ", "table")
_PROVENANCES = ("literature", "direct-computation", "definition")


class SuiteError(ValueError):
    """Malformed suite document; message carries the query index."""


@dataclass(frozen=True)
class SuiteQuery:
    operation: str
    parameters: dict
    expected: str
    provenance: str


@dataclass(frozen=True)
class VerificationSuite:
    name: str
    queries: tuple
    budget: int | None = None


def _require(cond: bool, where: str, msg: str) -> None:
    if not cond:
        raise SuiteError(f"{where}: {msg}")


def suite_from_dict(doc: dict, where: str = "suite") -> VerificationSuite:
    _require(isinstance(doc, dict), where, "document must be an object")
    _require(isinstance(doc.get("name"), str) and doc["name"], where,
             "missing suite name")
    budget = doc.get("budget")
    _require(budget is None or (isinstance(budget, int) and budget > 0),
             where, "budget must be a positive integer or null")
    raw = doc.get("queries")
    _require(isinstance(raw, list), where, "queries must be a list")
    queries = []
    for i, q in enumerate(raw):
        at = f"{where}.queries[{i}]"
        _require(isinstance(q, dict), at, "query must be an object")
        op = q.get("operation")
        _require(op in _OPERATIONS, at, f"operation must be one of {_OPERATIONS}")
        params = q.get("parameters", {})
        _require(isinstance(params, dict), at, "parameters must be an object")
        expected = q.get("expected")
        _require(isinstance(expected, str) and expected, at, "missing expected outcome")
        prov = q.get("provenance", "direct-computation")
        _require(prov in _PROVENANCES, at,
                 f"provenance must be one of {_PROVENANCES}")
        queries.append(SuiteQuery(op, params, expected, prov))
    return VerificationSuite(name=doc["name"], queries=tuple(queries),
                             budget=budget)


def load_suite(path: str | Path) -> VerificationSuite:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SuiteError(f"{path}:{exc.lineno}: {exc.msg}") from exc
    return suite_from_dict(doc, where=str(path))


def bundled_suite(name: str) -> VerificationSuite:
    pkg = resources.files("reflectarr").joinpath("suites")
    path = pkg.joinpath(f"{name}.json")
    if not path.is_file():
        available = sorted(p.name[:-5] for p in pkg.iterdir()
                           if p.name.endswith(".json"))
        raise SuiteError(f"no bundled suite {name!r}; available: {available}")
    return suite_from_dict(json.loads(path.read_text()), where=name)


def _subject(query: SuiteQuery) -> str:
    p = query.parameters
    if query.operation == "table":
        return p.get("name", "all")
    label = p.get("group", "?")
    if query.operation in ("check", "reduce"):
        return f"{label} ({p.get('m', 3)},{p.get('r', 2)})"
    return label


def _run_query(query: SuiteQuery, budget: int | None) -> dict:
    op, p = query.operation, query.parameters
    if op == "table":
        recs = [r for r in load_sporadic_table()
                if "name" not in p or r.name == p["name"]]
        if not recs:
            return {"actual": "error", "detail": f"unknown group {p.get('name')!r}"}
        ok = all(row["e_M_matches_table"] and row["e_Q_matches_table"]
                 for row in map(sporadic_table_check, recs))
        return {"actual": "match" if ok else "mismatch"}
    spec = parse_group(p["group"])
    if op == "verify-eqJ":
        rep = verify_theorem_eqJ(spec, budget=budget)
        return {"actual": "ok" if rep["ok"] else "fail",
                "checks": [(c["name"], c["verdict"]) for c in rep["checks"]]}
    strategy = p.get("strategy", "reduce" if op == "reduce" else "direct")
    rep = check_containment(ContainmentQuery(
        spec=spec, m=int(p.get("m", 3)), r=int(p.get("r", 2)),
        strategy=strategy), budget=budget)
    out = {"actual": rep.verdict}
    if rep.witness is not None:
        out["witness_degree"] = rep.witness.degree()
    return out


def run_suite(suite: VerificationSuite, workers: int = 4) -> dict:
    """Execute all queries and return the order-normalized report."""

    def job(item):
        i, query = item
        row = {"index": i,
               "operation": query.operation,
               "subject": _subject(query),
               "parameters": query.parameters,
               "expected": query.expected,
               "provenance": query.provenance}
        try:
            row.update(_run_query(query, suite.budget))
        except BudgetExceededError as exc:
            row["actual"] = BUDGET
            row["detail"] = str(exc)
        except (ValueError, KeyError) as exc:
            row["actual"] = "error"
            row["detail"] = str(exc)
        row["ok"] = row["actual"] == query.expected
        return row

    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        rows = list(pool.map(job, enumerate(suite.queries)))
    rows.sort(key=lambda r: r["index"])
    return {
        "suite": suite.name,
        "budget": suite.budget,
        "queries": rows,
        "passed": sum(r["ok"] for r in rows),
        "failed": sum(not r["ok"] for r in rows),
        "budget_exceeded": any(r["actual"] == BUDGET for r in rows),
        "ok": all(r["ok"] for r in rows),
    }


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def summary_csv(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["index", "operation", "subject", "expected", "actual",
                     "ok", "provenance"])
    for r in report["queries"]:
        writer.writerow([r["index"], r["operation"], r["subject"],
                         r["expected"], r["actual"],
                         "yes" if r["ok"] else "no", r["provenance"]])
    return buf.getvalue()


def write_reports(report: dict, out_dir: str | Path) -> tuple[Path, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    jpath = out / "report.json"
    cpath = out / "summary.csv"
    jpath.write_text(report_json(report))
    cpath.write_text(summary_csv(report))
    return jpath, cpath
