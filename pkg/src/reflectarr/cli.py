"""Command-line client.

Every subcommand is a thin wrapper over the HTTP service; by default the
app is driven in-process, and --server points the same client at a
remote instance.  Exit codes: 0 success, 2 mismatch, 3 budget overrun,
4 usage error.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from pathlib import Path

import httpx

EXIT_OK = 0
EXIT_MISMATCH = 2
EXIT_BUDGET = 3
EXIT_USAGE = 4


class _InProcessTransport(httpx.BaseTransport):
    """Sync transport that runs the ASGI app on a private event loop, so
    remote and in-process calls share one client code path."""

    def __init__(self, app):
        self._asgi = httpx.ASGITransport(app=app)

    def handle_request(self, request: httpx.Request) -> httpx.Response:
        async def call():
            response = await self._asgi.handle_async_request(request)
            body = await response.aread()
            await response.aclose()
            return response, body

        response, body = asyncio.run(call())
        return httpx.Response(status_code=response.status_code,
                              headers=response.headers, content=body)


def _client(server: str | None) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=None)
    from .service.app import app
    return httpx.Client(transport=_InProcessTransport(app),
                        base_url="http://reflectarr.internal", timeout=None)


class CliFailure(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _post(client: httpx.Client, path: str, payload: dict) -> dict:
    try:
        resp = client.post(path, json=payload)
    except httpx.HTTPError as exc:
        raise CliFailure(EXIT_USAGE, f"service unreachable: {exc}") from exc
    if resp.status_code == 200:
        return resp.json()
    detail = {}
    try:
        detail = resp.json().get("detail", {})
    except ValueError:
        pass
    if isinstance(detail, dict) and detail.get("kind") == "budget":
        raise CliFailure(EXIT_BUDGET, detail.get("message", "budget exceeded"))
    message = detail.get("message") if isinstance(detail, dict) else str(detail)
    raise CliFailure(EXIT_USAGE, message or f"request failed ({resp.status_code})")


def _write_out(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text)


def _cmd_build(client, args) -> int:
    data = _post(client, "/build", {"group": args.group})
    _write_out(args.out, data["text"])
    if not args.out:
        print(data["text"], end="")
    print(f"# {data['label']}: {data['hyperplane_count']} hyperplanes, "
          f"rank {data['rank']}, conductor {data['conductor']}",
          file=sys.stderr)
    return EXIT_OK


def _cmd_flats(client, args) -> int:
    data = _post(client, "/flats", {"group": args.group, "codim": args.codim})
    if args.list:
        for forms in data["flats"]:
            print(" ; ".join(forms))
    else:
        print(data["count"])
    return EXIT_OK


def _cmd_singular_ideal(client, args) -> int:
    data = _post(client, "/singular-ideal", {
        "group": args.group, "route": args.route, "budget": args.budget})
    if args.json:
        text = json.dumps(data, indent=2, sort_keys=True) + "\n"
        _write_out(args.out, text)
        if not args.out:
            print(text, end="")
        return EXIT_OK
    lines = "\n".join(data["generators"]) + "\n"
    _write_out(args.out, lines)
    if not args.out:
        print(lines, end="")
    if data["empty_locus"]:
        print("# empty singular locus (unit ideal)", file=sys.stderr)
    return EXIT_OK


def _print_check(data: dict) -> None:
    print(data["verdict"].upper().replace("_", "-"))
    if data.get("witness") is not None:
        print(f"witness degree {data['witness_degree']}: {data['witness']}")
    if data.get("note"):
        print(f"note: {data['note']}", file=sys.stderr)


def _cmd_check(client, args, endpoint: str = "/check") -> int:
    payload = {"group": args.group, "m": args.sym, "r": args.pow,
               "budget": args.budget}
    if endpoint == "/check":
        payload["strategy"] = args.strategy
    data = _post(client, endpoint, payload)
    _print_check(data)
    _write_out(args.out, json.dumps(data, indent=2, sort_keys=True) + "\n")
    if data["verdict"] == "budget-exceeded":
        return EXIT_BUDGET
    return EXIT_OK


def _cmd_reduce(client, args) -> int:
    return _cmd_check(client, args, endpoint="/reduce")


def _cmd_table(client, args) -> int:
    path = "/table" + (f"?name={args.name}" if args.name else "")
    data = _post(client, path, {})
    lines = ["name,exponents,coexponents,e_M,e_Q,flat_count,"
             "jacobian_route,derivation_route"]
    for row in data["rows"]:
        lines.append(",".join([
            row["name"],
            " ".join(str(e) for e in row["exponents"]),
            " ".join(str(e) for e in row["coexponents"]),
            str(row["e_M"]), str(row["e_Q"]), str(row["flat_count"]),
            "yes" if row["jacobian_route"] else "no",
            "yes" if row["derivation_route"] else "no"]))
    text = "\n".join(lines) + "\n"
    _write_out(args.out, text)
    if not args.out:
        print(text, end="")
    if data["claim_discrepancies"]:
        print("# route-claim discrepancies: "
              + " ".join(data["claim_discrepancies"]), file=sys.stderr)
    return EXIT_OK if data["ok"] else EXIT_MISMATCH


def _cmd_verify_eqj(client, args) -> int:
    data = _post(client, "/verify-eqj", {"group": args.group,
                                         "budget": args.budget})
    for chk in data["checks"]:
        print(f"{chk['name']}: {chk['verdict']}")
    print(f"{data['spec']}: {'ok' if data['ok'] else 'FAIL'} "
          f"({data['seconds']}s)")
    _write_out(args.out, json.dumps(data, indent=2, sort_keys=True) + "\n")
    return EXIT_OK if data["ok"] else EXIT_MISMATCH


def _cmd_suite(client, args) -> int:
    payload: dict = {"workers": args.workers}
    if args.name:
        payload["name"] = args.name
    else:
        try:
            payload["document"] = json.loads(Path(args.file).read_text())
        except OSError as exc:
            raise CliFailure(EXIT_USAGE, f"cannot read suite: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise CliFailure(EXIT_USAGE,
                             f"{args.file}:{exc.lineno}: {exc.msg}") from exc
    data = _post(client, "/suite", payload)
    for row in data["queries"]:
        status = "ok" if row["ok"] else "MISMATCH"
        print(f"[{status}] {row['operation']} {row['subject']}: "
              f"expected {row['expected']}, got {row['actual']}")
    print(f"suite {data['suite']}: {data['passed']} passed, "
          f"{data['failed']} failed")
    if args.out:
        from . import suites as suites_mod
        jpath, cpath = suites_mod.write_reports(data, args.out)
        print(f"wrote {jpath} and {cpath}", file=sys.stderr)
    if data["budget_exceeded"]:
        return EXIT_BUDGET
    return EXIT_OK if data["ok"] else EXIT_MISMATCH


def _cmd_serve(args) -> int:
    import uvicorn

    from .service.app import app
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reflectarr",
        description="singular loci of reflection arrangements, exactly")
    parser.add_argument("--server", default=None,
                        help="URL of a running service (default: in-process)")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, budget=True, out=True):
        p.add_argument("--group", required=True,
                       help="A{n}, G(m,p,n) with p in {1,m}, or products via x")
        if budget:
            p.add_argument("--budget", type=int, default=None,
                           help="reduction-step ceiling")
        if out:
            p.add_argument("--out", default=None, help="write report/output here")

    p = sub.add_parser("build", help="construct an arrangement")
    common(p, budget=False)
    p.set_defaults(func=_cmd_build)

    p = sub.add_parser("flats", help="enumerate codimension-2/3 flats")
    common(p, budget=False, out=False)
    p.add_argument("--codim", type=int, choices=(2, 3), default=2)
    p.add_argument("--list", action="store_true", help="print flats, not count")
    p.set_defaults(func=_cmd_flats)

    p = sub.add_parser("singular-ideal", help="generators of the singular ideal")
    common(p)
    p.add_argument("--route", default="explicit",
                   choices=("definitional", "explicit", "jacobian", "derivation"))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_singular_ideal)

    p = sub.add_parser("check", help="decide symbolic-in-ordinary containment")
    common(p)
    p.add_argument("--sym", type=int, required=True, help="symbolic exponent m")
    p.add_argument("--pow", type=int, required=True, help="ordinary exponent r")
    p.add_argument("--strategy", default="direct", choices=("direct", "reduce"))
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("reduce", help="containment via flat localization")
    common(p)
    p.add_argument("--sym", type=int, default=3)
    p.add_argument("--pow", type=int, default=2)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("table", help="sporadic multiplicity table")
    p.add_argument("--sporadic", action="store_true",
                   help="the full fifteen-row table (default)")
    p.add_argument("--name", default=None, help="single table row")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("verify-eqJ", help="cross-check the singular-ideal routes")
    common(p)
    p.set_defaults(func=_cmd_verify_eqj)

    p = sub.add_parser("suite", help="run a verification suite")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--name", help="bundled suite name")
    group.add_argument("--file", help="suite JSON path")
    p.add_argument("--out", default=None, help="directory for report files")
    p.add_argument("--workers", type=int, default=4)
    p.set_defaults(func=_cmd_suite)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage; remap to the documented code
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command == "serve":
        return _cmd_serve(args)
    try:
        with _client(args.server) as client:
            return args.func(client, args)
    except CliFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
