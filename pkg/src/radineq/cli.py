"""Command-line front end.

Every verb is a thin HTTP client: by default the service app is mounted
in-process (no socket), and ``--server`` points the same requests at a
running instance instead.  Exit codes: 0 success, 1 usage or transport
error, 2 at least one violated bound, 3 instance generation failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

import httpx

from .harness import CSV_COLUMNS


class _InProcessClient:
    """Synchronous facade over the mounted ASGI app.

    httpx's ASGI transport is async-only; each CLI invocation issues a
    single request, so running a private event loop per call is fine.
    """

    def __init__(self) -> None:
        from .service import app

        self._transport = httpx.ASGITransport(app=app)

    def get(self, path: str) -> httpx.Response:
        return self._request("GET", path, None)

    def post(self, path: str, json: dict | None = None) -> httpx.Response:
        return self._request("POST", path, json)

    def _request(self, method: str, path: str, payload: dict | None) -> httpx.Response:
        import asyncio

        async def go() -> httpx.Response:
            async with httpx.AsyncClient(transport=self._transport,
                                         base_url="http://service",
                                         timeout=None) as client:
                return await client.request(method, path, json=payload)

        return asyncio.run(go())

    def __enter__(self) -> "_InProcessClient":
        return self

    def __exit__(self, *exc) -> None:
        pass


def _client(server: str | None):
    if server:
        return httpx.Client(base_url=server, timeout=None)
    return _InProcessClient()


def _post(client: httpx.Client, path: str, payload: dict) -> dict:
    resp = client.post(path, json=payload)
    if resp.status_code == 500:
        body = resp.json()
        if isinstance(body, dict) and body.get("error") == "generation-failed":
            print("error: %s" % body.get("message", "instance generation failed"),
                  file=sys.stderr)
            raise SystemExit(3)
    if resp.status_code >= 400:
        print("error: HTTP %d: %s" % (resp.status_code, resp.text), file=sys.stderr)
        raise SystemExit(1)
    return resp.json()


def _parse_dims(text: str) -> list[int]:
    try:
        dims = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise SystemExit("error: --dims expects comma-separated integers, got %r" % text)
    if not dims:
        raise SystemExit("error: --dims is empty")
    return dims


def _write_csv(path: str, summaries: list[dict]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for s in summaries:
            writer.writerow([
                s["bound_id"], s["trials"], s["holds"], s["violations"],
                s["pre_failed"],
                repr(float(s["min_slack"])) if s["min_slack"] is not None else "nan",
                repr(float(s["max_ratio"])) if s["max_ratio"] is not None else "nan",
                "%.3f" % s["wall_ms"],
            ])


def _cmd_verify(args: argparse.Namespace) -> int:
    bounds = "all" if args.bounds == ["all"] else args.bounds
    payload = {
        "bounds": bounds,
        "trials": args.trials,
        "dims": _parse_dims(args.dims),
        "seed": args.seed,
        "rel_tol": args.rel_tol,
        "fast": not args.full,
        "keep_all_records": not args.summaries_only,
    }
    with _client(args.server) as client:
        report = _post(client, "/suite", payload)

    if args.out:
        with open(args.out, "w") as fh:
            json.dump(report, fh, indent=1, sort_keys=True)
            fh.write("\n")
    if args.csv:
        _write_csv(args.csv, report["summaries"])

    total_viol = 0
    for s in report["summaries"]:
        flag = "ok " if s["violations"] == 0 else "VIOLATED"
        print("%-18s trials=%-4d holds=%-4d violations=%-3d pre_failed=%-3d "
              "min_slack=% .3e  [%s]"
              % (s["bound_id"], s["trials"], s["holds"], s["violations"],
                 s["pre_failed"],
                 s["min_slack"] if s["min_slack"] is not None else float("nan"),
                 flag))
        total_viol += s["violations"]
    print("digest: %s" % report["digest"])
    print("total: %d bounds, %d violations, %.1f s"
          % (len(report["summaries"]), total_viol, report["wall_ms"] / 1e3))
    return 2 if total_viol else 0


def _cmd_reproduce(args: argparse.Namespace) -> int:
    payload = {"name": args.name, "delta": args.delta, "Delta": args.Delta}
    with _client(args.server) as client:
        out = _post(client, "/reproduce", payload)
    print(json.dumps(out, indent=1, sort_keys=True))
    return 0 if out.get("ok") else 2


def _cmd_prospect(args: argparse.Namespace) -> int:
    payload = {"bound_id": args.bound_id, "budget": args.budget,
               "seed": args.seed, "dims": _parse_dims(args.dims)}
    with _client(args.server) as client:
        out = _post(client, "/prospect", payload)
    print(json.dumps(out, indent=1, sort_keys=True))
    # Counterexamples to a falsification-only entry are the expected
    # outcome, not a defect in the registry.
    if out["violations"] and not out.get("falsification_only"):
        return 2
    return 0


def _cmd_list_bounds(args: argparse.Namespace) -> int:
    with _client(args.server) as client:
        resp = client.get("/bounds")
        if resp.status_code >= 400:
            print("error: HTTP %d: %s" % (resp.status_code, resp.text), file=sys.stderr)
            return 1
        rows = resp.json()
    for row in rows:
        tags = []
        if row["has_correction"]:
            tags.append("correction")
        if row["falsification_only"]:
            tags.append("falsification-only")
        suffix = ("  [" + ", ".join(tags) + "]") if tags else ""
        print("%-18s %s%s" % (row["bound_id"], row["formula"], suffix))
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="radineq",
        description="verify numerical-radius operator inequalities on random instances",
    )
    parser.add_argument("--server", default=None,
                        help="base URL of a running service (default: in-process)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run a randomized suite over registry bounds")
    p.add_argument("--bounds", nargs="+", default=["all"],
                   help="bound ids, or 'all' (default)")
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--dims", default="2,3,4,5,6",
                   help="comma-separated dimensions to cycle (default 2,3,4,5,6)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rel-tol", type=float, default=1e-8)
    p.add_argument("--full", action="store_true",
                   help="use the tight evaluation profile instead of the fast one")
    p.add_argument("--summaries-only", action="store_true",
                   help="drop per-trial records from the report")
    p.add_argument("--out", default=None, help="write the JSON report here")
    p.add_argument("--csv", default=None, help="write the per-bound summary CSV here")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("reproduce", help="recompute a frozen worked example")
    p.add_argument("name", nargs="?", default="example-2x2")
    p.add_argument("--delta", type=float, default=0.3)
    p.add_argument("--Delta", dest="Delta", type=float, default=0.4)
    p.set_defaults(func=_cmd_reproduce)

    p = sub.add_parser("prospect", help="search for counterexamples to one bound")
    p.add_argument("--bound", dest="bound_id", required=True)
    p.add_argument("--budget", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dims", default="2,3,4")
    p.set_defaults(func=_cmd_prospect)

    p = sub.add_parser("list-bounds", help="print the registry")
    p.set_defaults(func=_cmd_list_bounds)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
