"""Command-line front end.

Thin client over the same handlers the HTTP service uses; nothing here
computes anything. Reports go to stdout as JSON, compact by default.
--pretty switches to indented JSON with an "approx" decimal next to each
exact scalar; exact fields are never replaced.

Exit codes: 0 all checks passed, 1 bad input or usage, 2 an axiom or
relation check failed, 3 a non-faithfulness witness was found. The
converse commands expect the witness, so they exit 0 when the
construction is confirmed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Optional

from . import __version__, reports
from . import serialize as ser
from .errors import BranchSystemError, InputError


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors, which this tool reserves for
    failed checks; remap usage problems to exit 1."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _load_json(path: str, what: str) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{what} file {path!r}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(
            f"{what} file {path!r}: invalid JSON at line {exc.lineno} column "
            f"{exc.colno}: {exc.msg}"
        ) from None


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="branchsys",
        description=(
            "Exact branching systems of directed graphs and faithfulness "
            "verdicts for the representations they induce."
        ),
    )
    parser.add_argument("--version", action="version", version=f"branchsys {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--pretty", action="store_true", help="indented output with approx decimals")
        p.add_argument("--out", metavar="PATH", help="also write the report to this file")
        p.add_argument(
            "--seed",
            type=int,
            metavar="N",
            help="seed recorded in the report; commands are deterministic and ignore it",
        )

    p = sub.add_parser("analyze", help="sinks, simple cycles, exits, Condition (L), W")
    p.add_argument("--graph", required=True, metavar="PATH", help="graph JSON file")
    common(p)

    p = sub.add_parser("build", help="construct the standard-layout system and dump it")
    p.add_argument("--graph", required=True, metavar="PATH")
    p.add_argument("--config", metavar="PATH", help="theta config; omitted = plain affine maps")
    common(p)

    p = sub.add_parser("verify", help="check the system axioms and the operator relations")
    p.add_argument("--system", metavar="PATH", help="system dump from 'build'")
    p.add_argument("--graph", metavar="PATH", help="build in place instead of loading a dump")
    p.add_argument("--config", metavar="PATH")
    p.add_argument("--mode", choices=("cstar", "algebraic"), default="cstar")
    common(p)

    p = sub.add_parser("faithful", help="faithfulness verdict for the rotation system")
    p.add_argument("--graph", required=True, metavar="PATH")
    p.add_argument("--config", metavar="PATH")
    p.add_argument("--max-power", type=int, default=10, metavar="N")
    common(p)

    p = sub.add_parser("converse", help="counterexample construction on a non-(L) graph")
    p.add_argument("variant", choices=("cstar", "leavitt"))
    p.add_argument("--graph", required=True, metavar="PATH")
    common(p)

    p = sub.add_parser("reproduce", help="run a bundled scenario")
    p.add_argument(
        "name",
        choices=("example-irrational-loop", "converse-cstar", "converse-leavitt"),
    )
    p.add_argument("--max-power", type=int, default=10, metavar="N")
    common(p)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _dispatch(args: argparse.Namespace) -> tuple[dict, int]:
    if args.command == "analyze":
        return reports.analyze(_load_json(args.graph, "graph"))
    if args.command == "build":
        config = _load_json(args.config, "config") if args.config else None
        return reports.build(_load_json(args.graph, "graph"), config)
    if args.command == "verify":
        if not args.system and not args.graph:
            raise InputError("verify needs --system or --graph")
        payload: dict[str, Any] = {}
        if args.system:
            dump = _load_json(args.system, "system")
            # accept a 'build' report as-is, not just the bare inner dump
            if isinstance(dump, dict) and "system" in dump and "d" not in dump:
                dump = dump["system"]
            payload["system"] = dump
        if args.graph:
            payload["graph"] = _load_json(args.graph, "graph")
        if args.config:
            payload["config"] = _load_json(args.config, "config")
        return reports.verify(payload, args.mode)
    if args.command == "faithful":
        config = _load_json(args.config, "config") if args.config else None
        return reports.faithful(
            _load_json(args.graph, "graph"), config, max_power=args.max_power
        )
    if args.command == "converse":
        return reports.converse(_load_json(args.graph, "graph"), args.variant)
    if args.command == "reproduce":
        return reports.reproduce(args.name, max_power=args.max_power)
    raise AssertionError(f"unhandled command {args.command!r}")


def _emit(report: dict, args: argparse.Namespace) -> None:
    if getattr(args, "seed", None) is not None:
        report = {**report, "seed": args.seed}
    text = ser.dumps(report, pretty=getattr(args, "pretty", False))
    print(text)
    out = getattr(args, "out", None)
    if out:
        Path(out).write_text(text + "\n")


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "serve":
        import uvicorn

        from .service import create_app

        uvicorn.run(create_app(), host=args.host, port=args.port)
        return reports.EXIT_OK
    try:
        report, code = _dispatch(args)
    except BranchSystemError as exc:
        _emit(reports.error_report(exc), args)
        return reports.EXIT_ERROR
    _emit(report, args)
    return code


if __name__ == "__main__":
    sys.exit(main())
