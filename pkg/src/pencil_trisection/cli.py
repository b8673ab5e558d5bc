"""Command-line interface.

Exit codes: 0 all checks passed, 1 a check failed, 2 input or parse error,
3 internal invariant violation.  Errors go to stderr prefixed ``E:<code>:``.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import corpus
from .builder import ConventionError, TrisectionDiagram, build_diagram, parse_diagram, trisection_parameters
from .pencil import PencilData, PencilError, check_monodromy, expected_invariants, parse_pencil
from .render import render_svg
from .results import format_h1
from .verifier import BasisMismatch, verify_diagram

OK, CHECK_FAILED, INPUT_ERROR, INTERNAL = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _load_pencil(source: str) -> PencilData:
    if source.startswith("corpus:"):
        name = source[len("corpus:"):]
        try:
            return corpus.get(name).pencil
        except KeyError:
            raise CliError(INPUT_ERROR, f"no corpus entry named {name!r}") from None
    try:
        data = Path(source).read_bytes()
    except OSError as exc:
        raise CliError(INPUT_ERROR, f"cannot read {source}: {exc.strerror}") from None
    try:
        return parse_pencil(data)
    except PencilError as exc:
        raise CliError(INPUT_ERROR, str(exc)) from None


def _build(p: PencilData, force: bool = False) -> TrisectionDiagram:
    try:
        return build_diagram(p, force=force)
    except PencilError as exc:
        raise CliError(CHECK_FAILED, f"{exc} (use --force to try anyway)") from None
    except ConventionError as exc:
        raise CliError(CHECK_FAILED, f"{exc}: {json.dumps(exc.scorecard)}") from None


def _load_diagram(source: str) -> TrisectionDiagram:
    if source.startswith("corpus:"):
        return _build(_load_pencil(source))
    try:
        data = Path(source).read_bytes()
    except OSError as exc:
        raise CliError(INPUT_ERROR, f"cannot read {source}: {exc.strerror}") from None
    try:
        return parse_diagram(data)
    except ValueError as exc:
        raise CliError(INPUT_ERROR, f"bad diagram: {exc}") from None


def _write(path: str | None, payload: bytes) -> None:
    if path is None or path == "-":
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()
    else:
        Path(path).write_bytes(payload)


def cmd_check(args) -> int:
    p = _load_pencil(args.file)
    result = check_monodromy(p)
    print(f"pencil {p.name or args.file}: h={p.h} b={p.b} l={p.l} (structure ok)")
    if result.passed:
        print("monodromy: PASS (homological shadow only)")
        return OK
    print("monodromy: FAIL; deviation M - I:")
    for row in result.details["deviation"]:
        print("  " + " ".join(f"{x:>4d}" for x in row))
    return CHECK_FAILED


def cmd_trisect(args) -> int:
    d = _build(_load_pencil(args.file), force=args.force)
    _write(args.output, d.to_json().encode("utf-8"))
    return OK


def cmd_verify(args) -> int:
    p = _load_pencil(args.file)
    mono = check_monodromy(p)
    d = _load_diagram(args.diagram) if args.diagram else _build(p, force=True)
    try:
        report = verify_diagram(p, d)
    except BasisMismatch as exc:
        raise CliError(INPUT_ERROR, str(exc)) from None
    out = {
        "pencil": p.name or args.file,
        "monodromy": mono.to_dict(),
        "report": report.to_dict(),
        "diagram": d.to_dict(),
    }
    print(json.dumps(out, indent=2))
    return OK if report.overall and mono.passed else CHECK_FAILED


def cmd_invariants(args) -> int:
    p = _load_pencil(args.file)
    params = trisection_parameters(p.h, p.b, p.l)
    inv = expected_invariants(p)
    print(f"g={params.g} k={params.k} chi={inv.euler} H1={format_h1(inv.h1_free_rank, list(inv.h1_torsion))}")
    return OK


def cmd_corpus(args) -> int:
    if args.action == "list":
        for name in corpus.names():
            e = corpus.get(name)
            print(f"{name}\th={e.pencil.h} b={e.pencil.b} l={e.pencil.l}\t{e.note}")
        return OK
    if not args.name:
        raise CliError(INPUT_ERROR, "corpus show needs a NAME")
    try:
        e = corpus.get(args.name)
    except KeyError:
        raise CliError(INPUT_ERROR, f"no corpus entry named {args.name!r}") from None
    out = {
        "pencil": e.pencil.to_dict(),
        "expected": {
            "g": e.params.g,
            "k": e.params.k,
            "chi": e.invariants.euler,
            "h1": format_h1(e.invariants.h1_free_rank, list(e.invariants.h1_torsion)),
            "monodromy_ok": e.monodromy_ok,
        },
        "note": e.note,
    }
    print(json.dumps(out, indent=2))
    return OK


def cmd_render(args) -> int:
    _write(args.output, render_svg(_load_diagram(args.diagram)))
    return OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pencil-trisection",
        description="Trisection diagrams from combinatorial Lefschetz pencils (homology-level).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate a pencil and its homological monodromy")
    p.add_argument("file", help="pencil JSON file or corpus:NAME")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("trisect", help="build a trisection diagram")
    p.add_argument("file")
    p.add_argument("-o", "--output", help="diagram JSON output (default stdout)")
    p.add_argument("--force", action="store_true", help="build even if the monodromy check fails")
    p.set_defaults(func=cmd_trisect)

    p = sub.add_parser("verify", help="verify a diagram against its pencil")
    p.add_argument("file")
    p.add_argument("-d", "--diagram", help="diagram JSON (built from the pencil if omitted)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("invariants", help="print g, k, chi and H1")
    p.add_argument("file")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("corpus", help="list or show built-in pencils")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("render", help="schematic SVG of a diagram")
    p.add_argument("diagram", help="diagram JSON file or corpus:NAME")
    p.add_argument("-o", "--output", help="SVG output (default stdout)")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code == 0 else INPUT_ERROR
    try:
        return args.func(args)
    except CliError as exc:
        print(f"E:{exc.code}:{exc}", file=sys.stderr)
        return exc.code
    except corpus.CorpusError as exc:
        print(f"E:{INTERNAL}:{exc}", file=sys.stderr)
        return INTERNAL
    except Exception as exc:  # anything else is a bug
        print(f"E:{INTERNAL}:internal error: {exc!r}", file=sys.stderr)
        return INTERNAL


if __name__ == "__main__":
    sys.exit(main())
