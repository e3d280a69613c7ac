"""amono command line: analyze a system file or a built-in example."""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from .catalog import catalog as get_example, names as example_names
from .errors import AmonoError, NoMBBasis, NoUnimodularIndexSet, ParseError, ValidationError
from .report import render_json, render_text, run_pipeline
from .spec_io import emit_spec, load_spec

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INVALID = 2
EXIT_NO_MB = 3


def _add_run_flags(p: argparse.ArgumentParser):
    p.add_argument("--tolerance", type=float, default=None, help="tolerance of the diagonal-pairing check (default 1e-8)")
    p.add_argument("--eig-tolerance", type=float, default=None, help="relative eigenvalue degeneracy threshold (default 1e-9)")
    p.add_argument("--json", action="store_true", help="print the machine-readable report")
    p.add_argument("--skip-hermitian", action="store_true", help="stop after the monodromy generators")
    p.add_argument("--require-mb", action="store_true", help="fail with exit code 3 when no Mellin-Barnes basis exists")
    p.add_argument("--timing", action="store_true", help="include per-stage wall times (makes output non-reproducible)")
    p.add_argument("-o", "--output", default=None, help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="amono", description="Monodromy of A-hypergeometric systems via Mellin-Barnes bases.")
    sub = ap.add_subparsers(dest="command", required=True)
    a = sub.add_parser("analyze", help="analyze a TOML system file")
    a.add_argument("file")
    _add_run_flags(a)
    e = sub.add_parser("example", help="analyze a built-in example")
    e.add_argument("name", help="e.g. g3, e36, appell_f1, appell_f4, lauricella_fd(3)")
    e.add_argument("--emit", action="store_true", help="print the example as a TOML system file and stop")
    _add_run_flags(e)
    sub.add_parser("list-examples", help="list the built-in examples")
    return ap


def _overrides(args) -> dict:
    out = {}
    if args.tolerance is not None:
        out["tolerance"] = args.tolerance
    if args.eig_tolerance is not None:
        out["eig_tolerance"] = args.eig_tolerance
    if args.skip_hermitian:
        out["skip_hermitian"] = True
    if args.require_mb:
        out["require_mb"] = True
    return out


def _write(text: str, path: Optional[str]):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "list-examples":
        for n in example_names():
            print(n)
        return EXIT_OK
    try:
        if args.command == "analyze":
            spec = load_spec(args.file)
        else:
            spec = get_example(args.name)
            if args.emit:
                _write(emit_spec(spec), args.output)
                return EXIT_OK
        res = run_pipeline(spec, _overrides(args), timing=args.timing)
    except (ParseError, ValidationError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INVALID
    except (NoMBBasis, NoUnimodularIndexSet) as exc:
        print("error: %s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return EXIT_NO_MB
    except (AmonoError, OSError) as exc:
        print("error: %s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return EXIT_INVALID if isinstance(exc, AmonoError) else EXIT_ERROR
    _write(render_json(res) if args.json else render_text(res), args.output)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
