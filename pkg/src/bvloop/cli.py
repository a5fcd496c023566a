"""Command line: ``bvloop eval|table|verify``.

Exit status is 0 on success (all suites passed), 1 when a verification
suite fails and 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import verify
from .config import BASES, RunConfig
from .parser import ExpressionError, eval_expr
from .render import element_json, latex, render
from .superalgebra import AlgebraError
from .tables import emit_table

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = _ArgumentParser(prog="bvloop", description="BV algebra on loop homology of SU(n+1) and complex Stiefel manifolds.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    def sig_args(p):
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--k", type=int, default=1)

    p = sub.add_parser("eval", help="evaluate an expression such as '{a3*e2, e2}' or 'D(a3*e4)'")
    sig_args(p)
    p.add_argument("--expr", required=True)
    p.add_argument("--basis", choices=BASES, default="intersection")
    p.add_argument("--format", dest="fmt", choices=("text", "json", "latex"), default="text")

    p = sub.add_parser("table", help="write the Delta and bracket tables")
    sig_args(p)
    p.add_argument("--bound", type=_nonneg, required=True, help="maximal number of generator factors")
    p.add_argument("--format", dest="fmt", choices=("json", "latex"), default="json")
    p.add_argument("--basis", choices=("intersection", "symplectic"), default="intersection")
    p.add_argument("--out", help="output file (default: stdout)")

    p = sub.add_parser("verify", help="run exhaustive identity checks")
    sig_args(p)
    p.add_argument("--bound", type=_nonneg, default=6, help="weighted e-degree bound")
    p.add_argument("--suite", action="append", dest="suites",
                   help="suite name or 'all' (repeatable); one of: " + ", ".join(verify.SUITE_NAMES + ("bv-axioms",)))
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    return ap


def _config(args) -> RunConfig:
    fmt = getattr(args, "fmt", "json")
    return RunConfig(
        n=args.n,
        k=args.k,
        bound=getattr(args, "bound", 0),
        basis=getattr(args, "basis", "intersection"),
        suites=tuple(getattr(args, "suites", None) or ("all",)),
        fmt=fmt if fmt in ("json", "latex") else "json",
        out=getattr(args, "out", None),
        workers=getattr(args, "workers", 1),
    )


def cmd_eval(args) -> int:
    cfg = _config(args)
    try:
        value = eval_expr(args.expr, cfg)
    except ExpressionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(exc.caret(), file=sys.stderr)
        return EXIT_USAGE
    if args.fmt == "json":
        print(json.dumps(element_json(value), sort_keys=True))
    elif args.fmt == "latex":
        print(latex(value))
    else:
        print(render(value))
    return EXIT_OK


def cmd_table(args) -> int:
    cfg = _config(args)
    text = emit_table(cfg)
    if not cfg.out:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = _config(args)
    for name in cfg.suites:
        if verify.canonical(name) not in verify.SUITE_NAMES + ("all", "bv-axioms"):
            print(f"error: unknown suite {name!r}", file=sys.stderr)
            return EXIT_USAGE
    results = verify.run(cfg.signature, cfg.bound, cfg.suites, cfg.workers)
    if args.json:
        print(json.dumps([r.as_dict() for r in results], sort_keys=True, indent=1))
    else:
        for r in results:
            print(r.line())
    failed = [r for r in results if not r.passed]
    if not args.json:
        print(f"{len(results) - len(failed)}/{len(results)} suites passed")
    return EXIT_FAIL if failed else EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"eval": cmd_eval, "table": cmd_table, "verify": cmd_verify}[args.command]
    try:
        return handler(args)
    except (AlgebraError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
