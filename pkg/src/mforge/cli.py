"""Command-line front end.

Exit codes: 0 when everything checked out, 1 when some statement is Failed or
NotProved, 2 on usage or input errors (message on stderr).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import MforgeError
from .dsl import DSLError, format, parse
from .hodge import hodge_profile
from .realization import dump_model_json, theta_model
from .report import FAILED, NOT_PROVED
from .rewrite import corrupted_rules, normalize, standard_rules
from .verify import SuiteOptions, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def g_range(text: str) -> list[int]:
    """``4``, ``2..6`` or ``2,3,5``."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            out = list(range(int(lo), int(hi) + 1))
        else:
            out = [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad g range {text!r}") from None
    if not out or any(not 2 <= g <= 6 for g in out):
        raise argparse.ArgumentTypeError(f"g must lie in 2..6, got {text!r}")
    return out


def single_g(text: str) -> int:
    gs = g_range(text)
    if len(gs) != 1:
        raise argparse.ArgumentTypeError("expected a single g")
    return gs[0]


def nonneg(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mforge", description="Verify the theta-divisor correspondence identities.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run the statement suites")
    v.add_argument("--g", type=g_range, default=[4], help="4, 2..6 or 2,3 (default 4)")
    v.add_argument("--symbolic-only", action="store_true")
    v.add_argument("--k", type=nonneg, default=None, help="override dim K (default from hodge)")
    v.add_argument("--depth", type=nonneg, default=None, help="saturation depth (env MFORGE_DEPTH)")
    v.add_argument("--out", type=Path, default=None)
    v.add_argument("--format", choices=("json", "text"), default="text")
    v.add_argument("--no-timing", action="store_true", help="zero elapsed_ms for byte-stable output")
    v.add_argument("--corrupt-rule", action="store_true", help="inject a deliberately unsound rule")

    n = sub.add_parser("normalize", help="print the normal form of an expression")
    n.add_argument("expr")
    n.add_argument("--g", type=single_g, required=True)

    h = sub.add_parser("hodge", help="numerical invariants of Theta")
    h.add_argument("--g", type=int, required=True)
    h.add_argument("--d", type=int, default=1)
    h.add_argument("--format", choices=("json", "text"), default="text")

    d = sub.add_parser("dump-model", help="write generator matrices as JSON")
    d.add_argument("--g", type=single_g, required=True)
    d.add_argument("--k", type=nonneg, default=None)
    d.add_argument("--out", type=Path, required=True)
    return p


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text + "\n")
    else:
        out.write_text(text + "\n")


def cmd_verify(args) -> int:
    opts = SuiteOptions(
        symbolic_only=args.symbolic_only,
        k="auto" if args.k is None else args.k,
        depth=args.depth,
        rules=corrupted_rules if args.corrupt_rule else None,
    )
    reports = run_suite(args.g, opts)
    if args.format == "json":
        docs = [r.to_dict(timing=not args.no_timing) for r in reports]
        text = json.dumps(docs[0] if len(docs) == 1 else docs, indent=2, sort_keys=True)
    else:
        text = "\n\n".join(r.to_text() for r in reports)
    _emit(text, args.out)
    bad = any(s.status in (FAILED, NOT_PROVED) for r in reports for s in r.statements)
    return EXIT_FAIL if bad else EXIT_OK


def cmd_normalize(args) -> int:
    e = parse(args.expr, args.g)
    print(format(normalize(e, standard_rules(args.g))))
    return EXIT_OK


def cmd_hodge(args) -> int:
    prof = hodge_profile(args.g, args.d)
    if args.format == "json":
        print(json.dumps(prof.to_dict(), indent=2, sort_keys=True))
    else:
        print(f"g = {prof.g}, d = {prof.d}")
        print(f"euler       {prof.euler}")
        print(f"betti       {prof.betti}")
        print(f"k           {prof.k_dim}")
        print(f"geom genus  {prof.geom_genus}")
        print(f"level bound {prof.level_bound}")
        for note in prof.notes:
            print(f"note: {note}")
    return EXIT_OK


def cmd_dump_model(args) -> int:
    model = theta_model(args.g, "auto" if args.k is None else args.k)
    args.out.write_text(dump_model_json(model) + "\n")
    return EXIT_OK


COMMANDS = {"verify": cmd_verify, "normalize": cmd_normalize, "hodge": cmd_hodge, "dump-model": cmd_dump_model}


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except DSLError as exc:
        print(f"mforge: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MforgeError, ValueError, OSError) as exc:
        print(f"mforge: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
