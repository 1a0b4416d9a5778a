"""Command-line interface.

Exit codes: 0 ok, 1 verification failure, 2 capacity, 3 negative-power
residue, 4 invalid input.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .cache import CACHE_ENV, CACHE_FILE, BracketCache, default_cache_path
from .channels import ChannelFitError, channel_fit, channel_validate
from .diagram import (BUILTIN_KNOTS, Cap, Cross, Cup, KnotPresentation, SliceDiagram, TLGen,
                      braid_closure, builtin, parse_braid_word)
from .oracle import DEFAULT_MAX_WIDTH, CapacityError, bracket, colored_bracket
from .pipeline import (Convention, ResidueError, StabilizationError, SurgeryInput, bracket_source,
                       stabilize)

EXIT_OK, EXIT_VERIFY, EXIT_CAPACITY, EXIT_RESIDUE, EXIT_INPUT = 0, 1, 2, 3, 4

# jones prints brackets of the presentation as given
_AS_GIVEN = Convention()


class InputError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _fmt(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_knot(text: str) -> KnotPresentation:
    if text.startswith("braid:"):
        try:
            word = parse_braid_word(text[len("braid:"):])
            K = KnotPresentation.from_braid(word, "braid:" + ",".join(map(str, word)))
        except ValueError as exc:
            raise InputError(str(exc)) from None
        if K.num_components != 1:
            raise InputError(f"{text} closes to {K.num_components} components, need a knot")
        return K
    try:
        return builtin(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def parse_diagram_file(path: Path) -> SliceDiagram:
    """One event per line: ``cup i``, ``cap i``, ``cross i +1|-1``, ``e i``; ``#`` comments."""
    events = []
    for lineno, raw in enumerate(path.read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        try:
            kind, args = line[0].lower(), [int(a) for a in line[1:]]
            if kind == "cup" and len(args) == 1:
                events.append(Cup(args[0]))
            elif kind == "cap" and len(args) == 1:
                events.append(Cap(args[0]))
            elif kind == "cross" and len(args) == 2:
                events.append(Cross(args[0], args[1]))
            elif kind == "e" and len(args) == 1:
                events.append(TLGen(args[0]))
            else:
                raise ValueError
        except ValueError:
            raise InputError(f"{path}:{lineno}: cannot parse {raw.strip()!r}") from None
    try:
        return SliceDiagram(events)
    except (ValueError, TypeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _cache(arg: str | None) -> BracketCache | None:
    if arg:
        p = Path(arg)
        return BracketCache(p / CACHE_FILE if p.is_dir() else p)
    p = default_cache_path()
    return BracketCache(p) if p else None


def _surgery(text: str) -> int:
    if text not in ("+1", "1", "-1"):
        raise argparse.ArgumentTypeError("surgery must be +1 or -1")
    return -1 if text == "-1" else 1


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


# ---------------------------------------------------------------- commands

def cmd_compute(args) -> int:
    K = parse_knot(" ".join(args.knot))
    if args.order < 2:
        raise InputError("order must be >= 2")
    inp = SurgeryInput(K, args.surgery, args.order, args.max_color, args.engine)
    try:
        z = stabilize(inp, cache=_cache(args.cache), max_width=args.max_width)
    except ValueError as exc:
        raise InputError(f"compute: {exc}") from None
    for k, a in enumerate(z.coeffs[: z.certified_order]):
        print(f"a[{k}] = {_fmt(a)}")
    print(f"h-series: {z.format_h()}")
    print(f"certified-order: {z.certified_order}")
    if z.certified_order < args.order:
        print(f"note: certification capped at order {z.certified_order} < {args.order} "
              f"(truncation levels {', '.join(map(str, z.runs))})", file=sys.stderr)
    return EXIT_OK


def cmd_bracket(args) -> int:
    text = " ".join(args.diagram)
    if text.startswith("braid:"):
        try:
            d = braid_closure(parse_braid_word(text[len("braid:"):]))
        except ValueError as exc:
            raise InputError(str(exc)) from None
    else:
        p = Path(text)
        if not p.is_file():
            raise InputError(f"no such diagram file {text!r}")
        d = parse_diagram_file(p)
    if not d.is_closed:
        raise InputError("diagram is not closed")
    print(bracket(d, args.max_width).format_pairs())
    return EXIT_OK


def cmd_jones(args) -> int:
    K = parse_knot(" ".join(args.knot))
    if args.engine == "oracle":
        cache = _cache(args.cache)
        val = cache.get(K.id, args.color) if cache is not None else None
        if val is None:
            val = colored_bracket(K, args.color, args.max_width)
            if cache is not None:
                cache.put(K.id, args.color, val)
    else:
        try:
            J, _ = bracket_source(K, args.engine, _cache(args.cache), args.max_width,
                                  convention=_AS_GIVEN)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        val = J(args.color)
    print(val.format_pairs())
    return EXIT_OK


def cmd_channels(args) -> int:
    law = channel_fit(args.fit_range, args.max_width)
    law, report = channel_validate(law, args.validate_range, 3, args.max_width)
    print(f"# {law.describe()}; fit n <= {law.fit_range}, validated n <= {law.validation_range}")
    for line in law.dump(args.max_n):
        print(line)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import run_suite

    failures = 0
    for name, ok, detail in run_suite(args.suite):
        print(f"{'PASS' if ok else 'FAIL'} {name}" + (f" :: {detail}" if detail else ""), flush=True)
        failures += not ok
    print(f"{'all checks passed' if not failures else f'{failures} check(s) failed'}")
    return EXIT_OK if not failures else EXIT_VERIFY


def cmd_cache_info(args) -> int:
    cache = _cache(args.cache)
    if cache is None:
        print(f"no cache configured (set {CACHE_ENV} or pass --cache)")
        return EXIT_OK
    print(f"path: {cache.path}")
    print(f"records: {len(cache)}")
    by_knot: dict[str, list[int]] = {}
    for knot, n in cache.keys():
        by_knot.setdefault(knot, []).append(n)
    for knot, ns in sorted(by_knot.items()):
        print(f"knot={knot} colors={','.join(map(str, sorted(ns)))}")
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="skeinz", description="Skein-theoretic invariant z(M) of +-1 surgeries on knots.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--max-width", type=_positive, default=DEFAULT_MAX_WIDTH,
                   help="sweep capacity in boundary points (default %(default)s)")
    # also accepted after the subcommand
    width = argparse.ArgumentParser(add_help=False)
    width.add_argument("--max-width", type=_positive, default=argparse.SUPPRESS,
                       help="sweep capacity in boundary points")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    knots = "|".join(sorted(BUILTIN_KNOTS)) + "|braid:<w1 w2 ...>"
    c = sub.add_parser("compute", parents=[width], help="compute z(M) for eps-surgery on a knot")
    c.add_argument("--knot", required=True, nargs="+", help=knots)
    c.add_argument("--surgery", required=True, type=_surgery, help="+1 or -1")
    c.add_argument("--order", required=True, type=_positive, help="target order N (mod h^N)")
    c.add_argument("--engine", choices=("auto", "oracle", "channel"), default="auto")
    c.add_argument("--max-color", type=_positive, default=None, help="u-degree / maximal color D")
    c.add_argument("--cache", default=None, help=f"cache file or directory (default ${CACHE_ENV})")
    c.set_defaults(func=cmd_compute)

    b = sub.add_parser("bracket", parents=[width], help="Kauffman bracket of a closed diagram")
    b.add_argument("--diagram", required=True, nargs="+", help="file or braid:<w1 w2 ...>")
    b.set_defaults(func=cmd_bracket)

    j = sub.add_parser("jones", parents=[width], help="0-framed colored bracket J_K(n)")
    j.add_argument("--knot", required=True, nargs="+", help=knots)
    j.add_argument("--color", required=True, type=_positive)
    j.add_argument("--engine", choices=("auto", "oracle", "channel"), default="oracle")
    j.add_argument("--cache", default=None)
    j.set_defaults(func=cmd_jones)

    ch = sub.add_parser("channels", parents=[width], help="fit, validate and dump the channel law")
    ch.add_argument("--max-n", type=_positive, default=5)
    ch.add_argument("--fit-range", type=_positive, default=4)
    ch.add_argument("--validate-range", type=_positive, default=5)
    ch.set_defaults(func=cmd_channels)

    v = sub.add_parser("verify", help="run check suites")
    v.add_argument("--suite", choices=("paper-table", "properties", "all"), default="all")
    v.set_defaults(func=cmd_verify)

    ci = sub.add_parser("cache-info", help="describe the colored-bracket cache")
    ci.add_argument("--cache", default=None)
    ci.set_defaults(func=cmd_cache_info)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapacityError as exc:
        print(f"error: capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except StabilizationError as exc:
        print(f"error: stabilization: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except ResidueError as exc:
        print(f"error: pairing: {exc}", file=sys.stderr)
        return EXIT_RESIDUE
    except ChannelFitError as exc:
        print(f"error: channel engine: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
