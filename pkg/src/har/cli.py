"""Command-line interface: ``har <subcommand>``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bench, io
from .canonical import canonicalize
from .circuits import BOOL_SIG, FAMILIES
from .core import HarError, Signature, compose, tensor, validate
from .hypergraph import from_har, to_har, validate_ma
from .terms import TermSyntaxError, TermTypeError, decompose, eval_har, parse, show


class CommandError(Exception):
    pass


def _emit(text: str, out: str) -> None:
    if out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _load_har(path: str):
    try:
        return io.loads_har(_read(path))
    except OSError as exc:
        raise CommandError(f"{path}: {exc.strerror}") from None
    except HarError as exc:
        raise CommandError(f"{path}: {exc}") from None


def _checked(h, what: str):
    problem = validate(h)
    if problem is not None:
        raise CommandError(f"{what}: invalid diagram: {problem}")
    return h


def _signature(source: str | None) -> Signature:
    if source is None or source == "bool":
        return BOOL_SIG
    try:
        return Signature.load(source)
    except OSError as exc:
        raise CommandError(f"{source}: {exc.strerror}") from None


def cmd_validate(args) -> int:
    h = _load_har(args.file)
    problem = validate(h)
    if problem is not None:
        print(f"{args.file}: invalid: {problem}", file=sys.stderr)
        return 1
    print(f"{args.file}: ok ({h.A} -> {h.B}, K={h.K}, nnz={h.M.nnz})")
    return 0


def cmd_compose(args) -> int:
    f = _checked(_load_har(args.f), args.f)
    g = _checked(_load_har(args.g), args.g)
    try:
        h = compose(f, g)
    except HarError as exc:
        raise CommandError(str(exc)) from None
    _emit(io.dumps_har(h), args.output)
    return 0


def cmd_tensor(args) -> int:
    f = _checked(_load_har(args.f), args.f)
    g = _checked(_load_har(args.g), args.g)
    try:
        h = tensor(f, g)
    except HarError as exc:
        raise CommandError(str(exc)) from None
    _emit(io.dumps_har(h), args.output)
    return 0


def cmd_canon(args) -> int:
    h = _checked(_load_har(args.file), args.file)
    _emit(io.dumps_har(canonicalize(h)), args.output)
    return 0


def cmd_eval(args) -> int:
    if (args.expr is None) == (args.termfile is None):
        raise CommandError("give exactly one of a term file or --expr")
    text = args.expr if args.expr is not None else _read(args.termfile)
    sig = _signature(args.sig)
    try:
        h = eval_har(parse(text), sig)
    except (TermSyntaxError, TermTypeError) as exc:
        raise CommandError(str(exc)) from None
    _emit(io.dumps_har(h), args.output)
    return 0


def cmd_decompose(args) -> int:
    h = _checked(_load_har(args.file), args.file)
    _emit(show(decompose(h)) + "\n", args.output)
    return 0


def cmd_to_hyp(args) -> int:
    h = _checked(_load_har(args.file), args.file)
    _emit(io.dumps_hypergraph(from_har(h)), args.output)
    return 0


def cmd_from_hyp(args) -> int:
    try:
        g = io.loads_hypergraph(_read(args.file))
    except HarError as exc:
        raise CommandError(f"{args.file}: {exc}") from None
    problem = validate_ma(g)
    if problem is not None:
        raise CommandError(f"{args.file}: invalid hypergraph: {problem}")
    _emit(io.dumps_har(to_har(g)), args.output)
    return 0


def cmd_bench(args) -> int:
    def report(rec):
        state = "omitted" if rec.omitted else f"{rec.mean_ns / 1e6:.3f} ms"
        print(f"{args.family} k={rec.k} K={rec.K}: {state}", file=sys.stderr)

    records = bench.run_benchmark(args.family, args.max_k, reps=args.reps,
                                  timeout_s=args.timeout, min_k=args.min_k,
                                  progress=None if args.quiet else report)
    if args.output == "-":
        bench.write_csv(records, sys.stdout, args.family, args.seed)
    else:
        with open(args.output, "w") as fh:
            bench.write_csv(records, fh, args.family, args.seed)
    if args.gnuplot:
        Path(args.gnuplot).write_text(bench.gnuplot_script(args.output, args.family))
    return 0


def cmd_slope(args) -> int:
    try:
        rows = bench.read_csv(args.csv)
    except OSError as exc:
        raise CommandError(f"{args.csv}: {exc.strerror}") from None
    except (KeyError, ValueError) as exc:
        raise CommandError(f"{args.csv}: malformed benchmark CSV ({exc})") from None
    try:
        if args.top is not None:
            fit = bench.top_k_fit(rows, args.top)
        else:
            fit = bench.slope_fit(rows, args.k_min, args.k_max)
    except ValueError as exc:
        raise CommandError(str(exc)) from None
    print(f"slope {fit.slope:.4f} residual {fit.residual:.4f} points {fit.points}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="har", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        return p

    p = add("validate", cmd_validate, "check well-formedness of a HAR file")
    p.add_argument("file")
    for name, func, help_ in (("compose", cmd_compose, "sequential composition f ; g"),
                              ("tensor", cmd_tensor, "parallel composition f * g")):
        p = add(name, func, help_)
        p.add_argument("f")
        p.add_argument("g")
        p.add_argument("-o", "--output", default="-")
    for name, func, help_ in (("canon", cmd_canon, "canonical representative"),
                              ("decompose", cmd_decompose, "print a layered term"),
                              ("to-hyp", cmd_to_hyp, "convert a HAR to a hypergraph file"),
                              ("from-hyp", cmd_from_hyp, "convert a hypergraph file to a HAR")):
        p = add(name, func, help_)
        p.add_argument("file")
        p.add_argument("-o", "--output", default="-")
    p = add("eval", cmd_eval, "evaluate a term into a HAR")
    p.add_argument("termfile", nargs="?")
    p.add_argument("--expr")
    p.add_argument("--sig", help="signature file with 'name arity coarity' lines (default: bool)")
    p.add_argument("-o", "--output", default="-")
    p = add("bench", cmd_bench, "run a scaling benchmark and write CSV")
    p.add_argument("--family", "--benchmark", dest="family", required=True,
                   choices=sorted(FAMILIES))
    p.add_argument("--max-k", type=int, default=18)
    p.add_argument("--min-k", type=int, default=1)
    p.add_argument("--reps", type=int, default=10)
    p.add_argument("--timeout", type=float, default=60.0, help="seconds")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--gnuplot", help="also write a gnuplot script here")
    p.add_argument("--quiet", action="store_true")
    p.add_argument("-o", "--output", default="-")
    p = add("slope", cmd_slope, "fit a log-log slope to a benchmark CSV")
    p.add_argument("csv")
    p.add_argument("--k-min", type=int)
    p.add_argument("--k-max", type=int)
    p.add_argument("--top", type=int, help="fit only the largest N timed k values")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CommandError as exc:
        print(f"har: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
