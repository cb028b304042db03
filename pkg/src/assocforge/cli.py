"""Command-line interface: ``assocforge <subcommand> [flags]``.

Exit codes: 0 success, 1 a verification failed, 2 usage or input error.
"""

import argparse
import json
import sys
import time

from . import __version__
from .chords import ChordSeries, graded_dimension
from .cohomology import COMPLEXES, cohomology_table, to_csv
from .equations import is_associator, is_grt_element
from .grt import GrtElement, grt_act, grt_exponentiate, grt_lie_solutions, grt_multiply
from .pacd import check_braid_relations, evaluate_Z, parse_braid_word
from .serialize import FormatError, format_series, read_series
from .solver import SolverConfig, build_associator

DEFAULT_DEGREE = 4
WARN_DEGREE = 6


class UsageError(Exception):
    pass


class Reporter:
    """JSON-lines event sink; a no-op without ``--report``."""

    def __init__(self, path):
        self.fh = open(path, "w", encoding="utf-8") if path else None

    def emit(self, event, **fields):
        if self.fh:
            self.fh.write(json.dumps({"event": event, **fields}, sort_keys=True) + "\n")

    def close(self):
        if self.fh:
            self.fh.close()


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _nonneg(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report", metavar="PATH", help="write JSON-lines events here")
    common.add_argument("--threads", type=_positive, default=1, metavar="K")

    p = argparse.ArgumentParser(prog="assocforge", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, metavar="SUBCOMMAND")

    s = sub.add_parser("dims", parents=[common], help="graded dimensions of A^pb_n")
    s.add_argument("--strands", type=_nonneg, required=True)
    s.add_argument("--max-degree", type=_nonneg, default=DEFAULT_DEGREE)

    s = sub.add_parser("normal-form", parents=[common], help="normal form of an expression")
    s.add_argument("expression", help='e.g. "23.12 - 2*13"')
    s.add_argument("--strands", type=_positive, required=True)
    s.add_argument("--max-degree", type=_nonneg, default=None)

    s = sub.add_parser("solve", parents=[common], help="construct an associator")
    s.add_argument("--degree", type=_positive, default=DEFAULT_DEGREE)
    s.add_argument("--even", action="store_true")
    s.add_argument("--out", metavar="PATH")

    s = sub.add_parser("verify", parents=[common], help="check an associator or GRT file")
    s.add_argument("path", nargs="?")
    s.add_argument("--assoc", metavar="PATH")

    s = sub.add_parser("grt-dims", parents=[common], help="dimensions of grt per degree")
    s.add_argument("--max-degree", type=_positive, default=DEFAULT_DEGREE)

    s = sub.add_parser("grt-exp", parents=[common], help="GRT element from a grt basis vector")
    s.add_argument("--generator-degree", type=_positive, required=True)
    s.add_argument("--index", type=_nonneg, default=0)
    s.add_argument("--degree", type=_positive, default=DEFAULT_DEGREE)
    s.add_argument("--out", metavar="PATH")

    s = sub.add_parser("grt-mul", parents=[common], help="GRT product of two files")
    s.add_argument("left")
    s.add_argument("right")
    s.add_argument("--out", metavar="PATH")

    s = sub.add_parser("grt-act", parents=[common], help="act by a GRT element on an associator")
    s.add_argument("grt")
    s.add_argument("--assoc", metavar="PATH", required=True)
    s.add_argument("--out", metavar="PATH")

    s = sub.add_parser("cohomology", parents=[common], help="cohomology dimension table (CSV)")
    s.add_argument("--max-degree", type=_nonneg, default=DEFAULT_DEGREE)
    s.add_argument("--complex", choices=COMPLEXES + ("both",), default="both")
    s.add_argument("--out", metavar="PATH")

    for name, helptext in (
        ("braid-invariant", "evaluate Z on a braid word"),
        ("braid-relations", "check the braid relations for Z"),
    ):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("--strands", type=_positive, required=True)
        s.add_argument("--assoc", metavar="PATH")
        s.add_argument("--degree", type=_positive, default=DEFAULT_DEGREE)
        if name == "braid-invariant":
            s.add_argument("--word", required=True, help='e.g. "s1 s2^-1"')
    return p


def _write(text, path):
    if path:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path, kind=None):
    try:
        f = read_series(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except FormatError as exc:
        raise UsageError(f"{path}: {exc}") from None
    if kind and f.kind != kind:
        raise UsageError(f"{path}: expected a {kind} file, found {f.kind}")
    return f


def _warn_degree(m):
    if m > WARN_DEGREE:
        print(
            f"warning: degree {m} is above {WARN_DEGREE}; runtime grows roughly like 3^M",
            file=sys.stderr,
        )


def _associator(args, rep):
    if args.assoc:
        phi = _load(args.assoc, "assoc").series
        report = is_associator(phi)
        if not report:
            raise UsageError(f"{args.assoc} is not an associator: {report.summary()}")
        return phi
    _warn_degree(args.degree)
    phi = build_associator(SolverConfig(args.degree, even=True)).phi
    rep.emit("associator-built", degree=args.degree)
    return phi


def cmd_dims(args, rep):
    dims = [graded_dimension(args.strands, m) for m in range(args.max_degree + 1)]
    rep.emit("dims", strands=args.strands, dims=dims)
    print(", ".join(str(d) for d in dims))
    return 0


def cmd_normal_form(args, rep):
    try:
        expr = ChordSeries.parse(args.strands, args.max_degree or 64, args.expression)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.max_degree is None:
        expr = expr.with_max_degree(max(expr.degrees(), default=0))
    rep.emit("normal-form", result=str(expr))
    print(expr)
    return 0


def cmd_solve(args, rep):
    _warn_degree(args.degree)
    t0 = time.perf_counter()
    result = build_associator(SolverConfig(args.degree, even=args.even))
    for step in result.steps:
        rep.emit(
            "degree",
            degree=step.degree,
            unknowns=step.unknown_dimension,
            rows=step.constraint_rows,
            kernel_dimension=step.kernel_dimension,
        )
    _write(format_series(result.phi, "assoc", even=args.even), args.out)
    rep.emit("solved", degree=args.degree, even=args.even, seconds=round(time.perf_counter() - t0, 3))
    return 0


def cmd_verify(args, rep):
    path = args.path or args.assoc
    if not path:
        raise UsageError("verify needs a file (positional or --assoc)")
    f = _load(path)
    check = is_associator if f.kind == "assoc" else is_grt_element
    report = check(f.series)
    rep.emit("verify", kind=f.kind, ok=report.ok, checks=report.checks)
    print(report.summary())
    return 0 if report.ok else 1


def cmd_grt_dims(args, rep):
    _warn_degree(args.max_degree)
    for m in range(1, args.max_degree + 1):
        dim = grt_lie_solutions(m).dimension
        rep.emit("grt-dim", degree=m, dimension=dim)
        print(f"{m} {dim}")
    return 0


def cmd_grt_exp(args, rep):
    _warn_degree(args.degree)
    sols = grt_lie_solutions(args.generator_degree)
    if args.index >= sols.dimension:
        raise UsageError(
            f"grt has dimension {sols.dimension} in degree {args.generator_degree}; "
            f"index {args.index} is out of range"
        )
    g = grt_exponentiate(sols.basis[args.index], args.degree)
    _write(format_series(g.gamma, "grt"), args.out)
    return 0


def _grt(path):
    series = _load(path, "grt").series
    try:
        return GrtElement(series)
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None


def cmd_grt_mul(args, rep):
    a, b = _grt(args.left), _grt(args.right)
    if a.max_degree != b.max_degree:
        raise UsageError("the two GRT files have different max_degree")
    _write(format_series(grt_multiply(a, b).gamma, "grt"), args.out)
    return 0


def cmd_grt_act(args, rep):
    g = _grt(args.grt)
    phi = _load(args.assoc, "assoc").series
    if g.max_degree != phi.max_degree:
        raise UsageError("GRT element and associator have different max_degree")
    out = grt_act(g, phi)
    report = is_associator(out)
    rep.emit("grt-act", ok=report.ok)
    _write(format_series(out, "assoc"), args.out)
    return 0 if report.ok else 1


def cmd_cohomology(args, rep):
    complexes = COMPLEXES if args.complex == "both" else (args.complex,)
    rows = cohomology_table(args.max_degree, complexes=complexes)
    for r in rows:
        rep.emit(
            "cohomology",
            complex=r.complex,
            position=r.position,
            chord_degree=r.chord_degree,
            dim_H=r.dim_H,
        )
    _write(to_csv(rows), args.out)
    return 0


def cmd_braid_invariant(args, rep):
    if args.strands > 6:
        raise UsageError("braid words are limited to 6 strands")
    phi = _associator(args, rep)
    try:
        word = parse_braid_word(args.word, args.strands)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    z = evaluate_Z(word, phi, args.strands)
    print(f"skeleton {z.skeleton}")
    print(f"series {z.series}")
    rep.emit("braid-invariant", word=args.word, skeleton=str(z.skeleton), series=str(z.series))
    return 0


def cmd_braid_relations(args, rep):
    if args.strands > 6:
        raise UsageError("braid words are limited to 6 strands")
    phi = _associator(args, rep)
    checks = check_braid_relations(args.strands, phi)
    for c in checks:
        status = "ok" if c.ok else f"FAIL (degree {c.first_failing_degree})"
        print(f"{c.relation}: {status}")
        rep.emit("braid-relation", relation=c.relation, ok=c.ok)
    return 0 if all(c.ok for c in checks) else 1


COMMANDS = {
    "dims": cmd_dims,
    "normal-form": cmd_normal_form,
    "solve": cmd_solve,
    "verify": cmd_verify,
    "grt-dims": cmd_grt_dims,
    "grt-exp": cmd_grt_exp,
    "grt-mul": cmd_grt_mul,
    "grt-act": cmd_grt_act,
    "cohomology": cmd_cohomology,
    "braid-invariant": cmd_braid_invariant,
    "braid-relations": cmd_braid_relations,
}


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    rep = Reporter(args.report)
    try:
        rep.emit("start", command=args.command, threads=args.threads)
        return COMMANDS[args.command](args, rep)
    except UsageError as exc:
        print(f"assocforge {args.command}: error: {exc}", file=sys.stderr)
        return 2
    finally:
        rep.close()


def main():
    sys.exit(run())
