"""Command layer: every report the package can produce, addressable by name.

``run_command(argv)`` returns an exit status and writes to the given streams;
``python -m dualgraph`` forwards to it. Status 2 means bad usage or an
unreadable graph document, status 1 a mismatch against a reference table or a
walkthrough check.
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys
from typing import TextIO

from . import __version__
from .casegen import RULES, ConstraintSet, enumerate_triples, generate_cases, fork_label, star_label
from .det import det, is_negative_definite
from .forks import NOT_QUOTIENT, classify_fork, enumerate_forks, fork_candidates, make_record
from .graph import Chain, Fork, StarBoundary, WeightedTree, chain_of
from .hj import pair_from_chain
from .io import DocumentError, Shape, parse_graph
from .numerology import assemble
from .peeling import bark_fork, bark_twig, peeling_profile
from .tables import TABLES, check_table, reproduce_table
from .walkthrough import KNOWN_ERRATA, four_twig_report, run_walkthrough


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dualgraph", description="Exact invariants of weighted dual graphs.")
    p.add_argument("--signed", action="store_true",
                   help="read weights in graph documents as self-intersections")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("det", "classify", "bark"):
        sub.add_parser(name).add_argument("file", help="graph document, or - for stdin")
    sub.add_parser("peel").add_argument("file", help="star document")
    a = sub.add_parser("assemble")
    a.add_argument("star")
    a.add_argument("fork")
    e = sub.add_parser("enumerate-forks")
    e.add_argument("--a", type=int, required=True)
    e.add_argument("--cap", type=int, default=30)
    sub.add_parser("triples").add_argument("--bound", type=int, default=19)
    c = sub.add_parser("cases")
    c.add_argument("--constraints", help="JSON file overriding constraint fields")
    c.add_argument("--disable", action="append", default=[], choices=sorted(RULES))
    c.add_argument("--verbose", action="store_true", help="list every case, not only survivors")
    t = sub.add_parser("tables")
    t.add_argument("--which", required=True, choices=sorted(TABLES))
    t.add_argument("--check", action="store_true")
    sub.add_parser("lemma59")
    sub.add_parser("r4")
    return p


def _read(path: str, stdin: TextIO, signed: bool) -> Shape:
    text = stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return parse_graph(text, signed=signed)


def _as_fork(shape: Shape) -> Fork | None:
    if isinstance(shape, Fork):
        return shape
    if isinstance(shape, StarBoundary) and shape.r == 3:
        return Fork(shape.b, shape.twigs)
    if isinstance(shape, WeightedTree):
        br = shape.branching()
        if len(br) == 1 and shape.degree(br[0]) == 3:
            c = br[0]
            twigs = []
            for part in shape.components_without([c]):
                start = next(v for v in part.ids if c in shape.adjacency[v])
                order = [start]
                while len(order) < len(part):
                    order.append(next(u for u in part.adjacency[order[-1]] if u not in order))
                twigs.append(Chain([shape.weight(v) for v in order]))
            return Fork(-shape.weight(c), tuple(twigs))
    return None


def _as_chain(shape: Shape) -> Chain | None:
    if isinstance(shape, Chain):
        return shape
    if isinstance(shape, WeightedTree) and not shape.branching():
        return chain_of(shape)
    return None


def _tsv(out: TextIO, *cells) -> None:
    out.write("\t".join(str(c) for c in cells) + "\n")


def _header(out: TextIO, argv: list[str], constraints: ConstraintSet | None = None) -> None:
    c = constraints or ConstraintSet()
    out.write(f"# dualgraph {__version__}\n")
    out.write(f"# command: {shlex.join(argv)}\n")
    disabled = ",".join(sorted(c.disabled)) or "none"
    out.write(f"# constraints: {c.digest()} disabled={disabled}\n")


def _cmd_det(args, out, stdin) -> int:
    _tsv(out, det(_read(args.file, stdin, args.signed)))
    return 0


def _cmd_classify(args, out, stdin) -> int:
    shape = _read(args.file, stdin, args.signed)
    chain = _as_chain(shape)
    if chain is not None:
        if is_negative_definite(chain) and chain.admissible:
            pair = pair_from_chain(chain)
            _tsv(out, "cyclic", f"({pair.d},{pair.q})")
        else:
            _tsv(out, NOT_QUOTIENT)
        return 0
    fork = _as_fork(shape)
    _tsv(out, classify_fork(fork) if fork is not None else NOT_QUOTIENT)
    return 0


def _cmd_bark(args, out, stdin) -> int:
    shape = _read(args.file, stdin, args.signed)
    chain = _as_chain(shape)
    if chain is not None:
        bark = bark_twig(chain)
    else:
        fork = _as_fork(shape)
        if fork is None:
            raise DocumentError("bark needs a chain or a fork", 1, 1)
        bark = bark_fork(fork)
    _tsv(out, "vertex", "coefficient")
    for v, x in bark.coefficients.items():
        _tsv(out, v, x)
    _tsv(out, "square", bark.square)
    return 0


def _star(args, path, stdin) -> StarBoundary:
    shape = _read(path, stdin, args.signed)
    if not isinstance(shape, StarBoundary):
        raise DocumentError("expected a star document", 1, 1)
    return shape


def _cmd_peel(args, out, stdin) -> int:
    prof = peeling_profile(_star(args, args.file, stdin))
    for key in ("a", "Pi", "beta"):
        _tsv(out, key, getattr(prof, key))
    _tsv(out, "capacities", ",".join(map(str, prof.capacities)))
    _tsv(out, "P^2", prof.p_squared)
    _tsv(out, "Pi*beta^2", prof.bmy_value)
    return 0


def _cmd_assemble(args, out, stdin) -> int:
    D = _star(args, args.star, stdin)
    E = _read(args.fork, stdin, args.signed)
    fork = _as_fork(E)
    if fork is None:
        raise DocumentError("expected a fork document", 1, 1)
    n = assemble(D, make_record(fork))
    for key in ("n_D", "n_E", "b2", "K2", "KD", "KE", "D2", "E2", "KDE2", "bkD2", "bkE2", "P2"):
        _tsv(out, key, getattr(n, key))
    _tsv(out, "residual", n.residual)
    return 0


def _cmd_enumerate_forks(args, out, stdin) -> int:
    _tsv(out, "type", "h", "twigs", "size", "K.E", "Bk(E)^2")
    for rec in enumerate_forks(args.a, args.cap):
        _tsv(out, rec.type, rec.h, fork_label(rec).split(" ", 1)[1], rec.size, rec.k_degree,
             rec.bark_square)
    for fam in fork_candidates(args.a).families:
        _tsv(out, "# family", f"[-2]*k + {list(fam.base.weights)}", f"k >= {fam.k_min}",
             f"Bk(E)^2 = {fam.bark_square}")
    return 0


def _cmd_triples(args, out, stdin) -> int:
    _tsv(out, "d1", "d2", "d3", "P^2=0")
    for ds, flat in enumerate_triples(args.bound):
        _tsv(out, *ds, "yes" if flat else "no")
    return 0


def _cmd_cases(args, out, stdin, c: ConstraintSet) -> int:
    report = generate_cases(c)
    counts: dict[str, int] = {}
    for r in report.rejections:
        counts[r.rule] = counts.get(r.rule, 0) + 1
    for case in report.cases:
        counts[case.verdict] = counts.get(case.verdict, 0) + 1
    _tsv(out, "rule", "count")
    for rule in list(RULES) + ["eliminated-by:window", "eliminated-by:residual", "SURVIVOR"]:
        if rule in counts:
            _tsv(out, rule, counts[rule])
    for note in report.family_notes:
        out.write(f"# {note}\n")
    _tsv(out, "boundary", "fork", "k", "verdict")
    for case in report.cases:
        if args.verbose or case.survivor:
            _tsv(out, star_label(case.D), fork_label(case.E),
                 "" if case.family_param is None else case.family_param, case.verdict)
    out.write(f"SURVIVORS: {len(report.survivors)}\n")
    return 0


def _cmd_tables(args, out, stdin) -> int:
    for row in reproduce_table(args.which):
        _tsv(out, *row)
    if not args.check:
        return 0
    res = check_table(args.which)
    for d in res.diffs:
        out.write(f"- {d.row}\t{d.column}\t{d.expected}\n+ {d.row}\t{d.column}\t{d.computed}\n")
    for m in res.missing:
        out.write(f"missing row: {m}\n")
    for x in res.extra:
        out.write(f"unlisted row: {x}\n")
    verified = res.rows_expected - len(res.missing) - len({d.row for d in res.diffs})
    out.write(f"{verified}/{res.rows_expected} rows verified\n")
    return 0 if res.ok else 1


def _cmd_lemma59(args, out, stdin) -> int:
    rep = run_walkthrough(strict=False)
    _tsv(out, "step", "quantity", "quoted", "computed", "status")
    for c in rep.checks:
        status = "ok" if c.agrees else ("erratum" if (c.step, c.quantity) in KNOWN_ERRATA else "MISMATCH")
        _tsv(out, c.step, c.quantity, c.quoted, c.computed, status)
    for c in rep.errata:
        out.write(f"# {c.step} {c.quantity}: {KNOWN_ERRATA[(c.step, c.quantity)]}\n")
    return 1 if rep.failures else 0


def _cmd_r4(args, out, stdin) -> int:
    tuples, cases = four_twig_report()
    _tsv(out, "tuple", "P^2=0")
    for ds, flat in tuples:
        _tsv(out, "(" + ",".join(map(str, ds)) + ")", "yes" if flat else "no")
    _tsv(out, "b", "Z4", "d(D)", "24b-36-8dbar4", "eliminated-by")
    for c in cases:
        _tsv(out, c.b, list(c.z4.weights), c.d_D, c.formula, c.outcome)
    return 0 if all(c.outcome != "open" for c in cases) else 1


_COMMANDS = {
    "det": _cmd_det, "classify": _cmd_classify, "bark": _cmd_bark, "peel": _cmd_peel,
    "assemble": _cmd_assemble, "enumerate-forks": _cmd_enumerate_forks, "triples": _cmd_triples,
    "tables": _cmd_tables, "lemma59": _cmd_lemma59, "r4": _cmd_r4,
}


def _constraints(args) -> ConstraintSet:
    c = ConstraintSet()
    if getattr(args, "constraints", None):
        with open(args.constraints, encoding="utf-8") as fh:
            c = ConstraintSet.from_json(json.load(fh))
    if getattr(args, "disable", None):
        c = c.disable(*args.disable)
    return c


def run_command(argv: list[str], out: TextIO | None = None, err: TextIO | None = None,
                stdin: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    stdin = stdin or sys.stdin
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        c = _constraints(args)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except (OSError, KeyError, ValueError) as exc:
        err.write(f"dualgraph: {exc}\n")
        return 2
    _header(out, ["dualgraph", *argv], c)
    try:
        if args.command == "cases":
            return _cmd_cases(args, out, stdin, c)
        return _COMMANDS[args.command](args, out, stdin)
    except (OSError, ValueError) as exc:  # DocumentError is a ValueError
        err.write(f"dualgraph: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))
