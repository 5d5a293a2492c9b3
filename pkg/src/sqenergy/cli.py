"""Command-line entry point ``sqen``.

Exit codes: 0 success (conjecture findings included), 1 usage/input error,
2 a proven-theorem check failed.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from . import checks, exact, experiments
from . import graph as gr
from .canon import MAX_CANON_N, enumerate_nonisomorphic
from .graph6 import Graph6Error, encode_graph6, iter_graph6, parse_graph6
from .random_graphs import generate_maximal_planar, sample_gnp
from .spectral import spectral_resolution, support_irreducible

EXIT_OK, EXIT_USAGE, EXIT_PROVEN_FAILURE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global options")
    g.add_argument("--seed", type=int, default=0, help="base random seed (default: 0)")
    g.add_argument("--tol", type=float, default=None,
                   help="relative eigenvalue sign tolerance (default: $SQEN_TOL or 1e-8)")
    g.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                   help="worker threads (default: available cores)")
    g.add_argument("--out", default=None, help="output file (default: stdout)")
    g.add_argument("--format", choices=("csv", "json"), default="csv", help="output format (default: csv)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="sqen", description="Positive and negative square energies of graphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", parents=[common], help="emit graph6 for a graph family")
    c.add_argument("family", choices=("complete", "bipartite", "cycle", "path", "star", "empty",
                                      "kneser", "gnp", "planar", "all"))
    c.add_argument("params", nargs="*", help="family parameters, e.g. 'kneser 5 2', 'gnp 100 0.5'")
    c.add_argument("--flips", type=int, default=0, help="diagonal flips for 'planar' (default: 0)")
    c.add_argument("--blowup", type=int, default=1, help="apply a t-blowup (default: 1)")
    c.add_argument("--copies", type=int, default=1, help="disjoint copies (default: 1)")
    c.add_argument("--allow-large", action="store_true",
                   help=f"let 'all' enumerate up to n={MAX_CANON_N} instead of 7")

    e = sub.add_parser("energy", parents=[common], help="spectral summary of graph6 input")
    e.add_argument("graph6", help="graph6 string, or '-' to read lines from stdin")

    for name, helptext in (("check", "run a check suite over graph6 input"),
                           ("corpus", "run a check suite over a corpus and summarise")):
        k = sub.add_parser(name, parents=[common], help=helptext)
        k.add_argument("--suite", choices=checks.SUITES, default="all")
        k.add_argument("--input", required=True, help="graph6 file, or '-' for stdin")
        k.add_argument("--maximal-planar", action="store_true",
                       help="inputs are maximal planar; add the planar bounds")

    kn = sub.add_parser("kneser", parents=[common], help="exact Kneser spectrum and energies")
    kn.add_argument("--n", type=int, required=True)
    kn.add_argument("--k", type=int, required=True)

    f = sub.add_parser("families", parents=[common], help="exact SRG family spectra or growth studies")
    mode = f.add_mutually_exclusive_group(required=True)
    mode.add_argument("--family", choices=("gq", "gq2", "taylor"),
                      help="gq: GQ(q,q^2); gq2: GQ(q^2,q^3); taylor: T_q")
    mode.add_argument("--study", choices=experiments.STUDIES)
    f.add_argument("--param", type=int, help="q for --family")
    f.add_argument("--blowup", type=int, default=1)
    f.add_argument("--grid", default=None, help="comma-separated grid for --study (pairs as q/a or k/j)")

    s = sub.add_parser("sweep", parents=[common], help="G(n, p) square-energy sweep")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--p-grid", default="0:1:0.1", help="start:stop:step or list (default: 0:1:0.1)")
    s.add_argument("--samples", type=int, default=20)
    s.add_argument("--svg", default=None, help="also write an SVG chart")
    s.add_argument("--figure", type=int, choices=(1, 2), default=1,
                   help="SVG style: 1 energies vs p, 2 s- and bounds vs m")

    a = sub.add_parser("average", parents=[common], help="average s+/s- per edge count")
    src = a.add_mutually_exclusive_group(required=True)
    src.add_argument("--n", type=int, help="enumerate all graphs on n <= 7 vertices")
    src.add_argument("--graph6", help="graph6 corpus file")

    r = sub.add_parser("resolve", parents=[common], help="print B, C of A = B - C and irreducibility")
    r.add_argument("graph6")
    return parser


# helpers -------------------------------------------------------------------

def _clean(value):
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else str(value)
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return _clean(float(value))
    return value


def _render(rows: Sequence[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([{k: _clean(v) for k, v in r.items()} for r in rows], indent=1) + "\n"
    if not rows:
        return ""
    return experiments.rows_to_csv(rows)


def _write(text: str, out: Optional[str]) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _ints(params: Sequence[str], count: int, family: str) -> list[int]:
    if len(params) != count:
        raise UsageError(f"'{family}' takes {count} parameter(s), got {len(params)}")
    try:
        return [int(x) for x in params]
    except ValueError as exc:
        raise UsageError(f"bad parameter for '{family}': {exc}") from None


def _read_graphs(source: str) -> Iterable[gr.Graph]:
    if source == "-":
        yield from iter_graph6(sys.stdin)
    else:
        with open(source, "r", encoding="latin-1") as fh:
            yield from iter_graph6(fh)


def _energy_row(g: gr.Graph, tau: Optional[float]) -> dict:
    prof = checks.Profile(g, tau)
    e = prof.energies
    ine = prof.inertia
    return {
        "graph6": prof.graph_id, "n": g.n, "m": g.m, "mu1": prof.mu1,
        "n_plus": ine.n_plus, "n_zero": ine.n_zero, "n_minus": ine.n_minus,
        "s_plus": e.s_plus, "s_minus": e.s_minus, "ratio": e.ratio_max, "spread": e.spread,
    }


def _exact_rows(label: str, spec: exact.RationalSpectrum) -> list[dict]:
    e = exact.exact_square_energies(spec)
    return [{"family": label, "n": spec.n, "eigenvalue": eig, "multiplicity": mult,
             "s_plus": e.s_plus, "s_minus": e.s_minus, "spread": e.spread, "two_m": e.two_m}
            for eig, mult in spec.pairs]


# commands ------------------------------------------------------------------

def cmd_construct(args) -> int:
    fam, ps = args.family, args.params
    if fam == "complete":
        graphs = [gr.make_complete(*_ints(ps, 1, fam))]
    elif fam == "bipartite":
        graphs = [gr.make_complete_bipartite(*_ints(ps, 2, fam))]
    elif fam == "cycle":
        graphs = [gr.make_cycle(*_ints(ps, 1, fam))]
    elif fam == "path":
        graphs = [gr.make_path(*_ints(ps, 1, fam))]
    elif fam == "star":
        graphs = [gr.make_star(*_ints(ps, 1, fam))]
    elif fam == "empty":
        graphs = [gr.make_empty(*_ints(ps, 1, fam))]
    elif fam == "kneser":
        graphs = [gr.make_kneser(*_ints(ps, 2, fam))]
    elif fam == "gnp":
        if len(ps) != 2:
            raise UsageError("'gnp' takes 2 parameters: n p")
        graphs = [sample_gnp(int(ps[0]), float(ps[1]), args.seed)]
    elif fam == "planar":
        graphs = [generate_maximal_planar(*_ints(ps, 1, fam), seed=args.seed, flips=args.flips)]
    else:
        (n,) = _ints(ps, 1, fam)
        graphs = enumerate_nonisomorphic(n, max_n=MAX_CANON_N if args.allow_large else 7)
    lines = []
    for g in graphs:
        if args.blowup != 1:
            g = gr.blowup(g, args.blowup)
        if args.copies != 1:
            g = gr.disjoint_copies(g, args.copies)
        lines.append(encode_graph6(g))
    if args.format == "json":
        _write(json.dumps(lines) + "\n", args.out)
    else:
        _write("".join(x + "\n" for x in lines), args.out)
    return EXIT_OK


def cmd_energy(args) -> int:
    graphs = list(_read_graphs("-")) if args.graph6 == "-" else [parse_graph6(args.graph6)]
    rows = experiments.parallel_map(lambda g: _energy_row(g, None), graphs, args.threads)
    _write(_render(rows, args.format), args.out)
    return EXIT_OK


def _run_checks(args):
    graphs = list(_read_graphs(args.input))
    return experiments.parallel_map(
        lambda g: checks.run_suite(g, args.suite, maximal_planar=args.maximal_planar), graphs, args.threads)


def cmd_check(args) -> int:
    per_graph = _run_checks(args)
    verdicts = [v for vs in per_graph for v in vs]
    _write(_render([v.as_row() for v in verdicts], args.format), args.out)
    return EXIT_PROVEN_FAILURE if checks.proven_failures(verdicts) else EXIT_OK


def cmd_corpus(args) -> int:
    per_graph = _run_checks(args)
    verdicts = [v for vs in per_graph for v in vs]
    _write(_render([v.as_row() for v in verdicts], args.format), args.out)
    names = list(dict.fromkeys(v.check_name for v in verdicts))
    print(f"graphs: {len(per_graph)}", file=sys.stderr)
    for name in names:
        vs = [v for v in verdicts if v.check_name == name]
        app = [v for v in vs if v.applicable]
        bad = [v for v in app if v.holds is False]
        print(f"{name:28s} {vs[0].kind:10s} applicable={len(app):6d} failing={len(bad):6d}", file=sys.stderr)
    failures = checks.proven_failures(verdicts)
    for v in checks.findings(verdicts):
        print(f"finding: {v.check_name} {v.graph_id} lhs={v.lhs!r} rhs={v.rhs!r}", file=sys.stderr)
    for v in failures:
        print(f"PROVEN CHECK FAILED: {v.check_name} {v.graph_id} {v.note}", file=sys.stderr)
    return EXIT_PROVEN_FAILURE if failures else EXIT_OK


def cmd_kneser(args) -> int:
    spec = exact.kneser_spectrum(args.n, args.k)
    _write(_render(_exact_rows(f"K({args.n},{args.k})", spec), args.format), args.out)
    return EXIT_OK


def _grid(study: str, text: Optional[str]):
    if text is None:
        return None
    items = [x.strip() for x in text.split(",") if x.strip()]
    if study in ("taylor-spread", "kneser-symmetry"):
        return [tuple(int(y) for y in x.split("/")) for x in items]
    return [int(x) for x in items]


def cmd_families(args) -> int:
    if args.study:
        rows = experiments.ratio_growth_study(args.study, _grid(args.study, args.grid))
        _write(_render([experiments._as_dict(r) for r in rows], args.format), args.out)
        return EXIT_OK
    if args.param is None:
        raise UsageError("--family needs --param")
    q = args.param
    if args.family == "gq":
        params = exact.gq_spectrum(q, q * q)
    elif args.family == "gq2":
        params = exact.gq_spectrum(q * q, q ** 3)
    else:
        params = exact.taylor_spectrum(q)
    spec = exact.blowup_spectrum(params.spectrum(), args.blowup)
    label = params.family if args.blowup == 1 else f"{params.family}[{args.blowup}]"
    _write(_render(_exact_rows(label, spec), args.format), args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    try:
        grid = experiments.parse_grid(args.p_grid)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad --p-grid: {exc}") from None
    rows = experiments.random_sweep(args.n, grid, args.samples, args.seed, threads=args.threads)
    _write(_render([experiments._as_dict(r) for r in rows], args.format), args.out)
    if args.svg:
        experiments.emit_svg_plot(rows, args.svg, figure=args.figure)
    return EXIT_OK


def cmd_average(args) -> int:
    if args.n is not None:
        table = experiments.average_square_energies(enumerate_nonisomorphic(args.n))
    else:
        table = experiments.average_square_energies(_read_graphs(args.graph6))
    _write(_render([experiments._as_dict(r) for r in table.rows], args.format), args.out)
    print(f"graphs: {table.total}; argmax_m avg s-: {table.argmax_s_minus()}; "
          f"s+ nondecreasing: {table.s_plus_nondecreasing()}; s- unimodal: {table.s_minus_unimodal()}",
          file=sys.stderr)
    return EXIT_OK


def cmd_resolve(args) -> int:
    g = parse_graph6(args.graph6)
    prof = checks.Profile(g)
    pair = spectral_resolution(g, prof.tau, spec=prof.spectrum)
    cut = 1e-8 * prof.spectrum.scale
    rows = []
    for name, mat in (("B", pair.B), ("C", pair.C)):
        for i, row in enumerate(mat):
            rows.append({"matrix": name, "row": i, **{f"c{j}": float(x) for j, x in enumerate(row)}})
    report = {"graph6": prof.graph_id, "connected": prof.connected,
              "b_irreducible": support_irreducible(pair.B, cut),
              "c_irreducible": support_irreducible(pair.C, cut),
              "trace_b2": float(np.sum(pair.B * pair.B)), "trace_c2": float(np.sum(pair.C * pair.C)),
              "s_plus": prof.energies.s_plus, "s_minus": prof.energies.s_minus}
    if args.format == "json":
        text = json.dumps({"B": pair.B.tolist(), "C": pair.C.tolist(),
                           **{k: _clean(v) for k, v in report.items()}}, indent=1) + "\n"
    else:
        text = _render(rows, "csv") + _render([report], "csv")
    _write(text, args.out)
    return EXIT_OK


COMMANDS = {
    "construct": cmd_construct, "energy": cmd_energy, "check": cmd_check, "corpus": cmd_corpus,
    "kneser": cmd_kneser, "families": cmd_families, "sweep": cmd_sweep, "average": cmd_average,
    "resolve": cmd_resolve,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    if args.tol is not None:
        if args.tol < 0:
            print("sqen: --tol must be >= 0", file=sys.stderr)
            return EXIT_USAGE
        os.environ["SQEN_TOL"] = repr(args.tol)
    if args.threads < 1:
        print("sqen: --threads must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"sqen {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Graph6Error as exc:
        print(f"sqen {args.command}: malformed graph6: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError) as exc:
        print(f"sqen {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_exit()
