"""Command-line entry point.

Exit codes: 0 success, 1 usage or malformed input, 2 verified negative
(refuted, condition failed, claim failed), 3 resource bound reached.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .certificate import Certificate, verify
from .constructions import GADGETS, PrescribedSpectrum, divisor_tree, prescribe_connected, prescribe_tree, unimodalize
from .errors import CapExceededError, ResourceBoundError, TreespecError
from .graph import Graph, emit_graph6, parse_edge_list, parse_graph6
from .poly import format_poly_csv, parse_poly_csv
from .search import SearchBound, WitnessCache, WitnessSource, default_cache_path, refute_spectrum
from .spectral import EXACT_ORDER_CAP, charpoly, check_necessary, matching_poly

EXIT_OK, EXIT_USAGE, EXIT_NEGATIVE, EXIT_BOUND = 0, 1, 2, 3

log = logging.getLogger("treespec")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _poly_arg(text: str):
    try:
        return parse_poly_csv(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _witness_arg(text: str):
    if "=" not in text:
        raise argparse.ArgumentTypeError("witness must look like COEFFS=GRAPH6")
    csv, g6 = text.split("=", 1)
    try:
        return parse_poly_csv(csv), parse_graph6(g6)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _add_graph_input(p):
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--graph6", help="graph as a graph6 string")
    grp.add_argument("--edges", type=Path, help="file with an edge list ('n m' then 'u v' lines)")


def _add_witness_flags(p):
    p.add_argument("--witness", type=_witness_arg, action="append", default=[], metavar="COEFFS=GRAPH6",
                   help="user-supplied witness graph for a polynomial")
    p.add_argument("--max-order", type=int, default=10, help="largest tree order for exhaustive witness search")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--cache", help="witness cache file (default: $TREESPEC_WITNESS_CACHE)")


def _add_outputs(p):
    p.add_argument("--out", type=Path, help="write the graph6 result here as well as to stdout")
    p.add_argument("--cert", type=Path, help="write the certificate JSON here")


_VALUE_FLAGS = ("--poly", "--witness")


def _glue_negative_values(argv: list[str]) -> list[str]:
    # "--poly -1,0,1" would otherwise read the csv as an option
    out: list[str] = []
    it = iter(range(len(argv)))
    for i in it:
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            next(it, None)
        else:
            out.append(tok)
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="log which witness strategies fire")
    parser = _Parser(prog="treespec", description="Graphs and trees with partially prescribed spectrum.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    for name in ("charpoly", "matchpoly"):
        p = add(name, help=f"{name} of a graph as coefficient csv, lowest degree first")
        _add_graph_input(p)

    p = add("check-necessary", help="necessary conditions for a polynomial to be a graph spectrum")
    p.add_argument("--poly", type=_poly_arg, required=True)
    p.add_argument("--order", type=int, required=True)

    p = add("refute", help="scan all labeled graphs of the given order for this characteristic polynomial")
    p.add_argument("--poly", type=_poly_arg, required=True)
    p.add_argument("--order", type=int, required=True)

    p = add("construct-graph", help="connected graph containing roots of every polynomial")
    p.add_argument("--poly", type=_poly_arg, action="append", required=True)
    p.add_argument("--gadget", choices=GADGETS, default="small")
    _add_witness_flags(p)
    _add_outputs(p)

    p = add("construct-tree", help="tree containing roots of every polynomial")
    p.add_argument("--poly", type=_poly_arg, action="append", required=True)
    p.add_argument("--mode", choices=("auto", "exact", "kernel"), default="auto")
    _add_witness_flags(p)
    _add_outputs(p)

    p = add("divisor-tree", help="tree whose characteristic polynomial the graph's divides")
    _add_graph_input(p)
    _add_witness_flags(p)
    _add_outputs(p)

    p = add("unimodalize", help="g with f*g unimodal, from a tree")
    p.add_argument("--poly", type=_poly_arg, required=True)
    p.add_argument("--search", type=int, help="also scan trees up to this order for a smaller one")
    _add_witness_flags(p)
    _add_outputs(p)

    p = add("verify", help="replay a certificate and re-check its claims")
    p.add_argument("--cert", type=Path, required=True)

    p = add("witness", help="tree having the roots of a polynomial as eigenvalues")
    p.add_argument("--poly", type=_poly_arg, required=True)
    _add_witness_flags(p)
    return parser


def _read_graph(args) -> Graph:
    if args.graph6 is not None:
        return parse_graph6(args.graph6)
    return parse_edge_list(args.edges.read_text())


def _witness_source(args) -> WitnessSource:
    path = args.cache or default_cache_path()
    return WitnessSource(
        user=dict(args.witness),
        cache=WitnessCache(path) if path else None,
        bound=SearchBound(max_order=args.max_order),
        threads=args.threads,
    )


def _emit(args, g: Graph, cert: Certificate) -> None:
    g6 = emit_graph6(g)
    print(g6)
    if args.out:
        args.out.write_text(g6 + "\n")
    if args.cert:
        args.cert.write_text(cert.to_json())


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_negative_values(list(sys.argv[1:] if argv is None else argv)))
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return _dispatch(args)
    except ResourceBoundError as exc:
        print(f"resource bound reached: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except (TreespecError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _dispatch(args) -> int:
    cmd = args.command
    if cmd in ("charpoly", "matchpoly"):
        g = _read_graph(args)
        f = charpoly(g) if cmd == "charpoly" else matching_poly(g)
        print(format_poly_csv(f))
        return EXIT_OK
    if cmd == "check-necessary":
        report = check_necessary(args.poly, args.order)
        for line in report.lines():
            print(line)
        return EXIT_OK if report.passed else EXIT_NEGATIVE
    if cmd == "refute":
        res = refute_spectrum(args.poly, args.order)
        if res.refuted:
            print(f"refuted ({res.scanned} graphs scanned)")
            return EXIT_NEGATIVE
        print(f"realized {emit_graph6(res.graph)}")
        return EXIT_OK
    if cmd == "construct-graph":
        spec = PrescribedSpectrum.from_polys(args.poly)
        g, cert = prescribe_connected(spec, _witness_source(args), args.gadget)
        _emit(args, g, cert)
        return EXIT_OK
    if cmd == "construct-tree":
        spec = PrescribedSpectrum.from_polys(args.poly)
        cap = {"auto": EXACT_ORDER_CAP, "exact": 1 << 30, "kernel": 0}[args.mode]
        g, cert = prescribe_tree(spec, _witness_source(args), exact_cap=cap)
        _emit(args, g, cert)
        return EXIT_OK
    if cmd == "divisor-tree":
        g, cert = divisor_tree(_read_graph(args), _witness_source(args))
        _emit(args, g, cert)
        return EXIT_OK
    if cmd == "unimodalize":
        res = unimodalize(args.poly, args.search, _witness_source(args))
        print(format_poly_csv(res.g))
        _emit(args, res.tree, res.certificate)
        return EXIT_OK
    if cmd == "verify":
        cert = Certificate.from_json(args.cert.read_text())
        report = verify(cert)
        for line in report.lines():
            print(line)
        return EXIT_OK if report.ok else EXIT_NEGATIVE
    if cmd == "witness":
        g, how = _witness_source(args).tree_for(args.poly)
        print(emit_graph6(g))
        log.info("witness found by %s", how)
        return EXIT_OK
    raise CapExceededError(f"unhandled command {cmd}")  # pragma: no cover


def main() -> None:
    sys.exit(run())
