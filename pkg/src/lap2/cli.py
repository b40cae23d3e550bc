"""Command-line interface: gen, spectrum, cert, verify, enumerate.

Exit codes: 0 ok; 1 the suite recorded a Fail; 2 bad input (spec, graph,
config); 3 a construction's precondition does not hold; 4 a construction
that should succeed did not (possible falsification).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any

from . import __version__
from .eigvec import (
    EigenCertificate,
    auto_certificate,
    bicyclic_no_pm_eigenvector,
    broken_sun_eigenvector,
    glue_eigenvectors,
    pattern_eigenvector_no_pm,
    tree_pm_eigenvector,
    unicyclic_eigenvector,
)
from .errors import (
    ConfigInvalid,
    Falsification,
    GlueUndefined,
    GraphError,
    InvalidSpec,
    Lap2Error,
    ParseError,
    PreconditionFailed,
    TooLarge,
)
from .exact import char_poly, float_spectrum, integral_multiplicity
from .families import enumerate_broken_suns, enumerate_unicyclic, free_trees, generate, spec_from_dict
from .graph import Graph, classify, is_connected, split_join
from .harness import THEOREMS, SuiteConfig, run_suite
from .io import dumps, graph_to_graph6, parse_graph
from .matching import maximum_matching

EXIT_FAIL, EXIT_INPUT, EXIT_PRECONDITION, EXIT_FALSIFIED = 1, 2, 3, 4
FLOAT_DIGITS = 12


def _read(src: str) -> str:
    """'-' for stdin, an existing file path, or inline JSON / graph6."""
    if src == "-":
        return sys.stdin.read()
    if src.lstrip().startswith("{"):
        return src
    if not os.path.exists(src) and src and all(63 <= ord(c) <= 126 for c in src.strip()):
        return src
    try:
        with open(src) as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {src}: {exc.strerror}") from exc


def _emit(text: str, out: str | None) -> None:
    if out:
        try:
            with open(out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise ConfigInvalid(f"cannot write {out}: {exc.strerror}") from exc
    else:
        sys.stdout.write(text)


def _tsv(rows: list[tuple[str, Any]]) -> str:
    def cell(v):
        return v if isinstance(v, str) else json.dumps(v, sort_keys=True)

    return "".join(f"{k}\t{cell(v)}\n" for k, v in rows)


# -- gen ----------------------------------------------------------------------


def cmd_gen(args) -> int:
    try:
        d = json.loads(_read(args.spec))
    except json.JSONDecodeError as exc:
        raise InvalidSpec(f"spec is not valid JSON: {exc}") from exc
    if not isinstance(d, dict):
        raise InvalidSpec("spec must be a JSON object")
    g = generate(spec_from_dict(d))
    if args.graph6:
        _emit(graph_to_graph6(g) + "\n", args.output)
    else:
        _emit(dumps(g.to_dict()), args.output)
    return 0


# -- spectrum ------------------------------------------------------------------


def spectral_report(g: Graph) -> dict[str, Any]:
    if not is_connected(g):
        kind, girths = "Disconnected", []
    else:
        try:
            cls = classify(g)
            kind, girths = cls.kind, list(cls.girths)
        except GraphError:
            kind, girths = "Other", []
    poly = char_poly(g)
    mult2 = integral_multiplicity(g, 2)
    assert mult2 == poly.root_multiplicity(2), "rank and polynomial multiplicities disagree"
    certs = []
    if mult2 and kind != "Disconnected":
        try:
            certs.append(auto_certificate(g).to_dict())
        except (PreconditionFailed, GlueUndefined, Falsification):
            pass
    return {
        "n": g.n,
        "m": g.m,
        "class": kind,
        "girths": girths,
        "matching": maximum_matching(g).to_dict(),
        "mult2": mult2,
        "xi": list(poly.xi),
        "spectrum_float": [round(w, FLOAT_DIGITS) + 0.0 for w in float_spectrum(g)],
        "certificates": certs,
    }


def cmd_spectrum(args) -> int:
    g = parse_graph(_read(args.graph))
    rep = spectral_report(g)
    if args.format == "tsv":
        _emit(_tsv(sorted(rep.items())), args.output)
    else:
        _emit(dumps(rep), args.output)
    return 0


# -- cert ------------------------------------------------------------------------


def _glue(g: Graph) -> EigenCertificate:
    if "join" not in g.meta:
        raise PreconditionFailed("glue needs a graph produced by a Join spec (join metadata)")
    g1, g2, u, v = split_join(g)
    return glue_eigenvectors(g1, auto_certificate(g1), g2, auto_certificate(g2), u, v)


def _pattern(g: Graph) -> EigenCertificate:
    if "join" in g.meta:
        g1, g2, u, v = split_join(g)
        return bicyclic_no_pm_eigenvector(g1, g2, u, v)
    return pattern_eigenvector_no_pm(g)


CONSTRUCTIONS = {
    "auto": auto_certificate,
    "tree": tree_pm_eigenvector,
    "broken-sun": broken_sun_eigenvector,
    "unicyclic": unicyclic_eigenvector,
    "glue": _glue,
    "pattern": _pattern,
}


def cmd_cert(args) -> int:
    g = parse_graph(_read(args.graph))
    try:
        cert = CONSTRUCTIONS[args.construction](g)
    except GlueUndefined as exc:
        raise PreconditionFailed(str(exc)) from exc
    except GraphError as exc:
        raise PreconditionFailed(f"wrong graph class: {exc}") from exc
    d = cert.to_dict()
    if args.format == "tsv":
        _emit(_tsv(sorted(d.items())), args.output)
    else:
        _emit(dumps(d), args.output)
    return 0


# -- verify ----------------------------------------------------------------------


def _suite_config(args) -> SuiteConfig:
    cfg = SuiteConfig()
    if args.config:
        try:
            cfg = SuiteConfig.from_dict(json.loads(_read(args.config)))
        except json.JSONDecodeError as exc:
            raise ConfigInvalid(f"config is not valid JSON: {exc}") from exc
        except TypeError as exc:
            raise ConfigInvalid(str(exc)) from exc
    if args.theorem:
        bad = [t for t in args.theorem if t not in THEOREMS]
        if bad:
            raise ConfigInvalid(f"unknown theorem ids {bad}; choose from {', '.join(THEOREMS)}")
        cfg.theorems = tuple(args.theorem)
    if args.nmax is not None:
        cfg = cfg.capped(args.nmax)
    if args.full_results:
        cfg.full_results = True
    cfg.validate()
    return cfg


def cmd_verify(args) -> int:
    cfg = _suite_config(args)
    report = run_suite(cfg, out_path=args.output)
    elapsed = report.pop("_elapsed_s")
    width = max([len("theorem")] + [len(t) for t in report["summary"]])
    lines = [f"{'theorem':<{width}}  {'pass':>7} {'fail':>7} {'inapplicable':>12}"]
    for t, c in report["summary"].items():
        lines.append(f"{t:<{width}}  {c['pass']:>7} {c['fail']:>7} {c['inapplicable']:>12}")
    fc = report["float_crosscheck"]
    lines.append(f"float cross-check: {fc['graphs']} graphs, {len(fc['mismatches'])} mismatches")
    sys.stdout.write("\n".join(lines) + "\n")
    sys.stderr.write(f"suite finished in {elapsed:.1f}s; report: {args.output or '(not written)'}\n")
    return EXIT_FAIL if report["exit_status"] else 0


# -- enumerate ----------------------------------------------------------------------


def cmd_enumerate(args) -> int:
    if args.family == "broken-suns":
        if args.g is None:
            raise ConfigInvalid("broken-suns needs --g")
        graphs = list(enumerate_broken_suns(args.g, args.filter))
    elif args.family == "unicyclic":
        if args.g is None or args.nmax is None:
            raise ConfigInvalid("unicyclic needs --g and --nmax")
        if args.nmax > 16:
            raise TooLarge("unicyclic enumeration is capped at n <= 16")
        graphs = list(enumerate_unicyclic(args.nmax, args.g))
    else:
        if args.nmax is None:
            raise ConfigInvalid("trees needs --nmax")
        if args.nmax > 14:
            raise TooLarge("tree enumeration is capped at n <= 14")
        graphs = [t for n in range(1, args.nmax + 1) for t in free_trees(n)]
    if args.format == "tsv":
        text = "".join(
            f"{graph_to_graph6(g)}\t{g.n}\t{g.m}\t{json.dumps(g.meta.get('family', {}), sort_keys=True)}\n"
            for g in graphs
        )
    elif args.graph6:
        text = "".join(graph_to_graph6(g) + "\n" for g in graphs)
    else:
        text = dumps([g.to_dict() for g in graphs])
    _emit(text, args.output)
    return 0


# -- entry point ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lap2", description="Exact Laplacian eigenvalue-2 toolkit.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt=True):
        sp.add_argument("-o", "--output", help="write here instead of stdout")
        if fmt:
            sp.add_argument("--format", choices=("json", "tsv"), default="json")

    sp = sub.add_parser("gen", help="build a graph from a family spec")
    sp.add_argument("spec", help="spec JSON: inline, file path, or - for stdin")
    sp.add_argument("--graph6", action="store_true", help="emit graph6 instead of JSON")
    common(sp, fmt=False)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("spectrum", help="exact spectral report for a graph")
    sp.add_argument("graph", help="graph JSON or graph6: inline, file path, or -")
    common(sp)
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("cert", help="build an eigenvalue-2 certificate")
    sp.add_argument("graph")
    sp.add_argument("--construction", choices=sorted(CONSTRUCTIONS), default="auto")
    common(sp)
    sp.set_defaults(func=cmd_cert)

    sp = sub.add_parser("verify", help="run the theorem suite")
    sp.add_argument("--suite", choices=("default",), default="default")
    sp.add_argument("--theorem", action="append", help="restrict to a theorem id (repeatable)")
    sp.add_argument("--nmax", type=int, help="lower every vertex cap to this value")
    sp.add_argument("--config", help="SuiteConfig JSON (inline, file, or -)")
    sp.add_argument("--full-results", action="store_true", help="keep every result in the report")
    sp.add_argument("-o", "--output", default="lap2_report.json", help="report path")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("enumerate", help="list graphs of a family")
    sp.add_argument("family", choices=("broken-suns", "unicyclic", "trees"))
    sp.add_argument("--g", type=int, help="girth")
    sp.add_argument("--nmax", type=int)
    sp.add_argument("--filter", choices=("any", "perfect_matching", "no_perfect_matching"), default="any")
    sp.add_argument("--graph6", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_enumerate)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InvalidSpec, ParseError, ConfigInvalid, TooLarge) as exc:
        code, msg = EXIT_INPUT, str(exc)
    except PreconditionFailed as exc:
        code, msg = EXIT_PRECONDITION, f"precondition failed: {exc}"
    except Falsification as exc:
        code, msg = EXIT_FALSIFIED, f"FALSIFICATION ({type(exc).__name__}): {exc}"
    except (GraphError, Lap2Error) as exc:
        code, msg = EXIT_INPUT, str(exc)
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0
    sys.stderr.write(f"lap2: {msg}\n")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
