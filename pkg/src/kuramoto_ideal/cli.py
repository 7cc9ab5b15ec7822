"""Command-line entry point: analyze, census, glue, sturm and standard."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import census as census_mod
from . import stability
from .catalog import NAMED
from .dynamics import (
    SearchParams,
    SearchResult,
    glue_candidates,
    glue_exotic_state,
    multistart_search,
    residual_norm,
    standard_states,
)
from .graphs import (
    Graph,
    GraphError,
    UnsupportedSizeError,
    canonical_key,
    chordless_cycles,
    connectivity_mu,
    find_closed_klets,
    find_klets,
    format_graph6,
    glue_c5,
    is_sct,
    klet_codim_bound,
    parse_edge_json,
    parse_graph6,
    read_graph6_file,
)
from .stability import Classification
from .sturm import UniPoly, count_roots_in_interval, glue_cubic, isolate_and_refine

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2
STANDARD_CLI_MAX_N = 12


class InputError(Exception):
    pass


# --- input ------------------------------------------------------------------

def load_graph(args) -> Graph:
    given = [x for x in (args.graph6, args.edges, args.named) if x is not None]
    if len(given) != 1:
        raise InputError("give exactly one of --graph6, --edges, --named")
    if args.graph6 is not None:
        return parse_graph6(args.graph6)
    if args.named is not None:
        if args.named not in NAMED:
            raise InputError(f"unknown graph name {args.named!r}; choose from {', '.join(sorted(NAMED))}")
        return NAMED[args.named]
    with open(args.edges, "r", encoding="utf-8") as fh:
        return parse_edge_json(fh.read())


def search_params(args) -> SearchParams:
    return SearchParams(
        restarts=args.restarts,
        seed=args.seed,
        flow_tol=args.flow_tol,
        newton_tol=args.newton_tol,
        dedup_radius=args.dedup_radius,
        winding_seeds=not args.no_winding_seeds,
    )


def graph_label(g: Graph) -> str:
    if g.n <= 8:
        return canonical_key(g).hex()
    return format_graph6(g).encode("ascii").hex()


# --- rendering --------------------------------------------------------------

def angle_row(theta) -> str:
    """Degrees to 4 decimals, vertex 0 dropped (it is always zero)."""
    deg = np.degrees(np.asarray(theta, dtype=float))[1:]
    return "  ".join(f"{v:9.4f}" for v in deg)


def coordinate_row(theta) -> tuple[str, str]:
    theta = np.asarray(theta, dtype=float)[1:]
    xs = "  ".join(f"{v:6.3f}" for v in np.sin(theta))
    ys = "  ".join(f"{v:6.3f}" for v in np.cos(theta))
    return xs, ys


def graph_summary(g: Graph) -> dict:
    klets = find_klets(g)
    closed = find_closed_klets(g)
    return {
        "n": g.n,
        "edges": [list(e) for e in g.edges()],
        "graph6": format_graph6(g),
        "sct": is_sct(g),
        "muC": str(connectivity_mu(g)) if g.n > 1 else None,
        "klets": [list(k.vertices) for k in klets],
        "closed_klets": [list(k.vertices) for k in closed],
        "klet_bound": klet_codim_bound(g),
        "chordless_ge5": chordless_cycles(g, 5),
    }


def _fmt(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def render_analysis_text(summary: dict, std: list, result: SearchResult) -> str:
    out = io.StringIO()
    w = out.write
    w(f"graph6 {summary['graph6']}  n={summary['n']}  edges={len(summary['edges'])}  muC={summary['muC']}\n")
    w(f"edges {summary['edges']}\n")
    w(f"k-lets {summary['klets']}  closed k-lets {summary['closed_klets']}  bound {summary['klet_bound']}\n")
    w(f"chordless cycles >= 5: {summary['chordless_ge5']}\n")
    if std is not None:
        counts = {c: sum(1 for _, k in std if k == c) for c in Classification}
        w(f"standard states: {len(std)}  " + "  ".join(f"{c.value}={counts[c]}" for c in Classification) + "\n")
    w(f"search: restarts={result.restarts} structured={result.structured} "
      f"unconverged={result.unconverged} seed={result.seed}\n")
    w(f"records: {len(result.records)}  stable={len(result.stable)}  exotic={len(result.exotic)}\n")
    stable = result.stable
    if stable:
        w("--angles (degrees, vertex 0 omitted)\n")
        for rec in stable:
            w(f"{angle_row(rec.state)}   {'exotic' if rec.exotic else 'sync'}\n")
    for rec in result.exotic:
        xs, ys = coordinate_row(rec.state)
        w("--coordinates (x = sin, then y = cos; vertex 0 omitted)\n")
        w(f"x {xs}\ny {ys}\n")
    others = [r for r in result.records if r.classification != Classification.LINEARLY_STABLE]
    if others:
        w("--other equilibria\n")
        for rec in others:
            w(f"{angle_row(rec.state)}   {rec.classification.value} kernel={rec.kernel_dim}\n")
    return out.getvalue()


def records_csv(result: SearchResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["classification", "exotic", "kernel_dim", "residual", "energy", "basin_hits", "angles_deg"])
    for rec in result.records:
        writer.writerow([
            rec.classification.value, str(rec.exotic).lower(), rec.kernel_dim,
            f"{rec.residual_norm:.3e}", f"{rec.energy:.10f}", rec.basin_hits,
            " ".join(f"{v:.4f}" for v in rec.angles_deg),
        ])
    return buf.getvalue()


# --- commands ---------------------------------------------------------------

def cmd_analyze(args) -> int:
    g = load_graph(args)
    if not is_sct(g):
        print("warning: graph is not SCT (connected, min degree >= 2); continuing", file=sys.stderr)
    params = search_params(args)
    summary = graph_summary(g)
    std = standard_states(g, params) if g.n <= STANDARD_CLI_MAX_N else None
    result = multistart_search(g, params)
    for rec in result.records:
        if rec.residual_norm > params.newton_tol:
            raise AssertionError("record failed the residual check")
    doc = {
        "graph": summary,
        "standard": None if std is None else [
            {"angles_deg": [float(v) for v in np.degrees(t)], "classification": c.value} for t, c in std
        ],
        "search": result.to_json(),
    }
    if args.format == "json":
        sys.stdout.write(_fmt(doc))
    elif args.format == "csv":
        sys.stdout.write(records_csv(result))
    else:
        sys.stdout.write(render_analysis_text(summary, std, result))
    if args.out:
        os.makedirs(os.path.join(args.out, "graphs"), exist_ok=True)
        with open(os.path.join(args.out, "graphs", f"{graph_label(g)}.json"), "w", encoding="utf-8") as fh:
            fh.write(_fmt(doc))
    return EXIT_OK


def cmd_census(args) -> int:
    if args.graph6 is not None:
        graphs = census_mod.census_graphs(graphs=read_graph6_file(args.graph6))
        sizes = sorted({g.n for g in graphs})
        label = str(sizes[0]) if len(sizes) == 1 else "mixed"
    elif args.n is not None:
        if not 4 <= args.n <= 6:
            raise InputError(f"built-in enumeration covers n = 4..6; supply --graph6 for n = {args.n}")
        graphs = census_mod.census_graphs(args.n)
        label = str(args.n)
    else:
        raise InputError("census needs n or --graph6 FILE")
    params = search_params(args)
    rows, results = census_mod.run_census(graphs, params, workers=args.workers)
    summary = census_mod.summarize(rows)
    if args.format == "json":
        sys.stdout.write(_fmt({
            "rows": [r.to_json() for r in rows],
            "summary": {
                "classCount": summary.class_count,
                "kletBoundCount": summary.klet_bound_count,
                "exoticGraphCount": summary.exotic_graph_count,
            },
        }))
    elif args.format == "csv":
        sys.stdout.write(census_mod.rows_to_csv(rows))
    else:
        for r in rows:
            if r.exotic:
                print(f"exotic {r.canonicalKey}  edges={r.edgeCount}  records={r.exoticRecordCount}  "
                      f"chordless>=5={str(r.chordlessGe5).lower()}")
        print(summary.line())
    if args.out:
        census_mod.write_census(args.out, rows, results, label)
    return EXIT_OK


def cmd_glue(args) -> int:
    if args.d < 1:
        raise InputError("d must be at least 1")
    body = None
    if args.body_edges:
        with open(args.body_edges, "r", encoding="utf-8") as fh:
            body = parse_edge_json(fh.read())
        if body.n != args.d:
            raise InputError(f"body has {body.n} vertices, expected d = {args.d}")
    g = glue_c5(args.d, body)
    cubic = glue_cubic(args.d)
    roots = isolate_and_refine(cubic, -2, 2)
    cands = glue_candidates(args.d, body)
    theta, alpha = glue_exotic_state(args.d, body)
    vals = stability.eigenvalues(stability.weighted_jacobian(g, theta))
    cls = stability.classify(vals)
    res = residual_norm(g, theta)
    if cls != Classification.LINEARLY_STABLE:
        raise AssertionError("glued state is not linearly stable")
    doc = {
        "d": args.d,
        "graph": g.to_json(),
        "cubic": str(cubic).replace("t", "w"),
        "roots": roots,
        "candidates": [
            {"w": c.w, "alpha_deg": math.degrees(c.alpha), "classification": c.classification.value}
            for c in cands
        ],
        "alpha_deg": math.degrees(alpha),
        "alpha_rad": alpha,
        "angles_deg": [float(v) for v in np.degrees(theta)],
        "residual": res,
        "eigenvalues": [float(v) for v in vals],
        "classification": cls.value,
    }
    if args.format == "json":
        sys.stdout.write(_fmt(doc))
        return EXIT_OK
    print(f"glued graph: C5 plus {args.d} body vertices, edges {g.edges()}")
    print(f"cubic {doc['cubic']}  roots in [-2, 2]: " + ", ".join(f"{r:.10f}" for r in roots))
    for c in doc["candidates"]:
        print(f"  w={c['w']:.10f}  alpha={c['alpha_deg']:.4f} deg  {c['classification']}")
    print(f"alpha = {doc['alpha_deg']:.4f} deg = {alpha:.10f} rad")
    print(f"--angles (degrees, vertex 0 omitted)\n{angle_row(theta)}")
    print(f"residual {res:.3e}")
    print("eigenvalues " + " ".join(f"{v:.6g}" for v in vals))
    print(f"classification {cls.value}")
    return EXIT_OK


def cmd_sturm(args) -> int:
    try:
        p = UniPoly.parse(args.coeffs)
        a, b = Fraction(args.a), Fraction(args.b)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(str(exc)) from exc
    if not a < b:
        raise InputError("need a < b")
    if p.degree < 1:
        raise InputError("need a nonconstant polynomial")
    # closed interval [a, b]: the chain counts (a, b], so add a itself if it is a root
    left = p(a) == 0
    count = count_roots_in_interval(p, a, b) + int(left)
    roots = ([float(a)] if left else []) + isolate_and_refine(p, a, b, tol=args.tol)
    if args.format == "json":
        sys.stdout.write(_fmt({"polynomial": str(p), "a": str(a), "b": str(b), "count": count, "roots": roots}))
    else:
        print(f"p(t) = {p}")
        print(f"real roots in [{a}, {b}]: {count}")
        for r in roots:
            print(f"  {r:.12g}")
    return EXIT_OK


def cmd_standard(args) -> int:
    g = load_graph(args)
    if g.n > STANDARD_CLI_MAX_N:
        raise InputError(f"standard-state table supports n <= {STANDARD_CLI_MAX_N}")
    table = standard_states(g, SearchParams())
    stable = sum(1 for _, c in table if c == Classification.LINEARLY_STABLE)
    if args.format == "json":
        sys.stdout.write(_fmt({
            "states": [{"angles_deg": [float(v) for v in np.degrees(t)], "classification": c.value}
                       for t, c in table],
            "count": len(table),
            "stable": stable,
        }))
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["angles_deg", "classification"])
        for t, c in table:
            writer.writerow([" ".join(f"{v:.0f}" for v in np.degrees(t)), c.value])
        sys.stdout.write(buf.getvalue())
    else:
        for t, c in table:
            print(" ".join(f"{v:3.0f}" for v in np.degrees(t)) + f"   {c.value}")
        print(f"standard states: {len(table)}  LinearlyStable: {stable}")
    return EXIT_OK


# --- parser -----------------------------------------------------------------

def _graph_flags(p: argparse.ArgumentParser):
    p.add_argument("--graph6", help="graph in graph6 format")
    p.add_argument("--edges", help="JSON file with {'n': .., 'edges': [[i, j], ...]}")
    p.add_argument("--named", help="built-in graph: " + ", ".join(sorted(NAMED)))


def _search_flags(p: argparse.ArgumentParser):
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--restarts", type=int, default=None, help="random starts per graph (default 100n)")
    p.add_argument("--flow-tol", type=float, default=1e-7)
    p.add_argument("--newton-tol", type=float, default=1e-12)
    p.add_argument("--dedup-radius", type=float, default=1e-4)
    p.add_argument("--no-winding-seeds", action="store_true",
                   help="uniform random starts only (skip the cycle-winding starts)")


def _out_flags(p: argparse.ArgumentParser, formats=("text", "json", "csv")):
    p.add_argument("--format", choices=formats, default="text")
    p.add_argument("--out", help="directory for persisted results")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kuramoto-ideal",
                                     description="Equilibria of the homogeneous Kuramoto model on graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="graph invariants, standard states and multistart equilibria")
    _graph_flags(p)
    _search_flags(p)
    _out_flags(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("census", help="every SCT class on n vertices, or the graphs in a graph6 file")
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("--graph6", help="file with one graph6 string per line")
    p.add_argument("--workers", type=int, default=1)
    _search_flags(p)
    _out_flags(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("glue", help="stable exotic state on C5 glued to a d-vertex body")
    p.add_argument("d", type=int)
    p.add_argument("--body-edges", help="JSON edge list of the body on vertices 0..d-1")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_glue)

    p = sub.add_parser("sturm", help="count and isolate real roots in [a, b]")
    p.add_argument("coeffs", help='ascending coefficients, e.g. "1 -10 0 8"')
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--tol", type=float, default=1e-14)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_sturm)

    p = sub.add_parser("standard", help="classify all 2^(n-1) standard states")
    _graph_flags(p)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.set_defaults(func=cmd_standard)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, GraphError, UnsupportedSizeError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except AssertionError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
