"""Command-line interface.

    clstruct graphs --q 3
    clstruct structures --q 2 --format json
    clstruct trace --input scheme.txt
    clstruct reduce --input scheme.txt --format json
    clstruct expand --input scheme.txt --vertex 0
    clstruct render --input scheme.txt --format svg
    clstruct verify --level default --seed 0

Exit codes: 0 success, 1 usage error, 2 malformed or invalid input,
3 budget or size cap exceeded, 4 verification failure.
"""
from __future__ import annotations

import argparse
import json
import math
import random
import sys

from . import classify
from . import multigraph as mg
from . import reduce as rd
from . import scheme as sch
from .errors import (BadRotation, BudgetExceeded, DegreeTooSmall,
                     Disconnected, EndpointOutOfRange, LoopContraction,
                     MissingSign, NotCyclicPart, ParseError,
                     SwitchedContraction, TooLarge)

_INPUT_ERRORS = (ParseError, Disconnected, EndpointOutOfRange, BadRotation,
                 MissingSign, NotCyclicPart, LoopContraction,
                 SwitchedContraction, DegreeTooSmall, OSError)


class _Parser(argparse.ArgumentParser):
    """argparse variant that exits 1 (not 2) on usage errors."""

    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser():
    p = _Parser(prog="clstruct",
                description="Cut-locus structures on multigraphs: "
                            "catalogs, boundary tracing, reductions.")
    sub = p.add_subparsers(dest="verb", required=True)

    g = sub.add_parser("graphs", help="list cubic multigraphs by cycle rank")
    g.add_argument("--q", type=int, required=True)
    g.add_argument("--format", choices=("text", "json"), default="text")

    s = sub.add_parser("structures",
                       help="classify structures for a rank or a graph file")
    s.add_argument("--q", type=int)
    s.add_argument("--input")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--budget", type=int, default=classify.DEFAULT_BUDGET)

    t = sub.add_parser("trace", help="boundary-trace a scheme file")
    t.add_argument("--input", required=True)
    t.add_argument("--format", choices=("text", "json"), default="text")

    r = sub.add_parser("reduce", help="expand a scheme to cubic form")
    r.add_argument("--input", required=True)
    r.add_argument("--shape", choices=("comb", "balanced"), default="comb")
    r.add_argument("--format", choices=("text", "json"), default="text")

    e = sub.add_parser("expand", help="expand one high-degree vertex")
    e.add_argument("--input", required=True)
    e.add_argument("--vertex", type=int, required=True)
    e.add_argument("--shape", choices=("comb", "balanced"), default="comb")
    e.add_argument("--format", choices=("text", "json"), default="text")

    n = sub.add_parser("render", help="draw a scheme (x = switched edge)")
    n.add_argument("--input", required=True)
    n.add_argument("--format", choices=("text", "json", "dot", "svg"),
                   default="text")

    v = sub.add_parser("verify", help="run the invariant suites")
    v.add_argument("--level", choices=("default", "extended"),
                   default="default")
    v.add_argument("--seed", type=int, default=0)
    return p


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    handler = {
        "graphs": _cmd_graphs,
        "structures": _cmd_structures,
        "trace": _cmd_trace,
        "reduce": _cmd_reduce,
        "expand": _cmd_expand,
        "render": _cmd_render,
        "verify": _cmd_verify,
    }[args.verb]
    try:
        return handler(args)
    except _INPUT_ERRORS as exc:
        print(f"clstruct: error: {exc}", file=sys.stderr)
        return 2
    except (BudgetExceeded, TooLarge) as exc:
        print(f"clstruct: error: {exc}", file=sys.stderr)
        return 3


def run() -> None:
    sys.exit(main())


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


# --- verb handlers ---

def _cmd_graphs(args) -> int:
    graphs = classify.generate_cubic_graphs(args.q)
    if args.format == "json":
        doc = {"q": args.q, "count": len(graphs),
               "graphs": [{"n_vertices": g.n_vertices,
                           "edges": [list(e) for e in g.edges]}
                          for g in graphs]}
        print(_dump(doc), end="")
        return 0
    if not graphs:
        print(f"no cubic multigraphs with q = {args.q} "
              f"(cubic needs V = 2(q-1) > 0)")
        return 0
    print(f"{len(graphs)} cubic multigraphs with q = {args.q}")
    for i, g in enumerate(graphs):
        edges = " ".join(f"({u},{v})" for (u, v) in g.edges)
        print(f"graph {i}: V={g.n_vertices} edges {edges}")
    return 0


def _cmd_structures(args) -> int:
    if (args.q is None) == (args.input is None):
        print("clstruct: error: structures needs exactly one of --q/--input",
              file=sys.stderr)
        return 1
    if args.q is not None:
        cat = classify.catalog(args.q, threads=args.threads,
                               budget=args.budget)
    else:
        _name, g = mg.parse_graph(_read(args.input))
        classes = tuple(classify.equivalence_classes(
            g, threads=args.threads, budget=args.budget))
        cat = classify.Catalog(mg.cycle_rank(g), (g,), (classes,),
                               len(classes))
    out = (classify.catalog_to_json(cat) if args.format == "json"
           else classify.catalog_to_text(cat))
    print(out, end="")
    return 0


def _trace_doc(name, s):
    trace = sch.boundary_trace(s)
    surface = sch.surface_type(s)
    try:
        strip = sch.is_strip(s)
    except NotCyclicPart:
        strip = None
    return {
        "name": name,
        "boundary_circles": trace.b,
        "strip": strip,
        "switched_edges": sorted(sch.switched_edges(s)),
        "orientable": surface.orientable,
        "euler_patch": surface.euler_patch,
        "euler_closed": surface.euler_closed,
        "capped_surface": surface.capped_name,
    }


def _cmd_trace(args) -> int:
    name, s = sch.parse_scheme(_read(args.input))
    doc = _trace_doc(name, s)
    if args.format == "json":
        print(_dump(doc), end="")
        return 0
    switched = " ".join(str(e) for e in doc["switched_edges"]) or "none"
    strip = {True: "yes", False: "no",
             None: "n/a (graph is not its cyclic part)"}[doc["strip"]]
    print(f"scheme: {doc['name']}")
    print(f"boundary circles: {doc['boundary_circles']}")
    print(f"strip: {strip}")
    print(f"switched edges: {switched}")
    print(f"orientable: {'yes' if doc['orientable'] else 'no'}")
    print(f"euler characteristic: patch {doc['euler_patch']}, "
          f"capped {doc['euler_closed']}")
    print(f"capped surface: {doc['capped_surface']}")
    return 0


def _scheme_doc(name, s):
    return {"name": name,
            "n_vertices": s.graph.n_vertices,
            "edges": [list(e) for e in s.graph.edges],
            "rotation": [[sch.dart_name(h) for h in cyc]
                         for cyc in s.rotation],
            "signs": list(s.signs),
            "text": sch.format_scheme(name, s)}


def _step_doc(step):
    return {"kind": step.kind, "vertex": step.vertex, "edge": step.edge,
            "new_vertices": list(step.new_vertices),
            "new_edges": list(step.new_edges),
            "dart_map": [list(p) for p in step.dart_map]}


def _cmd_reduce(args) -> int:
    name, s = sch.parse_scheme(_read(args.input))
    result, steps = rd.reduce_to_cubic(s, tree_shape=args.shape)
    if args.format == "json":
        doc = {"steps": [_step_doc(st) for st in steps],
               "scheme": _scheme_doc(f"{name}-cubic", result)}
        print(_dump(doc), end="")
        return 0
    for i, st in enumerate(steps):
        print(f"# step {i}: expand vertex {st.vertex} "
              f"-> internal edges {list(st.new_edges)}")
    print(sch.format_scheme(f"{name}-cubic", result), end="")
    return 0


def _cmd_expand(args) -> int:
    name, s = sch.parse_scheme(_read(args.input))
    result = rd.expand_vertex(s, args.vertex, tree_shape=args.shape)
    if args.format == "json":
        doc = {"scheme": _scheme_doc(f"{name}-expanded", result)}
        print(_dump(doc), end="")
        return 0
    print(f"# expanded vertex {args.vertex} ({args.shape})")
    print(sch.format_scheme(f"{name}-expanded", result), end="")
    return 0


# --- rendering ---

def _layout(g):
    """Deterministic circular layout, radius 160, canvas 400x400."""
    pos = {}
    n = g.n_vertices
    for v in range(n):
        angle = 2 * math.pi * v / max(n, 1)
        pos[v] = (200 + 160 * math.sin(angle), 200 - 160 * math.cos(angle))
    return pos


def _edge_mark(s, e) -> str:
    return "x" if s.signs[e] == 1 else "="


def _cmd_render(args) -> int:
    name, s = sch.parse_scheme(_read(args.input))
    g = s.graph
    if args.format == "text":
        print(f"render {name}")
        for v in range(g.n_vertices):
            print(f"vertex {v}")
        for e, (u, v) in enumerate(g.edges):
            print(f"edge {e} {u}-{v} {_edge_mark(s, e)}")
        return 0
    if args.format == "json":
        pos = _layout(g)
        doc = {"name": name,
               "layout": {str(v): [round(x, 1), round(y, 1)]
                          for v, (x, y) in pos.items()},
               "edges": [{"id": e, "u": u, "v": v, "mark": _edge_mark(s, e)}
                         for e, (u, v) in enumerate(g.edges)]}
        print(_dump(doc), end="")
        return 0
    if args.format == "dot":
        lines = [f'graph "{name}" {{']
        for v in range(g.n_vertices):
            lines.append(f"  {v};")
        for e, (u, v) in enumerate(g.edges):
            lines.append(f'  {u} -- {v} [label="{_edge_mark(s, e)}"];')
        lines.append("}")
        print("\n".join(lines))
        return 0
    print(_render_svg(name, s), end="")
    return 0


def _render_svg(name, s) -> str:
    g = s.graph
    pos = _layout(g)
    parts = ['<?xml version="1.0" encoding="UTF-8"?>',
             '<svg xmlns="http://www.w3.org/2000/svg" width="400" '
             'height="400" viewBox="0 0 400 400">',
             f'  <title>{name}</title>']
    seen_pair = {}
    for e, (u, v) in enumerate(g.edges):
        mark = _edge_mark(s, e)
        k = seen_pair.get((u, v), 0)
        seen_pair[(u, v)] = k + 1
        x1, y1 = pos[u]
        x2, y2 = pos[v]
        if u == v:
            r = 18 + 14 * k
            cx, cy = x1, y1 - r
            parts.append(f'  <circle cx="{cx:.1f}" cy="{cy:.1f}" '
                         f'r="{r:.1f}" fill="none" stroke="black"/>')
            lx, ly = cx, cy - r - 4
        else:
            mx, my = (x1 + x2) / 2, (y1 + y2) / 2
            dx, dy = x2 - x1, y2 - y1
            norm = math.hypot(dx, dy) or 1.0
            off = 22 * k * (1 if k % 2 else -1) * (1 if k else 0)
            cx, cy = mx - dy / norm * off, my + dx / norm * off
            parts.append(f'  <path d="M {x1:.1f} {y1:.1f} Q {cx:.1f} '
                         f'{cy:.1f} {x2:.1f} {y2:.1f}" fill="none" '
                         f'stroke="black"/>')
            lx, ly = (x1 + 2 * cx + x2) / 4, (y1 + 2 * cy + y2) / 4 - 4
        parts.append(f'  <text x="{lx:.1f}" y="{ly:.1f}" '
                     f'text-anchor="middle" font-size="14">{mark}</text>')
    for v, (x, y) in pos.items():
        parts.append(f'  <circle cx="{x:.1f}" cy="{y:.1f}" r="10" '
                     f'fill="white" stroke="black"/>')
        parts.append(f'  <text x="{x:.1f}" y="{y + 4:.1f}" '
                     f'text-anchor="middle" font-size="11">{v}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# --- randomized inputs (shared by verify and the test suite) ---

def random_multigraph(rng, max_vertices=8, max_extra=6):
    """Seeded connected multigraph: a random spanning tree plus extras."""
    n = rng.randint(1, max_vertices)
    edges = [(rng.randrange(v), v) for v in range(1, n)]
    for _ in range(rng.randint(0, max_extra)):
        u, v = rng.randrange(n), rng.randrange(n)
        edges.append((min(u, v), max(u, v)))
    rng.shuffle(edges)
    return mg.build(n, edges)


def random_scheme(rng, g=None, max_vertices=8, max_extra=6):
    if g is None:
        g = random_multigraph(rng, max_vertices, max_extra)
    rotation = []
    for v in range(g.n_vertices):
        darts = list(g.darts_at(v))
        rng.shuffle(darts)
        rotation.append(darts)
    signs = [rng.randint(0, 1) for _ in range(g.n_edges)]
    return sch.make_scheme(g, rotation, signs)


# --- invariant suites ---

def _all_schemes(qs=(2, 3)):
    for q in qs:
        for g in classify.generate_cubic_graphs(q):
            for s in classify.enumerate_schemes(g):
                yield q, s


def suite_closed_forms():
    point = sch.make_scheme(mg.build(1, []), [()], [])
    if sch.boundary_trace(point).b != 1:
        return "point disk must have one boundary circle"
    loop = mg.build(1, [(0, 0)])
    annulus = sch.make_scheme(loop, [(0, 1)], [0])
    mobius = sch.make_scheme(loop, [(0, 1)], [1])
    if sch.boundary_trace(annulus).b != 2:
        return "untwisted loop must give an annulus (b=2)"
    if sch.boundary_trace(mobius).b != 1:
        return "twisted loop must give a Mobius band (b=1)"
    bouquet = mg.build(1, [(0, 0), (0, 0)])
    torus = sch.make_scheme(bouquet, [(0, 2, 1, 3)], [0, 0])
    ttype = sch.surface_type(torus)
    if (ttype.boundary, ttype.orientable, ttype.genus) != (1, True, 1):
        return "interleaved unswitched two-loop bouquet must cap to a torus"
    theta = mg.build(2, [(0, 1), (0, 1), (0, 1)])
    tscheme = sch.make_scheme(theta, [(0, 2, 4), (1, 3, 5)], [0, 0, 0])
    if sch.boundary_trace(tscheme).b != 1:
        return "unswitched parallel-rotation theta must be a strip"
    return None


def suite_tracer_vs_oracle():
    for _q, s in _all_schemes():
        if sch.boundary_trace(s).b != sch.oracle_boundary_count(s):
            return f"tracer/oracle mismatch on {s.graph.edges} {s.signs}"
    return None


def suite_flip_invariance():
    for _q, s in _all_schemes():
        b = sch.boundary_trace(s).b
        orient = sch.is_orientable(s)
        for v in range(s.graph.n_vertices):
            f = sch.vertex_flip(s, v)
            if sch.boundary_trace(f).b != b:
                return f"flip at {v} changed b on {s.graph.edges} {s.signs}"
            if sch.is_orientable(f) != orient:
                return f"flip at {v} changed orientability"
    return None


def suite_strip_decomposition():
    for _q, s in _all_schemes():
        decomp = mg.bridges_and_components(s.graph)
        subs = [sch.component_subscheme(s, comp)
                for comp in decomp.components]
        bs = [sch.boundary_trace(t).b for t in subs]
        b = sch.boundary_trace(s).b
        if b != 1 + sum(x - 1 for x in bs):
            return (f"boundary count {b} disagrees with component counts "
                    f"{bs} on {s.graph.edges} {s.signs}")
        if (b == 1) != all(x == 1 for x in bs):
            return "strip iff all component subschemes are strips failed"
    return None


def suite_cycle_components_switched():
    for _q, s in _all_schemes():
        if sch.boundary_trace(s).b != 1:
            continue
        decomp = mg.bridges_and_components(s.graph)
        for comp in decomp.components:
            if len(comp.edges) != len(comp.vertices):
                continue  # not a simple-cycle component
            if sum(s.signs[e] for e in comp.edges) % 2 == 0:
                return (f"cycle component {sorted(comp.edges)} of a strip "
                        f"has even sign sum on {s.graph.edges} {s.signs}")
    return None


def suite_odd_rank_non_orientable():
    for _q, s in _all_schemes(qs=(3,)):
        if sch.boundary_trace(s).b == 1 and sch.is_orientable(s):
            return f"orientable strip with odd rank: {s.graph.edges} {s.signs}"
    return None


def roundtrip_once(s, v, tree_shape="comb"):
    """expand_vertex followed by contracting its internal edges must
    restore the scheme exactly (ids included)."""
    expanded = rd.expand_vertex(s, v, tree_shape)
    result = expanded
    for e in range(expanded.graph.n_edges - 1, s.graph.n_edges - 1, -1):
        result = rd.contract_unswitched(result, e)
    return result == s


def suite_round_trips(seed=0, cases=100):
    for q in (2, 3):
        wedge = mg.build(1, [(0, 0)] * q)
        for s in classify.enumerate_schemes(wedge):
            b = sch.boundary_trace(s).b
            for shape in ("comb", "balanced"):
                if not roundtrip_once(s, 0, shape):
                    return f"wedge round trip failed ({shape}, {s.signs})"
                expanded = rd.expand_vertex(s, 0, shape)
                if sch.boundary_trace(expanded).b != b:
                    return f"expansion changed b ({shape}, {s.signs})"
    rng = random.Random(seed)
    done = 0
    while done < cases:
        s = random_scheme(rng)
        highs = [v for v in range(s.graph.n_vertices)
                 if s.graph.degree(v) > 3]
        if not highs:
            continue
        v = rng.choice(highs)
        shape = rng.choice(("comb", "balanced"))
        if not roundtrip_once(s, v, shape):
            return f"random round trip failed (seed case {done})"
        done += 1
    return None


def wedge_classes_reached(q):
    """Wedge classes reachable by contracting cubic strips of rank q.

    Walks every contraction order (memoized) from every cubic strip
    down to single-vertex schemes; returns (reached, total classes).
    """
    wedge = mg.build(1, [(0, 0)] * q)
    classes = classify.equivalence_classes(wedge)
    index_of = {}
    for i, c in enumerate(classes):
        for m in c.members:
            index_of[m] = i
    reached = set()
    seen = set()

    def walk(s):
        key = (s.graph.n_vertices, s.graph.edges, s.rotation, s.signs)
        if key in seen:
            return
        seen.add(key)
        if s.graph.n_vertices == 1:
            reached.add(index_of[s.signs])
            return
        for e, (u, v) in enumerate(s.graph.edges):
            if u != v and s.signs[e] == 0:
                walk(rd.contract_unswitched(s, e))

    for g in classify.generate_cubic_graphs(q):
        for s in classify.enumerate_schemes(g):
            if sch.boundary_trace(s).b == 1:
                walk(s)
    return reached, len(classes)


def suite_wedge_reachability():
    for q in (2, 3):
        reached, total = wedge_classes_reached(q)
        if reached != set(range(total)):
            return (f"q={q}: contractions reach {sorted(reached)} "
                    f"of {total} wedge classes")
    return None


def suite_random_tracer_vs_oracle(seed=0, cases=2000):
    rng = random.Random(seed)
    for i in range(cases):
        s = random_scheme(rng)
        if sch.boundary_trace(s).b != sch.oracle_boundary_count(s):
            return f"mismatch on random case {i}"
    return None


def suite_rank4_spot_checks(seed=0, cases=200):
    rng = random.Random(seed)
    graphs = classify.generate_cubic_graphs(4)
    for i in range(cases):
        g = graphs[rng.randrange(len(graphs))]
        s = random_scheme(rng, g=g)
        if sch.boundary_trace(s).b != sch.oracle_boundary_count(s):
            return f"mismatch on q=4 case {i}"
        v = rng.randrange(g.n_vertices)
        if sch.boundary_trace(sch.vertex_flip(s, v)).b != \
                sch.boundary_trace(s).b:
            return f"flip changed b on q=4 case {i}"
    return None


def run_verify(level="default", seed=0, out=print) -> int:
    """Run the invariant suites; returns a process exit code (0 or 4)."""
    suites = [
        ("closed-form boundary cases", suite_closed_forms),
        ("tracer vs oracle, exhaustive q=2,3", suite_tracer_vs_oracle),
        ("vertex flip invariance", suite_flip_invariance),
        ("strip decomposition over components", suite_strip_decomposition),
        ("switched edge in every cycle component",
         suite_cycle_components_switched),
        ("odd rank forces non-orientable strips",
         suite_odd_rank_non_orientable),
        ("expansion round trips", lambda: suite_round_trips(seed)),
        ("wedge reachability by contraction", suite_wedge_reachability),
    ]
    if level == "extended":
        suites += [
            ("tracer vs oracle, random V<=8",
             lambda: suite_random_tracer_vs_oracle(seed)),
            ("rank-4 spot checks", lambda: suite_rank4_spot_checks(seed)),
        ]
    failures = 0
    for name, fn in suites:
        detail = fn()
        if detail is None:
            out(f"PASS {name}")
        else:
            failures += 1
            out(f"FAIL {name}: {detail}")
    out(f"{len(suites) - failures}/{len(suites)} suites passed")
    return 0 if failures == 0 else 4


def _cmd_verify(args) -> int:
    return run_verify(level=args.level, seed=args.seed)
