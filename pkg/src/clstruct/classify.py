"""Exhaustive search: cubic graphs, realizable signs, structure classes.

The searchable objects are schemes (rotation system + signs).  A sign
table is *realizable* on a graph when some rotation turns it into a
strip (one boundary circle).  Realizable sign tables are then grouped
into structure classes: two tables are equivalent when, after an
automorphism of the graph, they agree on every 2-connected component
up to complementing whole components, with bridge values disregarded.

Enumeration conventions: rotations are generated anchored (each cyclic
order starts at its smallest dart), giving (deg(v)-1)! options per
vertex, and are deliberately not quotiented by reflection — the
reflected rotations are genuinely different schemes and may carry the
realizability witnesses.
"""
from __future__ import annotations

import itertools
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import multigraph as mg
from . import scheme as sch
from .errors import BudgetExceeded, NotCyclicPart, TooLarge
from .multigraph import Multigraph
from .scheme import Scheme

#: Default cap on (rotations x signs) enumeration size.
DEFAULT_BUDGET = 10_000_000


def scheme_count(g: Multigraph) -> int:
    """Number of schemes on g: prod_v (deg(v)-1)! times 2^E."""
    count = 1 << g.n_edges
    for d in g.degrees():
        count *= math.factorial(max(d - 1, 0))
    return count


def _rotations(g: Multigraph):
    """All anchored rotation systems, in deterministic order."""
    per_vertex = []
    for v in range(g.n_vertices):
        darts = g.darts_at(v)
        if not darts:
            per_vertex.append([()])
            continue
        anchor, rest = darts[0], darts[1:]
        per_vertex.append([(anchor,) + p
                           for p in itertools.permutations(rest)])
    return itertools.product(*per_vertex)


def enumerate_schemes(g: Multigraph, budget: int | None = DEFAULT_BUDGET):
    """Yield every scheme on g exactly once (rotations x sign tables)."""
    total = scheme_count(g)
    if budget is not None and total > budget:
        raise BudgetExceeded(
            f"{total} schemes on this graph exceed the budget {budget}")
    for rotation in _rotations(g):
        for signs in itertools.product((0, 1), repeat=g.n_edges):
            yield Scheme(g, rotation, signs)


def generate_cubic_graphs(q: int, max_q: int = 5) -> tuple:
    """All connected cubic multigraphs with cycle rank q, up to
    isomorphism, in canonical order.  Cubic and connected force
    V = 2(q-1) and E = 3(q-1), so q = 1 gives an empty result."""
    if q > max_q:
        raise TooLarge(f"q={q} exceeds the cap {max_q}")
    n = 2 * (q - 1)
    if n <= 0:
        return ()
    seen = set()
    for edges in _labeled_cubic(n):
        g = Multigraph(n, edges)
        if not mg._connected(g):
            continue
        seen.add(mg.canonical_form(g))
    return tuple(mg.build(vcount, list(es))
                 for (vcount, es) in sorted(seen))


def _labeled_cubic(n: int):
    """All labeled 3-regular multigraphs on n vertices (backtracking)."""
    residual = [3] * n
    edges = []
    results = []

    def fill(v):
        if v == n:
            results.append(tuple(edges))
            return
        for loops in range(residual[v] // 2, -1, -1):
            residual[v] -= 2 * loops
            edges.extend([(v, v)] * loops)
            spread(v, v + 1)
            residual[v] += 2 * loops
            del edges[len(edges) - loops:]

    def spread(v, w):
        """Distribute residual[v] over cross edges to vertices >= w."""
        if residual[v] == 0:
            fill(v + 1)
            return
        if w == n:
            return
        top = min(residual[v], residual[w])
        for k in range(top, -1, -1):
            residual[v] -= k
            residual[w] -= k
            edges.extend([(v, w)] * k)
            spread(v, w + 1)
            residual[v] += k
            residual[w] += k
            del edges[len(edges) - k:]

    fill(0)
    return results


def realizable_signs(g: Multigraph, threads: int = 1,
                     budget: int | None = DEFAULT_BUDGET):
    """All sign tables for which some rotation yields a strip.

    Works per 2-connected component and recombines: a scheme is a strip
    exactly when each component subscheme is one, so a sign table is
    realizable iff its restriction to every component is realizable on
    that component, with bridge signs free.  Returns a sorted tuple.
    """
    if not mg.is_cyclic_part(g):
        raise NotCyclicPart("realizable_signs needs the cyclic part")
    decomp = mg.bridges_and_components(g)
    per_component = []
    for comp in decomp.components:
        comp_edges = sorted(comp.edges)
        sub = _component_graph(g, comp)
        realizable = _component_realizable(sub, threads, budget)
        per_component.append((comp_edges, realizable))

    out = []
    bridge_list = list(decomp.bridges)
    comp_choices = [r for (_es, r) in per_component]
    for picks in itertools.product(*comp_choices):
        base = [0] * g.n_edges
        for (comp_edges, _r), local in zip(per_component, picks):
            for pos, e in enumerate(comp_edges):
                base[e] = local[pos]
        for bvals in itertools.product((0, 1), repeat=len(bridge_list)):
            lam = list(base)
            for e, x in zip(bridge_list, bvals):
                lam[e] = x
            out.append(tuple(lam))
    return tuple(sorted(out))


def _component_graph(g: Multigraph, comp: mg.Component) -> Multigraph:
    vmap = {v: i for i, v in enumerate(sorted(comp.vertices))}
    edges = [(vmap[g.edges[e][0]], vmap[g.edges[e][1]])
             for e in sorted(comp.edges)]
    return mg.build(len(vmap), edges)


def _component_realizable(sub: Multigraph, threads: int,
                          budget: int | None):
    total = scheme_count(sub)
    if budget is not None and total > budget:
        raise BudgetExceeded(
            f"{total} schemes on a component exceed the budget {budget}")
    n_signs = 1 << sub.n_edges
    sign_list = list(itertools.product((0, 1), repeat=sub.n_edges))

    def scan(chunk):
        found = []
        for idx in chunk:
            signs = sign_list[idx]
            for rotation in _rotations(sub):
                if sch.boundary_trace(Scheme(sub, rotation, signs)).b == 1:
                    found.append(signs)
                    break
        return found

    if threads <= 1 or n_signs < 2 * threads:
        return scan(range(n_signs))
    chunks = [range(i, n_signs, threads) for i in range(threads)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(scan, chunks))
    return sorted(x for part in parts for x in part)


def realizable_signs_exhaustive(g: Multigraph,
                                budget: int | None = DEFAULT_BUDGET):
    """Whole-graph realizable search, no decomposition; cross-check
    route for realizable_signs."""
    if not mg.is_cyclic_part(g):
        raise NotCyclicPart("realizable_signs needs the cyclic part")
    found = set()
    for s in enumerate_schemes(g, budget):
        if s.signs not in found and sch.boundary_trace(s).b == 1:
            found.add(s.signs)
    return tuple(sorted(found))


@dataclass(frozen=True)
class StructureClass:
    """One equivalence class of realizable sign tables on a graph.

    members are sorted sign tuples; witnesses[i] is a rotation turning
    members[i] into a strip; surface describes the capped surface of
    the representative (shared by all members on the cubic catalogs).
    """

    graph: Multigraph
    representative: tuple
    members: tuple
    witnesses: tuple
    surface: sch.SurfaceType


def equivalence_classes(g: Multigraph, threads: int = 1,
                        budget: int | None = DEFAULT_BUDGET):
    """Group realizable sign tables into structure classes.

    lam ~ lam' iff some automorphism of g followed by complementing a
    subset of 2-connected components maps one to the other, ignoring
    bridge coordinates.  Classes come sorted by representative
    (lexicographically least member).
    """
    realizable = realizable_signs(g, threads=threads, budget=budget)
    decomp = mg.bridges_and_components(g)
    comp_edge_lists = [sorted(c.edges) for c in decomp.components]
    bridges = decomp.bridges
    eperms = sorted({ep for (_vp, ep) in mg.automorphisms(g)})
    E = g.n_edges

    def class_key(lam):
        best = None
        for ep in eperms:
            base = [lam[ep[e]] for e in range(E)]
            for flips in itertools.product((0, 1),
                                           repeat=len(comp_edge_lists)):
                cur = list(base)
                for ci, flip in enumerate(flips):
                    if flip:
                        for e in comp_edge_lists[ci]:
                            cur[e] ^= 1
                for e in bridges:
                    cur[e] = 0
                key = tuple(cur)
                if best is None or key < best:
                    best = key
        return best

    grouped = {}
    for lam in realizable:
        grouped.setdefault(class_key(lam), []).append(lam)

    classes = []
    for key in grouped:
        members = tuple(grouped[key])
        witnesses = tuple(_witness_rotation(g, lam) for lam in members)
        rep_scheme = Scheme(g, witnesses[0], members[0])
        classes.append(StructureClass(
            graph=g,
            representative=members[0],
            members=members,
            witnesses=witnesses,
            surface=sch.surface_type(rep_scheme)))
    classes.sort(key=lambda c: c.representative)
    return tuple(classes)


def _witness_rotation(g: Multigraph, signs):
    for rotation in _rotations(g):
        if sch.boundary_trace(Scheme(g, rotation, signs)).b == 1:
            return rotation
    raise AssertionError(f"no strip rotation for realizable signs {signs}")


@dataclass(frozen=True)
class Catalog:
    """Full classification for one cycle rank."""

    q: int
    graphs: tuple
    classes: tuple  # classes[i] lists the StructureClasses of graphs[i]
    total: int


def catalog(q: int, threads: int = 1, max_q: int = 5,
            budget: int | None = DEFAULT_BUDGET) -> Catalog:
    graphs = generate_cubic_graphs(q, max_q=max_q)
    per_graph = tuple(tuple(equivalence_classes(g, threads=threads,
                                                budget=budget))
                      for g in graphs)
    total = sum(len(cs) for cs in per_graph)
    return Catalog(q, tuple(graphs), per_graph, total)


def _signs_str(signs) -> str:
    return "".join(str(x) for x in signs)


def catalog_to_json(cat: Catalog) -> str:
    """Deterministic JSON rendering (byte-identical across runs)."""
    graphs = []
    for g, classes in zip(cat.graphs, cat.classes):
        entries = []
        for c in classes:
            entries.append({
                "representative_signs": list(c.representative),
                "members": [list(m) for m in c.members],
                "witness_rotation": [[sch.dart_name(h) for h in cyc]
                                     for cyc in c.witnesses[0]],
                "surface": {
                    "orientable": c.surface.orientable,
                    "euler_closed": c.surface.euler_closed,
                    "genus_or_crosscaps": (c.surface.genus
                                           if c.surface.orientable
                                           else c.surface.crosscaps),
                },
            })
        graphs.append({
            "canonical_edges": [list(e) for e in g.edges],
            "classes": entries,
        })
    doc = {"q": cat.q, "totals": cat.total, "graphs": graphs}
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def catalog_to_text(cat: Catalog) -> str:
    lines = [f"q = {cat.q}: {len(cat.graphs)} cubic graphs, "
             f"{cat.total} structure classes"]
    for gi, (g, classes) in enumerate(zip(cat.graphs, cat.classes)):
        edges = " ".join(f"({u},{v})" for (u, v) in g.edges)
        lines.append(f"graph {gi}: V={g.n_vertices} edges {edges}")
        for ci, c in enumerate(classes):
            members = " ".join(_signs_str(m) for m in c.members)
            lines.append(
                f"  class {ci}: representative {_signs_str(c.representative)}"
                f"; members {members}; {c.surface.capped_name}")
    return "\n".join(lines) + "\n"
