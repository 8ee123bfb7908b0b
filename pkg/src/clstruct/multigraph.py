"""Finite connected multigraphs with loops.

Vertices are dense integers ``0..V-1``.  Edge ``e`` with endpoints
``(u, v)`` owns two darts (edge-ends): dart ``2e`` at ``u`` and dart
``2e + 1`` at ``v``.  A loop owns two distinct darts at the same vertex
and therefore contributes 2 to the degree.

Everything here targets small instances (the brute-force isomorphism
machinery caps at about ten vertices); none of it is meant to scale.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass

from .errors import Disconnected, EndpointOutOfRange, ParseError, TooLarge


@dataclass(frozen=True)
class Multigraph:
    """Immutable multigraph: a vertex count plus a tuple of endpoint pairs."""

    n_vertices: int
    edges: tuple[tuple[int, int], ...]

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_darts(self) -> int:
        return 2 * len(self.edges)

    def endpoints(self, e: int) -> tuple[int, int]:
        return self.edges[e]

    def is_loop(self, e: int) -> bool:
        u, v = self.edges[e]
        return u == v

    def dart_vertex(self, h: int) -> int:
        """The vertex holding dart h (dart 2e sits at u, dart 2e+1 at v)."""
        return self.edges[h >> 1][h & 1]

    def degree(self, v: int) -> int:
        return sum((u == v) + (w == v) for (u, w) in self.edges)

    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n_vertices
        for (u, w) in self.edges:
            deg[u] += 1
            deg[w] += 1
        return tuple(deg)

    def darts_at(self, v: int) -> tuple[int, ...]:
        """All darts at v, in increasing dart id order."""
        out = []
        for e, (u, w) in enumerate(self.edges):
            if u == v:
                out.append(2 * e)
            if w == v:
                out.append(2 * e + 1)
        return tuple(out)

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Per-vertex list of (neighbour, edge id); loops appear twice."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n_vertices)]
        for e, (u, w) in enumerate(self.edges):
            adj[u].append((w, e))
            adj[w].append((u, e))
        return adj


def build(n_vertices: int, edges) -> Multigraph:
    """Validated constructor: endpoints in range, graph connected."""
    if n_vertices < 1:
        raise EndpointOutOfRange("a graph needs at least one vertex")
    edges = tuple((int(u), int(v)) for (u, v) in edges)
    for e, (u, v) in enumerate(edges):
        if not (0 <= u < n_vertices and 0 <= v < n_vertices):
            raise EndpointOutOfRange(
                f"edge {e} endpoints {(u, v)} outside 0..{n_vertices - 1}")
    g = Multigraph(n_vertices, edges)
    if not _connected(g):
        raise Disconnected(f"graph on {n_vertices} vertices is not connected")
    return g


def _connected(g: Multigraph) -> bool:
    if g.n_vertices == 1:
        return True
    adj = g.adjacency()
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for (y, _e) in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == g.n_vertices


def cycle_rank(g: Multigraph) -> int:
    """Dimension of the binary cycle space: E - V + 1 for connected graphs."""
    return g.n_edges - g.n_vertices + 1


@dataclass(frozen=True)
class Component:
    """A 2-connected component: a bridge-free edge set with its vertices."""

    edges: frozenset
    vertices: frozenset


@dataclass(frozen=True)
class Decomposition:
    """Bridges plus 2-connected components; together they partition E."""

    bridges: tuple[int, ...]
    components: tuple[Component, ...]


def bridges_and_components(g: Multigraph) -> Decomposition:
    """Bridges and the non-vertex components left after deleting them.

    A bridge is an edge whose removal disconnects the graph; loops are
    never bridges.  Each 2-connected component is reported as its edge
    set together with the vertices those edges touch.  Quadratic
    remove-and-test bridge detection: fine at this scale.
    """
    adj = g.adjacency()

    def still_connected_without(skip: int) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for (y, e) in adj[x]:
                if e != skip and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == g.n_vertices

    bridges = tuple(e for e, (u, v) in enumerate(g.edges)
                    if u != v and not still_connected_without(e))
    bridge_set = set(bridges)

    # vertex classes of G minus bridges
    comp_of = {}
    for start in range(g.n_vertices):
        if start in comp_of:
            continue
        comp_of[start] = start
        stack = [start]
        while stack:
            x = stack.pop()
            for (y, e) in adj[x]:
                if e not in bridge_set and y not in comp_of:
                    comp_of[y] = start
                    stack.append(y)

    grouped = defaultdict(set)
    for e, (u, v) in enumerate(g.edges):
        if e not in bridge_set:
            grouped[comp_of[u]].add(e)
    components = []
    for root in sorted(grouped, key=lambda r: min(grouped[r])):
        es = frozenset(grouped[root])
        vs = frozenset(v for e in es for v in g.edges[e])
        components.append(Component(es, vs))
    return Decomposition(bridges, tuple(components))


@dataclass
class CyclicPart:
    """Cyclic part of a graph with the surviving-id mappings.

    vertex_map / edge_map send old ids to ids in the reduced graph;
    deleted vertices and edges are absent.
    """

    graph: Multigraph
    vertex_map: dict
    edge_map: dict


def cyclic_part(g: Multigraph) -> CyclicPart:
    """Iteratively strip degree-1 vertices (with their edges).

    If nothing with an edge survives, the result is the single-vertex
    graph placed at the smallest surviving vertex id (or vertex 0 of the
    original graph when everything was stripped away).
    """
    alive_v = set(range(g.n_vertices))
    alive_e = set(range(g.n_edges))
    while True:
        deg = defaultdict(int)
        for e in alive_e:
            u, v = g.edges[e]
            deg[u] += 1
            deg[v] += 1
        leaves = {v for v in alive_v if deg[v] == 1}
        if not leaves:
            break
        alive_v -= leaves
        alive_e = {e for e in alive_e
                   if not (set(g.edges[e]) & leaves)}
    # drop isolated leftovers (possible when stripping ate a whole path)
    if alive_e:
        used = {v for e in alive_e for v in g.edges[e]}
        alive_v &= used
    else:
        keep = min(alive_v) if alive_v else 0
        alive_v = {keep}
    vmap = {v: i for i, v in enumerate(sorted(alive_v))}
    emap = {e: i for i, e in enumerate(sorted(alive_e))}
    new_edges = [None] * len(emap)
    for e, i in emap.items():
        u, v = g.edges[e]
        new_edges[i] = (vmap[u], vmap[v])
    return CyclicPart(build(len(vmap), new_edges), vmap, emap)


def is_cyclic_part(g: Multigraph) -> bool:
    """True when g equals its own cyclic part (no degree-1 vertices)."""
    return g.n_vertices == 1 or all(d >= 2 for d in g.degrees())


def simple_cycles(g: Multigraph, max_edges: int = 12) -> tuple:
    """Edge sets of all simple cycles.

    A loop is a length-1 cycle and a pair of parallel edges a length-2
    cycle.  Enumerates edge subsets (connected, every touched vertex of
    degree exactly 2), so the edge count is capped.
    """
    E = g.n_edges
    if E > max_edges:
        raise TooLarge(f"{E} edges exceeds the simple_cycles cap {max_edges}")
    out = []
    for mask in range(1, 1 << E):
        chosen = [e for e in range(E) if (mask >> e) & 1]
        deg = defaultdict(int)
        for e in chosen:
            u, v = g.edges[e]
            deg[u] += 1
            deg[v] += 1
        if any(d != 2 for d in deg.values()):
            continue
        # connectivity over the chosen subgraph
        verts = set(deg)
        adj = defaultdict(list)
        for e in chosen:
            u, v = g.edges[e]
            adj[u].append(v)
            adj[v].append(u)
        start = next(iter(verts))
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if seen == verts:
            out.append(frozenset(chosen))
    out.sort(key=lambda s: (len(s), sorted(s)))
    return tuple(out)


def fundamental_cycle_basis(g: Multigraph) -> tuple:
    """One fundamental cycle per non-tree edge of a deterministic tree.

    The spanning tree takes edges greedily by lowest id (loops are never
    tree edges).  Returns edge sets ordered by their non-tree edge id;
    the list length equals cycle_rank(g).
    """
    parent = list(range(g.n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree = []
    extra = []
    for e, (u, v) in enumerate(g.edges):
        ru, rv = find(u), find(v)
        if u != v and ru != rv:
            parent[ru] = rv
            tree.append(e)
        else:
            extra.append(e)

    tree_adj = defaultdict(list)
    for e in tree:
        u, v = g.edges[e]
        tree_adj[u].append((v, e))
        tree_adj[v].append((u, e))

    def tree_path(a, b):
        """Edge ids along the unique tree path from a to b."""
        prev = {a: (None, None)}
        stack = [a]
        while stack:
            x = stack.pop()
            if x == b:
                break
            for (y, e) in tree_adj[x]:
                if y not in prev:
                    prev[y] = (x, e)
                    stack.append(y)
        path = []
        x = b
        while prev[x][0] is not None:
            x, e = prev[x]
            path.append(e)
        return path

    basis = []
    for e in extra:
        u, v = g.edges[e]
        if u == v:
            basis.append(frozenset([e]))
        else:
            basis.append(frozenset([e] + tree_path(u, v)))
    return tuple(basis)


# --- isomorphism machinery (brute force, degree-class restricted) ---

def _degree_blocks(g: Multigraph):
    """Vertices grouped by degree; block order by ascending degree."""
    by_deg = defaultdict(list)
    for v, d in enumerate(g.degrees()):
        by_deg[d].append(v)
    return [by_deg[d] for d in sorted(by_deg)]


def _relabelings(g: Multigraph):
    """All degree-preserving relabelings onto 0..V-1 (canonical targets).

    New ids are handed out block by block in ascending degree order, so
    any two isomorphic graphs range over the same relabeled edge lists.
    """
    blocks = _degree_blocks(g)
    starts = []
    s = 0
    for b in blocks:
        starts.append(s)
        s += len(b)
    for perms in itertools.product(*(itertools.permutations(b) for b in blocks)):
        phi = [0] * g.n_vertices
        for block_perm, start in zip(perms, starts):
            for offset, v in enumerate(block_perm):
                phi[v] = start + offset
        yield phi


def canonical_form(g: Multigraph, max_vertices: int = 10):
    """Canonical label: (V, lexicographically least relabeled edge list).

    Equal exactly for isomorphic graphs.  Brute force over vertex
    relabelings within degree classes; capped by max_vertices.
    """
    if g.n_vertices > max_vertices:
        raise TooLarge(
            f"{g.n_vertices} vertices exceeds the canonical_form cap "
            f"{max_vertices}")
    best = None
    for phi in _relabelings(g):
        relab = sorted(tuple(sorted((phi[u], phi[v]))) for (u, v) in g.edges)
        key = tuple(relab)
        if best is None or key < best:
            best = key
    return (g.n_vertices, best if best is not None else ())


def isomorphic(g: Multigraph, h: Multigraph, max_vertices: int = 10) -> bool:
    """Graph isomorphism for small instances via canonical forms."""
    if g.n_vertices != h.n_vertices or g.n_edges != h.n_edges:
        return False
    if sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_form(g, max_vertices) == canonical_form(h, max_vertices)


def automorphisms(g: Multigraph, max_vertices: int = 10):
    """All automorphisms as (vertex permutation, edge permutation) pairs.

    A vertex permutation that preserves the edge multiset can be paired
    with every edge bijection that respects it: parallel edges may be
    permuted freely within their endpoint class.  The result always
    contains the identity pair and is closed under composition.
    """
    if g.n_vertices > max_vertices:
        raise TooLarge(
            f"{g.n_vertices} vertices exceeds the automorphisms cap "
            f"{max_vertices}")
    by_pair = defaultdict(list)
    for e, (u, v) in enumerate(g.edges):
        by_pair[tuple(sorted((u, v)))].append(e)

    out = []
    for phi in _vertex_bijections(g):
        image = defaultdict(list)
        for e, (u, v) in enumerate(g.edges):
            image[tuple(sorted((phi[u], phi[v])))].append(e)
        if {p: len(es) for p, es in image.items()} != \
                {p: len(es) for p, es in by_pair.items()}:
            continue
        pairs = sorted(by_pair)
        # per endpoint class, all ways to assign sources onto targets
        options = []
        for p in pairs:
            sources = image[p]
            targets = by_pair[p]
            options.append([tuple(zip(sources, pi))
                            for pi in itertools.permutations(targets)])
        for choice in itertools.product(*options):
            eperm = [None] * g.n_edges
            for group in choice:
                for (src, dst) in group:
                    eperm[src] = dst
            out.append((tuple(phi), tuple(eperm)))
    return tuple(out)


def _vertex_bijections(g: Multigraph):
    """Degree-preserving vertex permutations of g onto itself."""
    blocks = _degree_blocks(g)
    for perms in itertools.product(*(itertools.permutations(b) for b in blocks)):
        phi = [0] * g.n_vertices
        for block, perm in zip(blocks, perms):
            for v, w in zip(block, perm):
                phi[v] = w
        yield phi


# --- text format ---

def parse_graph(text: str):
    """Parse the graph text format; returns (name, Multigraph).

    Format, one item per line ('#' starts a comment):

        graph <name>
        vertex <id>
        edge <id> <u> <v>

    Vertex and edge ids must be dense (0..V-1 / 0..E-1), each declared
    once; endpoints must reference declared vertices.
    """
    name = None
    vertices = {}
    edge_lines = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "graph":
            if name is not None:
                raise ParseError(lineno, "duplicate graph line")
            if len(parts) != 2:
                raise ParseError(lineno, "expected: graph <name>")
            name = parts[1]
        elif kind == "vertex":
            if len(parts) != 2:
                raise ParseError(lineno, "expected: vertex <id>")
            vid = _int_token(lineno, parts[1])
            if vid in vertices:
                raise ParseError(lineno, f"duplicate vertex id {vid}")
            vertices[vid] = lineno
        elif kind == "edge":
            if len(parts) != 4:
                raise ParseError(lineno, "expected: edge <id> <u> <v>")
            eid, u, v = (_int_token(lineno, t) for t in parts[1:])
            if eid in edge_lines:
                raise ParseError(lineno, f"duplicate edge id {eid}")
            edge_lines[eid] = (lineno, u, v)
        elif kind in ("rotation", "sign"):
            continue  # scheme-format lines; ignored by the graph parser
        else:
            raise ParseError(lineno, f"unknown directive {kind!r}")
    if name is None:
        raise ParseError(1, "missing graph line")
    if not vertices:
        raise ParseError(1, "graph declares no vertices")
    if sorted(vertices) != list(range(len(vertices))):
        raise ParseError(min(vertices.values()),
                         "vertex ids must be dense 0..V-1")
    if sorted(edge_lines) != list(range(len(edge_lines))):
        bad = min(line for line, _u, _v in edge_lines.values())
        raise ParseError(bad, "edge ids must be dense 0..E-1")
    edges = []
    for eid in range(len(edge_lines)):
        lineno, u, v = edge_lines[eid]
        if u not in vertices or v not in vertices:
            raise ParseError(lineno, f"edge {eid} references unknown vertex")
        edges.append((u, v))
    return name, build(len(vertices), edges)


def _int_token(lineno, token):
    try:
        return int(token)
    except ValueError:
        raise ParseError(lineno, f"expected an integer, got {token!r}") from None


def format_graph(name: str, g: Multigraph) -> str:
    lines = [f"graph {name}"]
    lines += [f"vertex {v}" for v in range(g.n_vertices)]
    lines += [f"edge {e} {u} {v}" for e, (u, v) in enumerate(g.edges)]
    return "\n".join(lines) + "\n"
