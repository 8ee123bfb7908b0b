"""Signed rotation systems and the surfaces they describe.

A scheme fattens a multigraph into a surface with boundary: every
vertex becomes a disk whose boundary visits the incident darts in the
given cyclic order, and every edge becomes a band joining its two
darts.  The sign of an edge says whether its band has an odd number of
half-twists (1) or an even number (0), with every vertex disk carrying
the same canonical "up" side.  Under that convention the sign table is
exactly the per-edge switch parity: an edge is switched when its sign
is 1.

Two independent routes compute the number of boundary circles:
``boundary_trace`` walks dart-sides with a successor rule, while
``oracle_boundary_count`` builds the surface as glued polygons and
counts boundary cycles with union-find.  They must always agree; the
second exists purely to check the first.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from . import multigraph as mg
from .errors import BadRotation, MissingSign, NotCyclicPart, ParseError
from .multigraph import Multigraph


@dataclass(frozen=True)
class Scheme:
    """A multigraph with a rotation system and edge signs.

    ``rotation[v]`` is the cyclic dart order at vertex v, stored
    anchored at its smallest dart.  ``signs[e]`` is 0 or 1.
    """

    graph: Multigraph
    rotation: tuple[tuple[int, ...], ...]
    signs: tuple[int, ...]


def _anchor(cycle):
    """Rotate a cyclic sequence so its smallest element comes first."""
    cycle = tuple(cycle)
    if not cycle:
        return cycle
    i = cycle.index(min(cycle))
    return cycle[i:] + cycle[:i]


def make_scheme(g: Multigraph, rotation, signs) -> Scheme:
    """Validated constructor; normalizes every rotation to its anchor."""
    rotation = tuple(tuple(c) for c in rotation)
    if len(rotation) != g.n_vertices:
        raise BadRotation(
            f"rotation lists {len(rotation)} vertices, graph has "
            f"{g.n_vertices}")
    for v in range(g.n_vertices):
        if tuple(sorted(rotation[v])) != g.darts_at(v):
            raise BadRotation(
                f"rotation at vertex {v} must list darts "
                f"{g.darts_at(v)} exactly once, got {rotation[v]}")
    try:
        signs = tuple(int(x) for x in signs)
    except (TypeError, ValueError):
        raise MissingSign(f"signs must be integers, got {signs!r}") from None
    if len(signs) != g.n_edges:
        raise MissingSign(
            f"{len(signs)} signs for {g.n_edges} edges")
    if any(x not in (0, 1) for x in signs):
        raise MissingSign(f"signs must be 0 or 1, got {signs}")
    return Scheme(g, tuple(_anchor(c) for c in rotation), signs)


# --- boundary tracing ---
#
# States are dart-sides (h, s) with s in {0, 1}, encoded as 2h + s.
# Crossing the band of h lands on its partner dart k = h ^ 1 with side
# s' = s xor sign(edge); the walk then turns around the vertex disk of
# k: to the rotation successor of k when s' = 0, to the predecessor
# when s' = 1.  Orbits of this successor come in mirror pairs (the two
# sides of one boundary circle), so b = orbits / 2, plus one circle per
# dartless vertex (a bare disk).


@dataclass(frozen=True)
class BoundaryTrace:
    """Successor orbits, their mirror pairing, and the boundary count."""

    orbits: tuple[tuple[int, ...], ...]
    pairing: tuple[int, ...]
    b: int


def _rotation_tables(s: Scheme):
    nd = s.graph.n_darts
    rot_next = [0] * nd
    rot_prev = [0] * nd
    for cyc in s.rotation:
        n = len(cyc)
        for j, h in enumerate(cyc):
            rot_next[h] = cyc[(j + 1) % n]
            rot_prev[h] = cyc[(j - 1) % n]
    return rot_next, rot_prev


def boundary_trace(s: Scheme) -> BoundaryTrace:
    """Orbits of the dart-side successor rule; see the module notes."""
    g = s.graph
    nd = g.n_darts
    rot_next, rot_prev = _rotation_tables(s)

    def successor(state):
        h, side = state >> 1, state & 1
        k = h ^ 1
        side2 = side ^ s.signs[h >> 1]
        h2 = rot_next[k] if side2 == 0 else rot_prev[k]
        return 2 * h2 + side2

    orbit_of = [-1] * (2 * nd)
    orbits = []
    for start in range(2 * nd):
        if orbit_of[start] >= 0:
            continue
        idx = len(orbits)
        cur = []
        st = start
        while orbit_of[st] < 0:
            orbit_of[st] = idx
            cur.append(st)
            st = successor(st)
        assert st == start, "successor must be a permutation"
        orbits.append(tuple(cur))

    # mirror pairing: R(h, side) = (partner(h), side xor sign xor 1)
    pairing = []
    for idx, orbit in enumerate(orbits):
        images = set()
        for st in orbit:
            h, side = st >> 1, st & 1
            r = 2 * (h ^ 1) + (side ^ s.signs[h >> 1] ^ 1)
            images.add(orbit_of[r])
        assert len(images) == 1, "reversal must map orbits to orbits"
        pairing.append(images.pop())
    for idx, j in enumerate(pairing):
        assert j != idx and pairing[j] == idx, \
            "reversal pairing must be a perfect matching"

    isolated = sum(1 for v in range(g.n_vertices) if not g.darts_at(v))
    b = len(orbits) // 2 + isolated
    return BoundaryTrace(tuple(orbits), tuple(pairing), b)


def is_strip(s: Scheme) -> bool:
    """True when the patch has exactly one boundary circle."""
    if not mg.is_cyclic_part(s.graph):
        raise NotCyclicPart(
            "strip test requires a graph equal to its cyclic part")
    return boundary_trace(s).b == 1


class _DSU:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def oracle_boundary_count(s: Scheme) -> int:
    """Independent boundary count via explicit polygon gluing.

    Builds the patch from scratch: each vertex of degree d is a 2d-gon
    whose boundary alternates band-attachment arcs and free arcs (in
    rotation order), and each edge is a rectangle.  A rectangle end is
    glued to its arc orientation-reversing at the first dart; at the
    second dart it is glued reversing for sign 0 and preserving for
    sign 1 (the half-twist).  Unglued segments then form a disjoint
    union of circles, counted as components of a 2-regular graph on
    glued corner classes.  Shares nothing with boundary_trace.
    """
    g = s.graph
    point_id = {}

    def pid(key):
        if key not in point_id:
            point_id[key] = len(point_id)
        return point_id[key]

    arc_ends = {}
    free_segments = []
    isolated = 0
    for v in range(g.n_vertices):
        cyc = s.rotation[v]
        d = len(cyc)
        if d == 0:
            isolated += 1
            continue
        for i, h in enumerate(cyc):
            a = pid(("corner", v, 2 * i))
            b = pid(("corner", v, 2 * i + 1))
            c = pid(("corner", v, (2 * i + 2) % (2 * d)))
            arc_ends[h] = (a, b)
            free_segments.append((b, c))

    gluings = []
    band_sides = []
    for e in range(g.n_edges):
        p0 = pid(("band", e, 0))
        p1 = pid(("band", e, 1))
        p2 = pid(("band", e, 2))
        p3 = pid(("band", e, 3))
        band_sides.append((p1, p2))
        band_sides.append((p3, p0))
        a0, b0 = arc_ends[2 * e]
        a1, b1 = arc_ends[2 * e + 1]
        gluings.append((p0, b0))
        gluings.append((p1, a0))
        if s.signs[e] == 0:
            gluings.append((p2, b1))
            gluings.append((p3, a1))
        else:
            gluings.append((p2, a1))
            gluings.append((p3, b1))

    dsu = _DSU(len(point_id))
    for (a, b) in gluings:
        dsu.union(a, b)

    segments = free_segments + band_sides
    seg_ends = [(dsu.find(a), dsu.find(b)) for (a, b) in segments]
    incident = defaultdict(list)
    for i, (a, b) in enumerate(seg_ends):
        incident[a].append(i)
        incident[b].append(i)
    for node, inc in incident.items():
        assert len(inc) == 2, "unglued segments must form circles"

    seen = set()
    circles = 0
    for i in range(len(segments)):
        if i in seen:
            continue
        circles += 1
        seen.add(i)
        stack = [i]
        while stack:
            j = stack.pop()
            for node in seg_ends[j]:
                for k in incident[node]:
                    if k not in seen:
                        seen.add(k)
                        stack.append(k)
    return circles + isolated


def companion(s: Scheme) -> tuple:
    """The per-edge switch parities (identical to the stored signs)."""
    return s.signs


def switched_edges(s: Scheme):
    """Edge ids with sign 1."""
    return frozenset(e for e, x in enumerate(s.signs) if x == 1)


def vertex_flip(s: Scheme, v: int) -> Scheme:
    """Turn the disk of v over: reverse its rotation, toggle the signs
    of its non-loop edges.  A loop at v keeps its sign (both of its
    band ends flip, which cancels)."""
    if not (0 <= v < s.graph.n_vertices):
        raise BadRotation(f"no vertex {v}")
    rotation = list(s.rotation)
    rotation[v] = tuple(reversed(rotation[v]))
    signs = list(s.signs)
    for e, (a, b) in enumerate(s.graph.edges):
        if (a == v) != (b == v):
            signs[e] ^= 1
    return make_scheme(s.graph, rotation, signs)


@dataclass(frozen=True)
class SurfaceType:
    """Patch invariants and the closed surface obtained by capping.

    euler_patch = V - E; euler_closed = euler_patch + boundary.  For an
    orientable patch the capped surface has genus
    (2 - euler_closed) / 2, otherwise it has 2 - euler_closed
    crosscaps.
    """

    euler_patch: int
    boundary: int
    orientable: bool
    euler_closed: int
    genus: int | None
    crosscaps: int | None

    @property
    def capped_name(self) -> str:
        if self.orientable:
            if self.genus == 0:
                return "sphere"
            if self.genus == 1:
                return "torus"
            return f"orientable surface of genus {self.genus}"
        if self.crosscaps == 1:
            return "projective plane"
        if self.crosscaps == 2:
            return "Klein bottle"
        return f"non-orientable surface with {self.crosscaps} crosscaps"


def is_orientable(s: Scheme) -> bool:
    """A patch is orientable iff every fundamental cycle has even sign
    sum (equivalently, the signs are vertex-flip-equivalent to all 0)."""
    for cyc in mg.fundamental_cycle_basis(s.graph):
        if sum(s.signs[e] for e in cyc) % 2:
            return False
    return True


def surface_type(s: Scheme) -> SurfaceType:
    g = s.graph
    euler_patch = g.n_vertices - g.n_edges
    b = boundary_trace(s).b
    orient = is_orientable(s)
    euler_closed = euler_patch + b
    if orient:
        genus = (2 - euler_closed) // 2
        return SurfaceType(euler_patch, b, True, euler_closed, genus, None)
    return SurfaceType(euler_patch, b, False, euler_closed, None,
                       2 - euler_closed)


def component_subscheme(s: Scheme, component: mg.Component) -> Scheme:
    """Restrict a scheme to one 2-connected component.

    Vertices and edges are reindexed densely in increasing old-id
    order; each rotation keeps only the darts of surviving edges, in
    the same cyclic order.
    """
    g = s.graph
    vmap = {v: i for i, v in enumerate(sorted(component.vertices))}
    emap = {e: i for i, e in enumerate(sorted(component.edges))}
    edges = [None] * len(emap)
    for e, i in emap.items():
        u, v = g.edges[e]
        edges[i] = (vmap[u], vmap[v])
    sub = mg.build(len(vmap), edges)
    rotation = []
    for v in sorted(component.vertices):
        cyc = [2 * emap[h >> 1] + (h & 1)
               for h in s.rotation[v] if (h >> 1) in emap]
        rotation.append(cyc)
    signs = [s.signs[e] for e in sorted(component.edges)]
    return make_scheme(sub, rotation, signs)


# --- text format ---

def _parse_dart(lineno, token, n_edges):
    parts = token.split(".")
    if len(parts) != 2 or parts[1] not in ("0", "1"):
        raise ParseError(lineno, f"bad dart {token!r}, expected <edge>.0|.1")
    try:
        e = int(parts[0])
    except ValueError:
        raise ParseError(lineno, f"bad dart {token!r}") from None
    if not (0 <= e < n_edges):
        raise ParseError(lineno, f"dart {token!r} references unknown edge")
    return 2 * e + int(parts[1])


def dart_name(h: int) -> str:
    return f"{h >> 1}.{h & 1}"


def parse_scheme(text: str):
    """Parse the scheme text format; returns (name, Scheme).

    Extends the graph format with

        rotation <vertex-id> <dart> <dart> ...
        sign <edge-id> <0|1>

    where darts are written ``<edge-id>.0`` / ``<edge-id>.1``.  Every
    vertex with darts needs a rotation line and every edge a sign line.
    """
    name, g = mg.parse_graph(text)
    rotations = {}
    signs = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "rotation":
            if len(parts) < 2:
                raise ParseError(lineno, "expected: rotation <vertex> <darts>")
            v = mg._int_token(lineno, parts[1])
            if not (0 <= v < g.n_vertices):
                raise ParseError(lineno, f"rotation for unknown vertex {v}")
            if v in rotations:
                raise ParseError(lineno, f"duplicate rotation for vertex {v}")
            rotations[v] = [_parse_dart(lineno, t, g.n_edges)
                            for t in parts[2:]]
        elif parts[0] == "sign":
            if len(parts) != 3:
                raise ParseError(lineno, "expected: sign <edge> <0|1>")
            e = mg._int_token(lineno, parts[1])
            if not (0 <= e < g.n_edges):
                raise ParseError(lineno, f"sign for unknown edge {e}")
            if e in signs:
                raise ParseError(lineno, f"duplicate sign for edge {e}")
            if parts[2] not in ("0", "1"):
                raise ParseError(lineno, "sign value must be 0 or 1")
            signs[e] = int(parts[2])
    if len(signs) != g.n_edges:
        missing = sorted(set(range(g.n_edges)) - set(signs))
        raise MissingSign(f"no sign for edges {missing}")
    rotation = [rotations.get(v, ()) for v in range(g.n_vertices)]
    return name, make_scheme(g, rotation, [signs[e] for e in range(g.n_edges)])


def format_scheme(name: str, s: Scheme) -> str:
    lines = [mg.format_graph(name, s.graph).rstrip("\n")]
    for v in range(s.graph.n_vertices):
        if s.rotation[v]:
            darts = " ".join(dart_name(h) for h in s.rotation[v])
            lines.append(f"rotation {v} {darts}")
    for e, x in enumerate(s.signs):
        lines.append(f"sign {e} {x}")
    return "\n".join(lines) + "\n"
