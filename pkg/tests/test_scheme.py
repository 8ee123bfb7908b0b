import itertools

import pytest

from clstruct import multigraph as mg
from clstruct import scheme as sch
from clstruct.errors import BadRotation, MissingSign, NotCyclicPart, ParseError


def loop_scheme(sign):
    return sch.make_scheme(mg.build(1, [(0, 0)]), [(0, 1)], [sign])


def theta_scheme(signs, rot0=(0, 2, 4), rot1=(1, 3, 5)):
    g = mg.build(2, [(0, 1)] * 3)
    return sch.make_scheme(g, [rot0, rot1], signs)


def all_schemes_on(g):
    rot_choices = []
    for v in range(g.n_vertices):
        darts = g.darts_at(v)
        if len(darts) <= 1:
            rot_choices.append([tuple(darts)])
        else:
            first = darts[0]
            rot_choices.append([(first,) + rest
                                for rest in itertools.permutations(darts[1:])])
    for rots in itertools.product(*rot_choices):
        for signs in itertools.product((0, 1), repeat=g.n_edges):
            yield sch.make_scheme(g, list(rots), list(signs))


def test_make_scheme_validation():
    g = mg.build(1, [(0, 0)])
    with pytest.raises(BadRotation):
        sch.make_scheme(g, [(0, 0)], [0])
    with pytest.raises(BadRotation):
        sch.make_scheme(g, [(0,)], [0])
    with pytest.raises(MissingSign):
        sch.make_scheme(g, [(0, 1)], [])
    with pytest.raises(MissingSign):
        sch.make_scheme(g, [(0, 1)], [2])


def test_rotation_is_anchored():
    g = mg.build(2, [(0, 1)] * 3)
    a = sch.make_scheme(g, [(0, 2, 4), (1, 3, 5)], [0, 0, 0])
    b = sch.make_scheme(g, [(2, 4, 0), (3, 5, 1)], [0, 0, 0])
    assert a == b


def test_point_disk():
    s = sch.make_scheme(mg.build(1, []), [()], [])
    assert sch.boundary_trace(s).b == 1
    assert sch.is_strip(s)


def test_loop_closed_forms():
    assert sch.boundary_trace(loop_scheme(0)).b == 2  # annulus
    assert sch.boundary_trace(loop_scheme(1)).b == 1  # Mobius band


def test_theta_parallel_rotations():
    trace = sch.boundary_trace(theta_scheme([0, 0, 0]))
    assert trace.b == 1
    # reversing one rotation gives the planar embedding: E - V + 2 faces
    trace = sch.boundary_trace(theta_scheme([0, 0, 0], rot1=(1, 5, 3)))
    assert trace.b == 3


def test_trace_orbits_partition_all_states():
    s = theta_scheme([1, 0, 1])
    trace = sch.boundary_trace(s)
    states = sorted(h for orbit in trace.orbits for h in orbit)
    assert states == list(range(4 * s.graph.n_edges))


def test_trace_pairing_is_a_perfect_matching():
    s = theta_scheme([0, 1, 0])
    trace = sch.boundary_trace(s)
    assert len(trace.pairing) == len(trace.orbits)
    for i, j in enumerate(trace.pairing):
        assert j != i  # an orbit is never its own mirror
        assert trace.pairing[j] == i
    assert trace.b * 2 == len(trace.orbits)


@pytest.mark.parametrize("sign,b", [(0, 2), (1, 1)])
def test_oracle_matches_tracer_on_loops(sign, b):
    s = loop_scheme(sign)
    assert sch.oracle_boundary_count(s) == b


def test_oracle_matches_tracer_exhaustively_q2():
    graphs = [mg.build(2, [(0, 0), (0, 1), (1, 1)]),
              mg.build(2, [(0, 1)] * 3)]
    for g in graphs:
        for s in all_schemes_on(g):
            assert sch.boundary_trace(s).b == sch.oracle_boundary_count(s)


def test_oracle_matches_tracer_on_a_rank3_graph():
    g = mg.build(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    count = 0
    for s in all_schemes_on(g):
        assert sch.boundary_trace(s).b == sch.oracle_boundary_count(s)
        count += 1
    assert count == (2 ** 4) * (2 ** 6)


def test_is_strip_requires_cyclic_part():
    g = mg.build(2, [(0, 1)])
    s = sch.make_scheme(g, [(0,), (1,)], [0])
    with pytest.raises(NotCyclicPart):
        sch.is_strip(s)
    assert sch.boundary_trace(s).b == 1  # tracing itself still works


def test_companion_and_switched_edges():
    s = theta_scheme([1, 0, 1])
    assert sch.companion(s) == (1, 0, 1)
    assert sch.switched_edges(s) == frozenset({0, 2})


def test_vertex_flip_reverses_rotation_and_toggles_signs():
    g = mg.build(2, [(0, 0), (0, 1), (1, 1)])
    s = sch.make_scheme(g, [(0, 1, 2), (3, 4, 5)], [0, 0, 0])
    f = sch.vertex_flip(s, 0)
    # loop at 0 keeps its sign, the bridge toggles, the far loop is untouched
    assert f.signs == (0, 1, 0)
    assert f.rotation[1] == s.rotation[1]
    assert sch.vertex_flip(f, 0) == s  # involution


def test_vertex_flip_preserves_boundary_and_orientability():
    for signs in itertools.product((0, 1), repeat=3):
        s = theta_scheme(list(signs))
        b = sch.boundary_trace(s).b
        orient = sch.is_orientable(s)
        for v in (0, 1):
            f = sch.vertex_flip(s, v)
            assert sch.boundary_trace(f).b == b
            assert sch.is_orientable(f) == orient


def test_orientability_from_cycle_signs():
    assert sch.is_orientable(theta_scheme([0, 0, 0]))
    # every 2-edge cycle needs an even sign sum: all three must agree
    assert sch.is_orientable(theta_scheme([1, 1, 1]))
    assert not sch.is_orientable(theta_scheme([1, 1, 0]))
    assert not sch.is_orientable(theta_scheme([1, 0, 0]))
    assert not sch.is_orientable(loop_scheme(1))
    assert sch.is_orientable(loop_scheme(0))


def test_surface_type_point():
    s = sch.make_scheme(mg.build(1, []), [()], [])
    t = sch.surface_type(s)
    assert (t.boundary, t.euler_patch, t.euler_closed) == (1, 1, 2)
    assert t.orientable and t.genus == 0
    assert t.capped_name == "sphere"


def test_surface_type_torus_and_klein():
    bouquet = mg.build(1, [(0, 0), (0, 0)])
    torus = sch.make_scheme(bouquet, [(0, 2, 1, 3)], [0, 0])
    t = sch.surface_type(torus)
    assert (t.boundary, t.orientable, t.genus, t.crosscaps) == (1, True, 1, None)
    assert t.capped_name == "torus"

    klein = sch.make_scheme(bouquet, [(0, 1, 2, 3)], [1, 1])
    t = sch.surface_type(klein)
    assert sch.boundary_trace(klein).b == 1
    assert (t.orientable, t.genus, t.crosscaps) == (False, None, 2)
    assert t.capped_name == "Klein bottle"


def test_surface_type_strip_euler():
    # for a strip the capped surface has euler characteristic 2 - q
    s = theta_scheme([1, 0, 0])
    t = sch.surface_type(s)
    assert sch.boundary_trace(s).b == 1
    assert t.euler_closed == 0
    assert t.crosscaps == 2


def test_component_subscheme_dumbbell():
    g = mg.build(2, [(0, 0), (0, 1), (1, 1)])
    s = sch.make_scheme(g, [(0, 2, 1), (4, 3, 5)], [1, 0, 1])
    decomp = mg.bridges_and_components(g)
    subs = [sch.component_subscheme(s, c) for c in decomp.components]
    assert [t.graph.n_edges for t in subs] == [1, 1]
    assert [t.signs for t in subs] == [(1,), (1,)]
    assert [sch.boundary_trace(t).b for t in subs] == [1, 1]


def test_component_subscheme_whole_graph():
    s = theta_scheme([0, 1, 1])
    comp = mg.bridges_and_components(s.graph).components[0]
    assert sch.component_subscheme(s, comp) == s


def test_format_parse_round_trip():
    s = theta_scheme([1, 0, 1], rot0=(0, 4, 2))
    text = sch.format_scheme("t", s)
    name, parsed = sch.parse_scheme(text)
    assert name == "t"
    assert parsed == s


def test_parse_scheme_errors():
    base = ("graph g\nvertex 0\nedge 0 0 0\n")
    with pytest.raises(MissingSign):
        sch.parse_scheme(base + "rotation 0 0.0 0.1\n")
    with pytest.raises(ParseError, match="line 4"):
        sch.parse_scheme(base + "rotation 0 0.0 0.2\nsign 0 1\n")
    with pytest.raises(ParseError):
        sch.parse_scheme(base + "rotation 0 0.0 0.1\nsign 0 1\nsign 0 1\n")
    with pytest.raises(BadRotation):
        sch.parse_scheme(base + "sign 0 1\n")  # rotation line missing
