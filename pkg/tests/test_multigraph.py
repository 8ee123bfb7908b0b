import pytest

from clstruct import multigraph as mg
from clstruct.errors import (Disconnected, EndpointOutOfRange, ParseError,
                             TooLarge)


def theta():
    return mg.build(2, [(0, 1), (0, 1), (0, 1)])


def dumbbell():
    return mg.build(2, [(0, 0), (0, 1), (1, 1)])


def k4():
    return mg.build(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def test_build_basics():
    g = dumbbell()
    assert g.n_edges == 3
    assert g.n_darts == 6
    assert g.degrees() == (3, 3)
    assert g.is_loop(0) and not g.is_loop(1)
    assert g.endpoints(1) == (0, 1)
    # dart h belongs to edge h//2, at the h%2 end
    assert g.dart_vertex(2) == 0 and g.dart_vertex(3) == 1
    assert g.darts_at(0) == (0, 1, 2)
    assert g.darts_at(1) == (3, 4, 5)


def test_build_point_and_loop():
    point = mg.build(1, [])
    assert point.n_edges == 0
    assert point.degrees() == (0,)
    loop = mg.build(1, [(0, 0)])
    assert loop.degree(0) == 2  # a loop counts twice


def test_build_rejects_bad_input():
    with pytest.raises(EndpointOutOfRange):
        mg.build(2, [(0, 2)])
    with pytest.raises(EndpointOutOfRange):
        mg.build(0, [])
    with pytest.raises(Disconnected):
        mg.build(2, [(0, 0), (1, 1)])
    with pytest.raises(Disconnected):
        mg.build(3, [(0, 1)])


def test_cycle_rank():
    assert mg.cycle_rank(theta()) == 2
    assert mg.cycle_rank(dumbbell()) == 2
    assert mg.cycle_rank(k4()) == 3
    assert mg.cycle_rank(mg.build(1, [])) == 0
    assert mg.cycle_rank(mg.build(3, [(0, 1), (1, 2)])) == 0


def test_bridges_theta():
    d = mg.bridges_and_components(theta())
    assert d.bridges == ()
    assert len(d.components) == 1
    assert d.components[0].edges == frozenset({0, 1, 2})


def test_bridges_dumbbell():
    d = mg.bridges_and_components(dumbbell())
    assert d.bridges == (1,)
    assert [sorted(c.edges) for c in d.components] == [[0], [2]]
    assert [sorted(c.vertices) for c in d.components] == [[0], [1]]


def test_bridges_path():
    g = mg.build(3, [(0, 1), (1, 2)])
    d = mg.bridges_and_components(g)
    assert d.bridges == (0, 1)
    assert d.components == ()


def test_loops_are_never_bridges():
    g = mg.build(1, [(0, 0)])
    assert mg.bridges_and_components(g).bridges == ()


def test_cyclic_part_strips_trees():
    # path with a pendant triangle: leaves vanish, triangle survives
    g = mg.build(5, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 3)])
    part = mg.cyclic_part(g)
    assert part.graph.n_vertices == 2
    assert part.graph.n_edges == 2
    assert part.vertex_map == {2: 0, 3: 1}
    assert part.edge_map == {2: 0, 4: 1}


def test_cyclic_part_of_tree_is_point():
    g = mg.build(4, [(0, 1), (1, 2), (1, 3)])
    part = mg.cyclic_part(g)
    assert part.graph.n_vertices == 1
    assert part.graph.n_edges == 0


def test_cyclic_part_idempotent():
    g = dumbbell()
    part = mg.cyclic_part(g)
    assert part.graph == g
    assert mg.is_cyclic_part(g)
    assert not mg.is_cyclic_part(mg.build(2, [(0, 1)]))
    assert mg.is_cyclic_part(mg.build(1, []))


def test_simple_cycles_counts():
    assert len(mg.simple_cycles(theta())) == 3
    assert len(mg.simple_cycles(dumbbell())) == 2
    assert len(mg.simple_cycles(k4())) == 7
    loop = mg.build(1, [(0, 0)])
    assert mg.simple_cycles(loop) == (frozenset({0}),)


def test_simple_cycles_skip_bridges():
    for cyc in mg.simple_cycles(dumbbell()):
        assert 1 not in cyc


def test_simple_cycles_cap():
    g = mg.build(2, [(0, 1)] * 13)
    with pytest.raises(TooLarge):
        mg.simple_cycles(g)
    mg.simple_cycles(g, max_edges=13)  # raised cap is honoured


def test_fundamental_cycle_basis():
    basis = mg.fundamental_cycle_basis(theta())
    assert len(basis) == 2
    for cyc in basis:
        assert len(cyc) == 2
    basis = mg.fundamental_cycle_basis(dumbbell())
    assert sorted(map(sorted, basis)) == [[0], [2]]


def test_automorphism_counts():
    # pairs (vertex permutation, edge permutation)
    assert len(mg.automorphisms(theta())) == 12
    assert len(mg.automorphisms(k4())) == 24
    # every edge image is forced once the vertex swap is chosen
    assert len(mg.automorphisms(dumbbell())) == 2


def test_automorphisms_form_a_group():
    auts = mg.automorphisms(dumbbell())
    vperms = {vp for vp, _ in auts}
    assert (0, 1) in vperms
    eperms = {ep for _, ep in auts}
    # closure under composition
    for a in eperms:
        for b in eperms:
            assert tuple(a[b[i]] for i in range(3)) in eperms


def test_isomorphism():
    assert mg.isomorphic(theta(), mg.build(2, [(1, 0), (0, 1), (1, 0)]))
    assert not mg.isomorphic(theta(), dumbbell())
    relabeled = mg.build(2, [(1, 1), (0, 1), (0, 0)])
    assert mg.canonical_form(dumbbell()) == mg.canonical_form(relabeled)
    assert mg.canonical_form(theta()) != mg.canonical_form(dumbbell())


def test_parse_and_format_round_trip():
    g = dumbbell()
    text = mg.format_graph("dumbbell", g)
    name, parsed = mg.parse_graph(text)
    assert name == "dumbbell"
    assert parsed == g


def test_parse_reports_line_numbers():
    text = "graph g\nvertex 0\nedge 0 0 1\n"
    with pytest.raises(ParseError) as err:
        mg.parse_graph(text)
    assert err.value.line == 3
    with pytest.raises(ParseError, match="line 1"):
        mg.parse_graph("vertex 0\n")


def test_parse_requires_dense_ids():
    with pytest.raises(ParseError):
        mg.parse_graph("graph g\nvertex 0\nvertex 2\n")
    with pytest.raises(ParseError):
        mg.parse_graph("graph g\nvertex 0\nedge 1 0 0\n")
