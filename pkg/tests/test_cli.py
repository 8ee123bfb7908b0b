import json
import xml.etree.ElementTree as ET

import pytest

from clstruct import cli

THETA = """\
graph theta
vertex 0
vertex 1
edge 0 0 1
edge 1 0 1
edge 2 0 1
rotation 0 0.0 1.0 2.0
rotation 1 0.1 1.1 2.1
sign 0 1
sign 1 0
sign 2 0
"""

WEDGE3 = """\
graph wedge3
vertex 0
edge 0 0 0
edge 1 0 0
edge 2 0 0
rotation 0 0.0 1.0 2.0 0.1 1.1 2.1
sign 0 1
sign 1 1
sign 2 1
"""


@pytest.fixture
def theta_file(tmp_path):
    p = tmp_path / "theta.txt"
    p.write_text(THETA)
    return str(p)


@pytest.fixture
def wedge_file(tmp_path):
    p = tmp_path / "wedge3.txt"
    p.write_text(WEDGE3)
    return str(p)


def test_graphs_text(capsys):
    assert cli.main(["graphs", "--q", "2"]) == 0
    out = capsys.readouterr().out
    assert "2 cubic multigraphs" in out
    assert "(0,0) (0,1) (1,1)" in out


def test_graphs_empty_rank(capsys):
    assert cli.main(["graphs", "--q", "1"]) == 0
    assert "no cubic multigraphs" in capsys.readouterr().out


def test_graphs_json(capsys):
    assert cli.main(["graphs", "--q", "3", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["count"] == 5
    assert len(doc["graphs"]) == 5


def test_structures_by_rank(capsys):
    assert cli.main(["structures", "--q", "2", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["totals"] == 3


def test_structures_from_file(tmp_path, capsys):
    p = tmp_path / "g.txt"
    p.write_text("graph g\nvertex 0\nvertex 1\nedge 0 0 1\n"
                 "edge 1 0 1\nedge 2 0 1\n")
    assert cli.main(["structures", "--input", str(p)]) == 0
    out = capsys.readouterr().out
    assert "2 structure classes" in out


def test_structures_needs_exactly_one_source(capsys):
    assert cli.main(["structures"]) == 1
    assert cli.main(["structures", "--q", "2", "--input", "x"]) == 1


def test_trace_text(theta_file, capsys):
    assert cli.main(["trace", "--input", theta_file]) == 0
    out = capsys.readouterr().out
    assert "boundary circles: 1" in out
    assert "strip: yes" in out
    assert "switched edges: 0" in out
    assert "capped surface: Klein bottle" in out


def test_trace_json(theta_file, capsys):
    assert cli.main(["trace", "--input", theta_file, "--format",
                     "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["boundary_circles"] == 1
    assert doc["strip"] is True
    assert doc["orientable"] is False
    assert doc["euler_closed"] == 0


def test_reduce_text_round_trips_through_parser(wedge_file, tmp_path,
                                                capsys):
    assert cli.main(["reduce", "--input", wedge_file]) == 0
    out = capsys.readouterr().out
    assert "# step 0: expand vertex 0" in out
    reparsed = tmp_path / "cubic.txt"
    reparsed.write_text(out)
    assert cli.main(["trace", "--input", str(reparsed)]) == 0
    assert "boundary circles: 3" in capsys.readouterr().out


def test_reduce_json(wedge_file, capsys):
    assert cli.main(["reduce", "--input", wedge_file, "--format",
                     "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["steps"]) == 1
    assert doc["steps"][0]["kind"] == "expand"
    assert doc["scheme"]["n_vertices"] == 4


def test_expand_single_vertex(wedge_file, capsys):
    assert cli.main(["expand", "--input", wedge_file, "--vertex", "0",
                     "--shape", "balanced"]) == 0
    out = capsys.readouterr().out
    assert "# expanded vertex 0 (balanced)" in out
    assert out.count("vertex") >= 4


def test_render_text(theta_file, capsys):
    assert cli.main(["render", "--input", theta_file]) == 0
    out = capsys.readouterr().out
    assert "edge 0 0-1 x" in out
    assert "edge 1 0-1 =" in out


def test_render_dot(theta_file, capsys):
    assert cli.main(["render", "--input", theta_file, "--format",
                     "dot"]) == 0
    out = capsys.readouterr().out
    assert out.startswith('graph "theta"')
    assert '0 -- 1 [label="x"];' in out


def test_render_svg_parses_as_xml(theta_file, capsys):
    assert cli.main(["render", "--input", theta_file, "--format",
                     "svg"]) == 0
    out = capsys.readouterr().out
    root = ET.fromstring(out)
    assert root.tag.endswith("svg")
    texts = [t.text for t in root.iter()
             if t.tag.endswith("text") and t.text in ("x", "=")]
    assert texts.count("x") == 1 and texts.count("=") == 2


def test_render_json_layout_is_deterministic(theta_file, capsys):
    assert cli.main(["render", "--input", theta_file, "--format",
                     "json"]) == 0
    first = capsys.readouterr().out
    assert cli.main(["render", "--input", theta_file, "--format",
                     "json"]) == 0
    assert capsys.readouterr().out == first
    doc = json.loads(first)
    assert set(doc["layout"]) == {"0", "1"}
    assert [e["mark"] for e in doc["edges"]] == ["x", "=", "="]


def test_usage_errors_exit_1(capsys):
    assert cli.main([]) == 1
    assert cli.main(["bogus"]) == 1
    assert cli.main(["graphs"]) == 1
    assert cli.main(["graphs", "--q", "two"]) == 1


def test_bad_input_exits_2(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("graph g\nvertex 0\nedge 0 0 5\n")
    assert cli.main(["trace", "--input", str(p)]) == 2
    assert "line 3" in capsys.readouterr().err
    assert cli.main(["trace", "--input", str(tmp_path / "missing.txt")]) == 2


def test_caps_and_budgets_exit_3(capsys):
    assert cli.main(["graphs", "--q", "7"]) == 3
    assert cli.main(["structures", "--q", "3", "--budget", "10"]) == 3


def test_verify_default_passes(capsys):
    assert cli.main(["verify", "--seed", "1"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out
    assert out.count("PASS") == 8


def test_verify_failure_exits_4(monkeypatch, capsys):
    for name in ("suite_tracer_vs_oracle", "suite_flip_invariance",
                 "suite_strip_decomposition",
                 "suite_cycle_components_switched",
                 "suite_odd_rank_non_orientable", "suite_round_trips",
                 "suite_wedge_reachability"):
        monkeypatch.setattr(cli, name, lambda *a, **k: None)
    monkeypatch.setattr(cli, "suite_closed_forms",
                        lambda: "simulated defect")
    assert cli.main(["verify"]) == 4
    out = capsys.readouterr().out
    assert "FAIL closed-form boundary cases: simulated defect" in out
    assert "7/8 suites passed" in out
