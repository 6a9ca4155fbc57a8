import pytest

from gnnshatter import io as gio
from gnnshatter.constructions import build_pl_graph, build_sine_gnn, build_sine_graph
from gnnshatter.bits import BitVector
from gnnshatter.graph import Graph


def test_graph_roundtrip(tmp_path):
    g = Graph.from_edges(4, [(0, 1), (2, 1), (3, 0)], labels=[0, 2, 0, 1])
    path = tmp_path / "g.graph"
    gio.write_graph(path, g)
    text = path.read_text()
    assert text.splitlines()[0] == "4 3"
    assert "label 1 2" in text
    h = gio.read_graph(path)
    assert h.edge_list().tolist() == g.edge_list().tolist()
    assert h.labels.tolist() == [0, 2, 0, 1]


def test_family_graph_roundtrip():
    g = build_pl_graph(3, 2).graph
    assert gio.parse_graph(gio.format_graph(g)).indices.tolist() == g.indices.tolist()


@pytest.mark.parametrize("text,line", [
    ("", None),
    ("3\n", 1),
    ("3 2\n0 1\n", 2),
    ("3 1\n0 5\n", 2),
    ("3 1\n0 x\n", 2),
    ("3 1\n0 1\nlabel 9 1\n", 3),
    ("3 1\n1 1\n", 2),
])
def test_graph_parse_errors(text, line):
    with pytest.raises(gio.ParseError) as err:
        gio.parse_graph(text, "f")
    assert err.value.line == line


def test_histogram_roundtrip(tmp_path):
    h = build_sine_graph(2, 1).graph
    path = tmp_path / "h.hist"
    gio.write_histogram(path, h)
    assert path.read_text() == "3 1\n63 65\n"
    assert gio.read_histogram(path) == h
    with pytest.raises(gio.ParseError):
        gio.parse_histogram("3 1 4\n")
    with pytest.raises(gio.ParseError):
        gio.parse_histogram("")


def test_spec_file(tmp_path):
    spec = build_sine_gnn(BitVector((0, 1)))
    path = tmp_path / "s.json"
    gio.write_spec(path, spec)
    assert gio.read_spec(path) == spec
    path.write_text("{not json")
    with pytest.raises(gio.ParseError):
        gio.read_spec(path)
