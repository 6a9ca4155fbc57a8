import pytest

from gnnshatter.bits import all_bitvectors
from gnnshatter.constructions import build_pl_gnn, build_pl_graph, build_sine_gnn, build_sine_graph
from gnnshatter.gnn import classify
from gnnshatter.numerics import SQRT3_HALF
from gnnshatter.shatter import brute_force_shatter, lemma_report, verify_family_shatter, verify_lemma


def test_pl_b3():
    r = verify_family_shatter("pl", 3)
    assert r.shattered and r.dichotomies == 8
    assert r.matrix[5] == [1, 0, 1]


def test_sine_b3_margins():
    r = verify_family_shatter("sine", 3)
    assert r.shattered and r.st_exact_zero
    assert r.min_positive >= SQRT3_HALF - 1e-12
    assert r.max_negative <= 0.5 + 1e-12


def test_sine_b1():
    r = verify_family_shatter("sine", 1)
    assert r.matrix == [[0], [1]]


def test_explicit_equals_implicit_report():
    for fam in ("pl", "sine"):
        a = verify_family_shatter(fam, 2).to_dict()
        b = verify_family_shatter(fam, 2, "explicit").to_dict()
        a.pop("representation"), b.pop("representation")
        assert a == b


def test_brute_force_trivial():
    assert brute_force_shatter([lambda g: 0], ["g"]) == (False, 1)
    fs = [lambda g: 0, lambda g: 1]
    assert brute_force_shatter(fs, ["g1", "g2"]) == (False, 2)
    with pytest.raises(ValueError):
        brute_force_shatter([], ["g"])


@pytest.mark.parametrize("family", ["pl", "sine"])
@pytest.mark.parametrize("b", [1, 2, 3, 4])
def test_brute_force_agrees(family, b):
    if family == "pl":
        graphs = [build_pl_graph(b, j, explicit=False).graph for j in range(1, b + 1)]
        specs = [build_pl_gnn(x) for x in all_bitvectors(b)]
    else:
        graphs = [build_sine_graph(b, j).graph for j in range(1, b + 1)]
        specs = [build_sine_gnn(x) for x in all_bitvectors(b)]
    classifiers = [lambda g, s=s: classify(s, g) for s in specs]
    shattered, count = brute_force_shatter(classifiers, graphs)
    report = verify_family_shatter(family, b)
    assert shattered == report.shattered and count == report.dichotomies == 2**b
    # dropping a classifier must break shattering
    assert brute_force_shatter(classifiers[1:], graphs) == (False, 2**b - 1)


def test_counterexample_reported(monkeypatch):
    from gnnshatter import shatter

    real = shatter.build_gnn
    monkeypatch.setattr(shatter, "build_gnn", lambda fam, x, depth=1: real(fam, x.__class__((1,) * x.b), depth))
    r = shatter.verify_family_shatter("pl", 2)
    assert not r.shattered
    assert r.counterexample == {"x": "00", "j": 1, "expected": 0, "got": 1,
                                "readout": {"exact": "1/1", "float": 1.0}}


def test_lemma():
    assert verify_lemma(1, 3)
    rep = lemma_report(6, 9)
    assert rep["passed"] and rep["evaluations"] == 64 * 9
    with pytest.raises(ValueError):
        verify_lemma(3, 2)


def test_reports_deterministic():
    a = verify_family_shatter("sine", 3).to_json()
    b = verify_family_shatter("sine", 3, threads=4).to_json()
    assert a == b
    assert "shattered" in verify_family_shatter("pl", 2).to_table()
