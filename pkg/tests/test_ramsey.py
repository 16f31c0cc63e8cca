import json
import random
from itertools import combinations
from math import comb

import pytest

from conftest import oracle_contains
from loosepath import ramsey
from loosepath.constructions import RocketDefinition, star
from loosepath.errors import FormatError, IncompleteSearchError, InvalidInputError
from loosepath.graph import ThreeGraph, triple_rank, triples
from loosepath.patterns import P
from loosepath.ramsey import (
    Coloring,
    MonoPCertificate,
    classify_clique_star,
    classify_comet,
    classify_star,
    find_mono_P,
    reduction_trace,
    run_trials,
    search_lower_bound,
    verify_certificate,
)
from loosepath.turan import Budget


def star_like(n=16, r=10):
    """Triples coloured by their smallest vertex, capped at r-1: colour i < r-1 is a star at i."""
    return Coloring(n, r, tuple(min(t[0], r - 1) for t in triples(n)))


def test_coloring_validation():
    with pytest.raises(InvalidInputError):
        Coloring(7, 2, (0,) * 34)
    with pytest.raises(InvalidInputError):
        Coloring(7, 2, (0,) * 34 + (2,))
    with pytest.raises(InvalidInputError):
        Coloring(7, 0, ())


def test_col_round_trip(tmp_path):
    c = Coloring.random(9, 3, random.Random(1))
    path = tmp_path / "c.col"
    ramsey.write_col(c, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "9 3" and len(lines[1].split()) == comb(9, 3)
    assert ramsey.read_col(path) == c


@pytest.mark.parametrize("text", ["", "7\n", "7 2\n0 1\n", "7 2\n" + "0 " * 34 + "5\n", "7 x\n"])
def test_col_rejects_bad_input(text):
    with pytest.raises(FormatError):
        ramsey.parse_col(text)


def test_certificate_verification():
    c = Coloring.constant(7, 1)
    cert = find_mono_P(c)
    assert cert is not None and verify_certificate(c, cert)
    assert MonoPCertificate.from_json(cert.to_json()) == cert
    a, b, x, d, e, f, g = cert.vertices
    assert cert.edges == tuple(triple_rank(*sorted(t)) for t in ((a, b, x), (x, d, e), (e, f, g)))
    wrong_colour = MonoPCertificate(1, cert.vertices, cert.edges)
    assert not verify_certificate(Coloring(7, 2, (0,) * 35), wrong_colour)
    repeated = MonoPCertificate(0, (0, 1, 2, 3, 4, 5, 5), cert.edges)
    assert not verify_certificate(c, repeated)
    shifted = MonoPCertificate(0, cert.vertices, (cert.edges[0], cert.edges[1], cert.edges[1]))
    assert not verify_certificate(c, shifted)
    with pytest.raises(FormatError):
        MonoPCertificate.from_json('{"color": 0}')


def test_certificate_json_fields():
    cert = find_mono_P(Coloring.constant(8, 2))
    d = json.loads(cert.to_json())
    assert set(d) == {"color", "vertices", "edges"}
    assert len(d["vertices"]) == 7 and len(d["edges"]) == 3


def test_find_mono_P_matches_oracle():
    rng = random.Random(4)
    for _ in range(40):
        c = Coloring.random(7, 2, rng)
        want = any(
            oracle_contains([t for t, col in zip(triples(7), c.assignment) if col == k], 7, P.graph.edges(), 7)
            for k in range(2)
        )
        assert (find_mono_P(c) is not None) == want


def test_classifiers():
    alive = list(range(10))
    s = star(10).edges()
    assert classify_star(s, alive) == 0
    co = s + [(1, 2, 3)]
    co = [e for e in co if not (0 in e and len({1, 2, 3} & set(e)) == 1)]
    assert classify_star(co, alive) is None
    assert classify_comet(co, alive) == (0, (1, 2, 3))
    k4s = [t for t in combinations(range(1, 5), 3)] + [(0, a, b) for a, b in combinations(range(5, 10), 2)]
    assert classify_comet(k4s, alive) is None
    assert classify_clique_star(k4s, alive, 4) == (0, (1, 2, 3, 4))
    assert classify_star([], alive) == 0


def test_trace_follows_schedule_on_star_colouring():
    c = star_like()
    tr = reduction_trace(c, early_exit=False)
    assert tr.ok and tr.gap is None
    assert [st.n for st in tr.steps] == list(range(16, 7, -1))
    assert [st.host for st in tr.steps[:-1]] == ["star"] * 8
    for st in tr.steps:
        assert st.total_edges >= st.required_total
    assert verify_certificate(c, tr.certificate)


def test_trace_early_exit():
    c = Coloring.random(16, 10, random.Random(0))
    tr = reduction_trace(c)
    assert tr.ok and len(tr.steps) == 1 and verify_certificate(c, tr.certificate)


def test_trace_with_configured_rocket_host():
    def fake(n):
        need = 3 + comb(n - 5, 2)
        return ThreeGraph.from_edges(n, star(n).edges()[:need])

    tr = reduction_trace(star_like(), early_exit=False, rocket_def=RocketDefinition(generator=fake))
    assert tr.ok and not tr.logged_gaps


def test_trace_rejects_wrong_shape():
    with pytest.raises(InvalidInputError):
        reduction_trace(Coloring.constant(15, 10))
    with pytest.raises(InvalidInputError):
        reduction_trace(Coloring.constant(18, 12))


def test_trace_reports_gap(monkeypatch):
    # every real colouring has a monochromatic P, so blind the finder to reach the endgame check
    monkeypatch.setattr(ramsey, "find_P", lambda g: None)
    tr = reduction_trace(star_like(), early_exit=False)
    assert not tr.ok
    assert tr.gap.n == 8 and tr.gap.assertion == "pigeonhole endgame"


def test_trace_reports_unclassifiable_stage(monkeypatch):
    monkeypatch.setattr(ramsey, "find_P", lambda g: None)
    c = Coloring(16, 10, tuple(sum(t) % 10 for t in triples(16)))
    tr = reduction_trace(c, early_exit=False)
    assert tr.gap.n == 16 and tr.gap.assertion == "host classification"
    assert any("rocket" in g for g in tr.logged_gaps)


def test_lower_bound_witnesses():
    w = search_lower_bound(7, 2)
    assert w is not None and find_mono_P(w) is None
    assert w.assignment[0] == 0
    assert search_lower_bound(6, 2).assignment == (0,) * 20
    assert search_lower_bound(8, 1) is None
    assert search_lower_bound(8, 2) is None


def test_lower_bound_budget():
    with pytest.raises(IncompleteSearchError) as info:
        search_lower_bound(9, 3, Budget(nodes=1000))
    assert "budget" in str(info.value)


def test_trials_are_seeded():
    a = run_trials(16, 10, 25, seed=9)
    b = run_trials(16, 10, 25, seed=9)
    assert a == b and a.ok and a.certificates == 25
