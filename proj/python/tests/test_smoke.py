import json
import math

import pytest

import cast


def test_diagonals():
    for n in range(4, 20):
        for k in range(1, n // 2 + 1):
            assert cast.mu(n, k) == pytest.approx(math.sin(k * math.pi / n) / math.sin(math.pi / n), abs=1e-12)


def test_min_lambda():
    sym, value = cast.min_lambda(7)
    assert sym == "mu(7,3)+1"
    assert value == pytest.approx(3.246980, abs=1e-6)
    report = cast.verify_min(8)
    assert report["ok"]
    assert all(c["minimum"] or c["reasons"] for c in report["candidates"])


def test_compose():
    assert cast.compose_matrix(5, [1, 1]) == [[2, 1], [1, 1]]
    assert cast.compose_matrix(8, [2, 1, 0, 0]) == [[2, 2, 0, 0], [1, 2, 1, 0], [0, 1, 2, 1], [0, 0, 1, 2]]


def test_builtins_verify():
    for name in cast.builtin_names():
        for rep in cast.verify_builtin(name):
            assert rep["area"] and rep["boundary"] and rep["containment"], (name, rep)


def test_counts_follow_the_matrix():
    m = cast.builtin_matrix("penrose_robinson")
    assert m == [[2, 1], [1, 1]]
    assert cast.tile_counts("penrose_robinson", "L", 3) == [13, 8]
    data = json.loads(cast.builtin_json("ammann_beenker"))
    assert data["n"] == 4


def test_render_is_deterministic():
    a = cast.render_builtin("penrose_robinson", "L", 4)
    assert a == cast.render_builtin("penrose_robinson", "L", 4)
    assert a.count("<path") == 34 + 21


def test_edges():
    row = cast.edge_table("1", 7)
    assert row["sequence"] == "0-2-4-0-2"
    assert row["inner"] == "mu(7,3)+2*mu(7,2)+1"
    eta = cast.edge_multiplier(5, "2", "1,3,1")
    assert eta["value"] == pytest.approx(math.sqrt(cast.mu(5, 2) + 2) * (cast.mu(5, 2) + 2), abs=1e-12)


def test_ksk():
    assert all(cast.ksk_rhomb(7, "1", "0,2,4,0,2", m) for m in range(1, 7))
    assert not cast.ksk_rhomb(7, "1", "0,2", 3)
    assert cast.ksk_boundary(5, [0, 4, 10, 14])
    assert not cast.ksk_boundary(6, [0, 8, 16])


def test_gaps():
    out = cast.gaps(4, "1")
    assert out["outcome"] == "closed"
    assert out["lambda"][1] == pytest.approx(2 + math.sqrt(2), abs=1e-12)
    assert json.loads(out["state_json"])["n"] == 4
    bad = cast.gaps(4, "2,0,2")
    assert bad["outcome"] == "failed"
    assert "overlap" in bad["reason"]
