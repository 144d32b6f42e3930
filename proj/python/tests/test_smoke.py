import json
import random

import pytest

import ufg


def test_constants():
    assert ufg.GENOME_LENGTH == 1600
    assert ufg.GRID_SIZE == 20
    assert ufg.CANVAS_UNITS == 512
    assert ufg.CELL_UNITS == 25
    assert ufg.PREFAB_COUNT == 12
    assert ufg.CANDIDATES == 9


def test_decode_all_zero():
    level = ufg.decode([0.0] * ufg.GENOME_LENGTH)
    assert level["canvas"] == 512
    assert all(cell["t"] == "S" for row in level["grid"] for cell in row)
    assert level["spawns"] == [[10, 0], [10, 19]]
    assert ufg.features([0.0] * ufg.GENOME_LENGTH)["street_ratio"] == 1.0


def test_decode_random_genome():
    rng = random.Random(42)
    genes = [rng.random() for _ in range(ufg.GENOME_LENGTH)]
    level = ufg.decode(genes)
    report = ufg.playability(level)
    assert report["spawns_reachable"] is True
    text = ufg.ascii(level)
    assert text.count("\n") == 20
    assert "A" in text and "B" in text
    assert ufg.render_svg(level).startswith("<svg")
    assert 0.0 <= ufg.cover_score(level, *_first_walkable(level)) <= 1.0


def _first_walkable(level):
    for r, row in enumerate(level["grid"]):
        for c, cell in enumerate(row):
            if cell["t"] != "B":
                return r, c
    raise AssertionError("no walkable cell")


def test_bad_genome_raises():
    with pytest.raises(ufg.UfgError):
        ufg.decode([0.5] * 10)
    with pytest.raises(ufg.UfgError):
        ufg.decode([2.0] * ufg.GENOME_LENGTH)


def test_session_flow_and_replay():
    s = ufg.Session("smoke", params={"seed": 3})
    assert s.generation == 0
    assert s.turn == "Human"
    assert len(s.state()["candidates"]) == 9
    while not s.finished:
        s.submit(0, 1)
    assert s.generation == 10
    assert s.human_rounds == 6
    with pytest.raises(ufg.UfgError):
        s.submit(0, 1)

    again = ufg.Session.replay(s.transcript())
    for k in range(9):
        assert json.dumps(again.export_level(k), sort_keys=True) == json.dumps(s.export_level(k), sort_keys=True)


def test_selection_errors():
    s = ufg.Session()
    with pytest.raises(ufg.UfgError):
        s.submit(4, 4)
    with pytest.raises(ufg.UfgError):
        ufg.Session(params={"mutation_rate": 3})


def test_tree_roundtrip():
    rows = [[0.3, x, 0.7 - x, 2.0, 0.1, 0.2] for x in (0.1, 0.2, 0.3, 0.4, 0.45, 0.5, 0.55, 0.6, 0.65)]
    preferred = [x[1] > 0.55 for x in rows]
    tree = ufg.train_tree(rows, preferred)
    assert tree["root"]["feature"] in (1, 2)
    for row, want in zip(rows, preferred):
        assert ufg.classify(tree, row)[0] == want


def test_experiment_rows():
    rows = ufg.run_experiment(seeds=2, iterations=10, assist="both", noise=0.02, threads=1)
    assert len(rows) == 4
    assert {r["assist"] for r in rows} == {True, False}
    for r in rows:
        if not r["assist"]:
            assert r["human_rounds"] == r["generations"]
