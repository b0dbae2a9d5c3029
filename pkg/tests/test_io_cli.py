import json
import random
from fractions import Fraction

import pytest

from geosub import cli, io, registry
from geosub.fat import FatObject
from geosub.geometry import Box, Segment
from geosub.hardness import gen_random


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


# ------------------------------------------------------------ documents


def test_instance_round_trip_keeps_exact_coordinates():
    objs = [Box((Fraction(1, 3), 0), (2, Fraction(7, 2)), 1), Box((-1, -1), (0, 0), 0)]
    doc = io.instance_to_json(objs)
    assert doc["kind"] == "boxes" and doc["d"] == 2 and doc["objects"][0]["lo"][0] == [1, 3]
    assert io.instance_from_json(json.loads(json.dumps(doc))) == ("boxes", objs)
    segs = [Segment((0, 0), (Fraction(5, 7), 1), 2)]
    assert io.instance_from_json(io.instance_to_json(segs))[1] == segs
    fat = [FatObject.disk(1, 2, Fraction(1, 2), 1), FatObject.square(0, 0, 3, 0)]
    assert io.instance_from_json(io.instance_to_json(fat))[1] == fat


def test_instance_input_accepts_floats_and_strings():
    doc = {"kind": "segments", "objects": [{"p": [0.5, "1/3"], "q": [2, [3, 4]]}]}
    _, (s,) = io.instance_from_json(doc)
    assert s.p == (Fraction(1, 2), Fraction(1, 3)) and s.q == (2, Fraction(3, 4))


@pytest.mark.parametrize(
    "doc",
    [
        [],
        {"kind": "lines", "objects": []},
        {"kind": "boxes", "objects": {}},
        {"kind": "boxes", "objects": [{"lo": [0]}]},
        {"kind": "boxes", "d": 2, "objects": [{"lo": [0], "hi": [1]}]},
        {"kind": "boxes", "objects": [{"lo": [0], "hi": [1]}], "colors": [0, 1]},
        {"kind": "fat", "objects": [{"shape": "blob"}]},
        {"kind": "segments", "objects": [{"p": [0, [1, 0]], "q": [1, 1]}]},
    ],
)
def test_malformed_instances_are_rejected(doc):
    with pytest.raises(ValueError):
        io.instance_from_json(doc)


# ------------------------------------------------------------ commands


def test_gen_boxes_file(tmp_path, capsys):
    path = tmp_path / "a.json"
    assert run(capsys, "gen", "boxes", "--n", 50, "--d", 3, "--seed", 7, "-o", path)[0] == 0
    kind, objs = io.load_instance(path)
    assert kind == "boxes" and len(objs) == 50 and all(b.d == 3 for b in objs)


def test_gen_segments_is_reproducible(capsys):
    a = run(capsys, "gen", "segments", "--n", 40, "--density", 2.0, "--seed", 9)[1]
    b = run(capsys, "gen", "segments", "--n", 40, "--density", 2.0, "--seed", 9)[1]
    assert a == b and len(json.loads(a)["objects"]) == 40


def test_reduce_c3_detect_verify(tmp_path, capsys):
    g = tmp_path / "g.json"
    g.write_text(json.dumps({"n": 4, "edges": [[1, 2], [2, 3], [3, 1], [3, 4]]}))
    inst = tmp_path / "b.json"
    assert run(capsys, "gen", "reduce-c3", "--digraph", g, "-o", inst)[0] == 0
    rep = tmp_path / "r.json"
    assert run(capsys, "detect", inst, "-a", "ck-boxes", "--k", 3, "-o", rep)[0] == 0
    code, out, _ = run(capsys, "verify", inst, rep)
    assert code == 0 and json.loads(out)["ok"]


def test_reduce_i4_instance(tmp_path, capsys):
    h = tmp_path / "h.json"
    h.write_text(json.dumps({"N": 1, "edges": [[1, 1, 1, None], [None, 1, 1, 1], [1, None, 1, 1], [1, 1, None, 1]]}))
    inst = tmp_path / "o.json"
    assert run(capsys, "gen", "reduce-i4", "--hypergraph", h, "-o", inst)[0] == 0
    kind, objs = io.load_instance(inst)
    assert kind == "orthants" and len(objs) == 4 and objs[0].d == 6
    assert run(capsys, "detect", inst, "-a", "i4-boxes")[0] == 0


def test_detect_examples(tmp_path, capsys):
    tri = tmp_path / "t.json"
    io.save_instance([Segment((0, 0), (4, 4)), Segment((0, 4), (4, 0)), Segment((1, -1), (1, 5))], tri)
    code, out, _ = run(capsys, "detect", tri, "-a", "ck-segments", "--k", 3)
    rep = json.loads(out)
    assert code == 0 and rep["found"] and sorted(rep["witness"]["indices"]) == [0, 1, 2]
    assert set(rep["params"]) == {"r", "Delta", "trials"} and rep["elapsed_ms"] >= 0
    overlap = tmp_path / "o.json"
    io.save_instance([Box((-1 - i, -1), (1, 1 + i), i % 4) for i in range(8)], overlap)
    code, out, _ = run(capsys, "detect", overlap, "-a", "i4-boxes")
    assert code == 1 and not json.loads(out)["found"] and "witness" not in json.loads(out)


def test_errors_exit_with_two(tmp_path, capsys):
    assert run(capsys, "detect", tmp_path / "missing.json", "-a", "i3-boxes")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "detect", bad, "-a", "i3-boxes")[0] == 2
    segs = tmp_path / "s.json"
    io.save_instance([Segment((0, 0), (1, 1))], segs)
    code, _, err = run(capsys, "detect", segs, "-a", "ck-segments", "--k", 99)
    assert code == 2 and "error" in err
    with pytest.raises(SystemExit) as e:
        cli.main(["detect", str(segs), "-a", "no-such-algorithm"])
    assert e.value.code == 2
    capsys.readouterr()


def test_verify_catches_a_forged_witness(tmp_path, capsys):
    inst = tmp_path / "i.json"
    io.save_instance([Segment((0, 0), (1, 0)), Segment((0, 1), (1, 1)), Segment((0, 2), (1, 2))], inst)
    rep = tmp_path / "r.json"
    rep.write_text(json.dumps({"found": True, "algorithm": "ck-segments", "options": {"k": 3},
                               "witness": {"kind": "cycle", "indices": [0, 1, 2]}}))
    code, out, _ = run(capsys, "verify", inst, rep)
    assert code == 1 and not json.loads(out)["ok"]
    rep.write_text(json.dumps({"found": False, "algorithm": "disjoint-pair"}))
    io.save_instance([Segment((0, 0), (1, 0), 0), Segment((0, 1), (1, 1), 1)], inst)
    assert run(capsys, "verify", inst, rep)[0] == 1


def _instance_for(alg, rng, seed):
    kind = alg.kinds[0]
    colors = {"kk-boxes": 4, "i3-boxes": 3, "i4-boxes": 4, "i4-boxes-5d": 4, "i5-rects": 5, "disjoint-pair": 2}
    params = {"n": 14, "density": rng.choice([0.5, 2.0, 6.0]), "colors": colors.get(alg.name, 1)}
    if alg.name == "i4-boxes-5d":
        params["d"] = 5
    if alg.name == "kk-boxes":
        params.update(d=1, density=10.0)
    return kind, gen_random(kind, params, seed=seed)


@pytest.mark.parametrize("name", sorted(registry.ALGORITHMS))
def test_round_trip_every_algorithm(name, tmp_path, capsys):
    alg = registry.get(name)
    rng = random.Random(name)
    flags = []
    if alg.needs_k:
        flags = ["--k", {"ck-even-boxes": 4, "ck-even-segments": 6, "kk-boxes": 4}.get(name, 3)]
    if name == "fat-pattern":
        flags = ["--pattern", "C4"]
    for seed in range(6):
        kind, objs = _instance_for(alg, rng, seed)
        inst, rep = tmp_path / f"i{seed}.json", tmp_path / f"r{seed}.json"
        io.save_instance(objs, inst, kind=kind)
        code = run(capsys, "detect", inst, "-a", name, "--seed", seed, "-o", rep, *flags)[0]
        assert code in (0, 1)
        code, out, _ = run(capsys, "verify", inst, rep)
        assert code == 0, out


def test_bench_csv(tmp_path, capsys, monkeypatch):
    out = tmp_path / "b.csv"
    code, _, err = run(capsys, "bench", "-a", "disjoint-pair", "--sizes", "32,64,128", "--trials", 1, "-o", out)
    lines = out.read_text().splitlines()
    assert code == 0 and lines[0] == "n,algorithm,median_ms,slope_estimate"
    assert [l.split(",")[0] for l in lines[1:]] == ["32", "64", "128"]
    code, text, err = run(capsys, "bench", "-a", "i3-boxes", "--sizes", "64,128", "--trials", 1)
    assert "bound 1.25" in err and text.splitlines()[1].split(",")[1] == "i3-boxes"
    code, text, _ = run(capsys, "bench", "-a", "ck-boxes", "--k", 3, "--sizes", "16,32", "--trials", 1)
    assert text.splitlines()[1].split(",")[1] == "ck-boxes (informational)"
    monkeypatch.setenv("GEOSUB_THREADS", "2")
    rows, slope = cli.bench("disjoint-pair", [32, 64], trials=2)
    assert [n for n, _ in rows] == [32, 64] and slope == slope


def test_workers_env(monkeypatch):
    monkeypatch.setenv("GEOSUB_THREADS", "3")
    assert cli._workers() == 3
    monkeypatch.setenv("GEOSUB_THREADS", "zero")
    assert cli._workers() == 1
