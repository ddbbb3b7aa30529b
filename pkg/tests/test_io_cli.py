import json

import pytest

from conftest import FIXTURES
from trackcube import io
from trackcube.cli import main
from trackcube.errors import InputError
from trackcube.pocset import pocset_from_json

K1, K2 = FIXTURES / "k1.json", FIXTURES / "k2.json"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith("{") else out)


def test_pattern_round_trip():
    K = io.load_complex(io.read_json(K1))
    P = io.pattern_from_json(K, io.read_json(FIXTURES / "k1_single_arc.json"))
    doc = io.pattern_to_json(P)
    Q = io.pattern_from_json(K, json.loads(json.dumps(doc)))
    assert Q.drawing.arcs == P.drawing.arcs and Q.tracks == P.tracks


def test_bad_json(tmp_path):
    p = tmp_path / "x.json"
    p.write_text('{"a": 1,\n]')
    with pytest.raises(InputError, match=r"x.json:2:1"):
        io.read_json(p)
    with pytest.raises(InputError):
        io.read_json(tmp_path / "missing.json")


def test_bundle_conflict(tmp_path):
    with pytest.raises(InputError, match="second 'complex'"):
        io.load_bundle([K1, K2])


def test_validate(capsys):
    code, rep = run(capsys, "validate", K1)
    assert code == 0 and rep["complex"]["h1_z2"] == 0
    assert rep["inputs"][0]["sha256"] == io.digest(io.read_json(K1))


def test_exit_code_two(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"vertices": [1, 2], "edges": [[1, 3]], "faces": []}))
    assert main(["validate", str(bad)]) == 2
    bad.write_text("{")
    assert main(["validate", str(bad)]) == 2
    assert main(["resolve", str(K2), str(FIXTURES / "square_pocset.json"),
                 str(FIXTURES / "square_map.json"), "--no-plots"]) == 2


def test_bound_check(capsys, tmp_path):
    code, rep = run(capsys, "bound-check", K1, FIXTURES / "k1_single_arc.json",
                    "--out", tmp_path)
    assert code == 0 and rep["classes"] == 1 and rep["bound"] == 102
    assert set(rep["checks"].values()) == {"pass"}
    assert (tmp_path / "report.json").exists()
    assert any(p.suffix == ".png" for p in tmp_path.iterdir())


def test_classes(capsys):
    code, rep = run(capsys, "classes", K1, FIXTURES / "k1_single_arc.json")
    assert code == 0 and rep["class_count"] == 1


def test_dual_exports(capsys, tmp_path):
    code, rep = run(capsys, "dual", FIXTURES / "square_pocset.json", "--no-plots")
    assert code == 0
    assert len(rep["dual"]["vertices"]) == 4
    code, _ = run(capsys, "dual", FIXTURES / "chain_pocset.json", "--format", "dot",
                  "--out", tmp_path, "--no-plots")
    assert code == 0
    dots = list(tmp_path.glob("*.dot"))
    assert dots and dots[0].read_text().lstrip().startswith("graph")


def test_resolve(capsys, tmp_path):
    code, rep = run(capsys, "resolve", K1, FIXTURES / "square_pocset.json",
                    FIXTURES / "square_map.json", "--out", tmp_path)
    assert code == 0 and rep["pass"]
    assert rep["fine_vertices"] == 4 and rep["regions"] == 4
    assert (tmp_path / "pullback.json").exists()


def test_normalize_cli(capsys, tmp_path):
    code, rep = run(capsys, "normalize", K2, FIXTURES / "k2_generalized.json", "--out", tmp_path)
    assert code == 0 and rep["move_count"] * 2 == rep["initial_crossings"] - rep["final_crossings"]
    assert (tmp_path / "normalized.json").exists()


@pytest.mark.parametrize("kind", ["complex-disk", "pattern-direct", "pattern-pullback",
                                  "pocset", "drawing-generalized"])
def test_gen_random_deterministic(capsys, kind):
    a = run(capsys, "gen-random", kind, 5, "--seed", 3)
    b = run(capsys, "gen-random", kind, 5, "--seed", 3)
    assert a[0] == 0 and a == b


def test_gen_random_feeds_dual(capsys, tmp_path):
    code, doc = run(capsys, "gen-random", "pocset", 4, "--seed", 2)
    assert code == 0
    pocset_from_json(doc)


def test_stress_small(capsys, tmp_path):
    code, _ = run(capsys, "stress", "--suites", "duality", "normalization",
                  "--scale", "0.05", "--seed", 1, "--out", tmp_path)
    assert code == 0
    assert (tmp_path / "campaign.json").exists()
