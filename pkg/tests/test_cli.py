import json

import pytest

from pcqi import cli, graphs, ntrees

from conftest import cycle, path


@pytest.fixture
def c5_file(tmp_path):
    f = tmp_path / "c5.json"
    f.write_text(graphs.to_json(cycle(5)))
    return str(f)


@pytest.fixture
def path3_file(tmp_path):
    f = tmp_path / "p3.json"
    f.write_text(graphs.to_json(path(3)))
    return str(f)


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, out


def test_predicates(c5_file, capsys):
    code, out = run(["predicates", "--graph", c5_file], capsys)
    data = json.loads(out)
    assert code == 0
    assert data["vertices"] == 5 and data["girth"] == 5
    assert data["atomic"] and not data["tree"]


def test_nf(path3_file, capsys):
    code, out = run(["nf", "--graph", path3_file,
                     "--word", "b a b^-1 c"], capsys)
    data = json.loads(out)
    assert code == 0
    assert data["normal_form"] == "a c"
    assert not data["trivial"]
    assert data["support"] == ["a", "c"]


def test_patch_double_and_ball(c5_file, capsys):
    code, out = run(["patch", "--graph", c5_file, "--double", "v1"], capsys)
    assert code == 0
    data = json.loads(out)
    assert len(data["vertices"]) == 7

    code, out = run(["patch", "--graph", c5_file, "--double", "v1:2",
                     "--format", "dot"], capsys)
    assert code == 0 and out.startswith("graph G {")

    code, out = run(["patch", "--graph", c5_file, "--ball", "0"], capsys)
    assert code == 0 and len(json.loads(out)["vertices"]) == 5


def test_patch_bad_vertex(c5_file, capsys):
    code = cli.main(["patch", "--graph", c5_file, "--double", "zz"])
    capsys.readouterr()
    assert code == 2


def test_embed_found_and_exhausted(tmp_path, c5_file, capsys):
    wedge = tmp_path / "c4.json"
    wedge.write_text(graphs.to_json(cycle(4)))
    code, out = run(["embed", "--domain", c5_file, "--codomain", c5_file,
                     "--depth", "0"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["result"] == "Found" and data["verified"]

    code, out = run(["embed", "--domain", str(wedge), "--codomain", c5_file,
                     "--depth", "1"], capsys)
    assert code == 1 and json.loads(out)["result"] == "Exhausted"


def test_gph_and_bisim(tmp_path, capsys):
    k = tmp_path / "k.json"
    k.write_text(ntrees.complex_to_json(ntrees.complex_(1, ["ab", "bc", "cd"])))
    code, out = run(["gph", "--complex", str(k)], capsys)
    assert code == 0
    data = json.loads(out)
    assert sorted(data["colors"].values()) == ["f", "p1", "p2"]

    cg = tmp_path / "cg.json"
    cg.write_text(out)
    code, out = run(["bisim", "--a", str(cg), "--b", str(cg)], capsys)
    assert code == 0 and json.loads(out)["bisimilar"]

    code, out = run(["bisim", "--a", str(cg), "--b", str(cg), "--n", "1"],
                    capsys)
    assert code == 0 and json.loads(out)["bisimilar"]


def test_classify_exit_codes(tmp_path, c5_file, capsys):
    c6 = tmp_path / "c6.json"
    c6.write_text(graphs.to_json(cycle(6)))
    code, out = run(["classify", "--a", c5_file, "--b", str(c6)], capsys)
    assert code == 1
    assert json.loads(out)["verdict"] == "NotQI"

    code, out = run(["--always-zero", "classify", "--a", c5_file,
                     "--b", str(c6)], capsys)
    assert code == 0

    code, out = run(["classify", "--a", c5_file, "--b", c5_file,
                     "--criterion", "--budget", "0"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["classify"]["verdict"] == "QI" and data["consistent"]


def test_rigidity(c5_file, tmp_path, capsys):
    report = tmp_path / "report.json"
    code = cli.main(["rigidity", "--graph", c5_file, "--depth", "0",
                     "--report", str(report)])
    capsys.readouterr()
    assert code == 0
    data = json.loads(report.read_text())
    assert data["embeddings"] == 10 and data["failures"] == 0


def test_out_file_and_determinism(c5_file, tmp_path, capsys):
    f1, f2 = tmp_path / "a.json", tmp_path / "b.json"
    assert cli.main(["predicates", "--graph", c5_file, "--out", str(f1)]) == 0
    assert cli.main(["predicates", "--graph", c5_file, "--out", str(f2)]) == 0
    capsys.readouterr()
    assert f1.read_text() == f2.read_text()


def test_usage_errors(tmp_path, capsys):
    missing = str(tmp_path / "nope.json")
    code = cli.main(["predicates", "--graph", missing])
    capsys.readouterr()
    assert code == 2

    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code = cli.main(["predicates", "--graph", str(bad)])
    capsys.readouterr()
    assert code == 2
