import json

import pytest

from trisys.cli import main
from trisys.core import read_system
from trisys.constructions import five_ring, gyarfas
from trisys.core import write_system


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_and_detect(tmp_path, capsys):
    path = tmp_path / "g.3uh"
    code, _, _ = run(capsys, "construct", "--family", "gyarfas", "--n", "8", "--k", "2", "-o", str(path))
    assert code == 0 and read_system(path) == gyarfas(8, 2)
    code, out, _ = run(capsys, "detect", "--config", "A,B,C,D", "--input", str(path))
    assert code == 0 and out.split() == ["A", "0", "B", "0", "C", "0", "D", "0"]


def test_detect_list(tmp_path, capsys):
    path = tmp_path / "r.3uh"
    write_system(five_ring(), path)
    code, out, _ = run(capsys, "detect", "--config", "B", "--input", str(path), "--list")
    lines = out.splitlines()
    assert lines[0] == "B\t5" and len(lines) == 6
    assert all(len(ln.split()) == 3 for ln in lines[1:])


def test_construct_default_k_to_stdout(capsys):
    code, out, _ = run(capsys, "construct", "--family", "gyarfas", "--n", "10")
    assert code == 0 and "10 12" in out.splitlines()


def test_construct_enumerate(tmp_path, capsys):
    code, _, _ = run(capsys, "construct", "--family", "classF", "--n", "9", "--enumerate", "-o", str(tmp_path))
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert code == 0 and len(manifest["classes"]) == 2
    for entry in manifest["classes"]:
        assert len(read_system(tmp_path / entry["file"])) == 17


def test_construct_bad_enumerate(capsys):
    code, _, err = run(capsys, "construct", "--family", "gyarfas", "--n", "8", "--enumerate")
    assert code == 2 and "error" in err


def test_search(tmp_path, capsys):
    code, out, _ = run(capsys, "search", "--n", "7", "--forbid", "A,B,D", "--enumerate", "--out-dir", str(tmp_path))
    data = json.loads(out)
    assert code == 0 and data["max_size"] == 8 and data["class_count"] == 1 and data["proved_optimal"]
    assert len(read_system(tmp_path / "witness_0.3uh")) == 8


def test_search_limit(capsys):
    code, _, err = run(capsys, "search", "--n", "10", "--forbid", "ABCD")
    assert code == 2 and "n <= 8" in err


def test_search_node_limit_exit(capsys):
    code, out, _ = run(capsys, "search", "--n", "8", "--forbid", "C", "--limit-nodes", "5")
    assert code == 2 and json.loads(out)["proved_optimal"] is False


def test_pack(capsys):
    code, out, _ = run(capsys, "pack", "--k4", "--n", "13", "--full")
    blocks = [tuple(map(int, ln.split())) for ln in out.splitlines()]
    assert code == 0 and len(blocks) == 13 and all(len(b) == 4 for b in blocks)
    code, _, err = run(capsys, "pack", "--k4", "--n", "7", "--full")
    assert code == 1 and "no K4" in err


def test_graph_verbs(tmp_path, capsys):
    p = tmp_path / "p.el"
    p.write_text("4 3\n0 1\n1 2\n2 3\n")
    code, out, _ = run(capsys, "graph", "path2", "--input", str(p))
    assert code == 0 and "class=L3" in out
    code, out, _ = run(capsys, "graph", "remote", "--input", str(p))
    assert out.split() == ["0", "3"]
    k4 = tmp_path / "k4.el"
    k4.write_text("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")
    assert run(capsys, "graph", "divisibility", "--input", str(k4), "--n", "13")[0] == 0
    assert run(capsys, "graph", "divisibility", "--input", str(k4), "--n", "14")[0] == 1


def test_verify(tmp_path, capsys):
    out = tmp_path / "report.tsv"
    code, _, err = run(capsys, "verify", "--n-max", "12", "--size-n-max", "100", "--oracle-n-max", "5", "--out", str(out))
    assert code == 0 and "0 failed" in err
    text = out.read_text()
    assert text.startswith("section\tfamily") and "configs\tformula\tstatus" in text


def test_verify_markdown_stdout(capsys):
    code, out, _ = run(capsys, "verify", "--n-max", "8", "--size-n-max", "0", "--oracle-n-max", "4", "--format", "markdown")
    assert code == 0 and out.startswith("| section |")


def test_missing_verb():
    with pytest.raises(SystemExit):
        main([])
