import json
import subprocess
import sys

import pytest

from lrw1.cli import main
from lrw1.graph import cycle_graph, house, path_graph
from lrw1.io import read_graph, write_graph

C5_EXPR = "join(1,3, un( ren(3,2, join(2,3, un( join(1,2, un(add(1,a),add(2,b))), join(1,3, un(add(3,c),add(1,d))) ))), add(3,e)))"


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, g in [("c5", cycle_graph(5)), ("p4", path_graph(4)), ("c9x2", cycle_graph(9).disjoint_union(cycle_graph(9))),
                    ("house", house())]:
        write_graph(g, tmp_path / f"{name}.g")
        out[name] = str(tmp_path / f"{name}.g")
    (tmp_path / "c5.expr").write_text("# five-cycle\n" + C5_EXPR)
    out["expr"] = str(tmp_path / "c5.expr")
    out["dir"] = tmp_path
    return out


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_recognize(files, capsys):
    assert run(capsys, "recognize", files["p4"]) == (0, "thread\n")
    code, out = run(capsys, "recognize", files["c5"], "--json")
    assert code == 1 and json.loads(out)["components"][0]["kind"] == "necklace"


def test_decompose(files, capsys):
    code, out = run(capsys, "--json", "decompose", files["p4"])
    data = json.loads(out)
    assert code == 0 and data[0]["kind"] == "thread" and len(data[0]["decomposition"]["blocks"]) == 3
    code, _ = run(capsys, "decompose", files["house"])
    assert code == 1


def test_solve_branch(files, capsys):
    code, out = run(capsys, "solve", files["c5"], "--k", "1", "--json")
    data = json.loads(out)
    assert code == 0 and data["decision"] and len(data["deletion_set"]) == 1
    assert set(data) == {"decision", "deletion_set", "nodes_expanded", "time_ms"}
    code, out = run(capsys, "solve", files["c9x2"], "--k", "1")
    assert code == 1 and out.startswith("NO")


def test_solve_cwx(files, capsys):
    code, out = run(capsys, "solve", "--engine", "cwx", "--expr", files["expr"], "--k", "1", "--json")
    assert code == 0 and json.loads(out)["deletion_set"][0] in "abcde"
    code, _ = run(capsys, "solve", "--engine", "cwx", "--k", "1")
    assert code == 2


def test_kernelize(files, capsys):
    code, out = run(capsys, "kernelize", files["c9x2"], "--k", "1", "--json")
    assert code == 1 and json.loads(out)["outcome"] == "no"
    code, out = run(capsys, "kernelize", files["p4"], "--k", "0", "--json", "--thresholds", "test")
    data = json.loads(out)
    assert code == 0 and data["graph"]["n"] == 0 and data["k"] == 0


def test_find_obstruction(files, capsys):
    code, out = run(capsys, "find-obstruction", files["house"], "--json")
    assert code == 0 and json.loads(out)["name"] == "house"
    assert run(capsys, "find-obstruction", files["p4"]) == (0, "none\n")


def test_oracle(files, capsys):
    assert run(capsys, "oracle", "lrw", files["c5"]) == (0, "2\n")
    code, out = run(capsys, "oracle", "solve", files["c9x2"], "--k", "2", "--json")
    assert code == 0 and len(json.loads(out)["deletion_set"]) == 2
    code, out = run(capsys, "oracle", "catalog")
    cat = json.loads(out)
    assert len(cat) == 21 and set(cat[0]) == {"n", "edges", "canonical_form_hex", "names"}


def test_oracle_size_guard(files, capsys):
    big = files["dir"] / "big.g"
    write_graph(path_graph(25), big)
    code, _ = run(capsys, "oracle", "lrw", str(big))
    assert code == 3


def test_gen_and_out(files, capsys):
    out = files["dir"] / "n.g"
    assert run(capsys, "gen", "necklace", "--cycle-len", "9", "--seed", "4", "--out", str(out))[0] == 0
    g = read_graph(out)
    assert g.n >= 9
    code, text = run(capsys, "--seed", "4", "gen", "necklace", "--cycle-len", "9")
    assert text == out.read_text()
    code, text = run(capsys, "gen", "planted", "--base", "necklace", "--extra", "2", "--format", "json")
    assert json.loads(text)["k"] == 3
    code, text = run(capsys, "gen", "vc", files["p4"])
    assert text.splitlines()[0] == "p lrw1 14 16"


def test_input_errors(files, capsys):
    bad = files["dir"] / "bad.g"
    bad.write_text("p lrw1 2 1\ne 1 5\n")
    assert run(capsys, "recognize", str(bad))[0] == 2
    assert run(capsys, "recognize", str(files["dir"] / "missing.g"))[0] == 2
    assert run(capsys, "solve", files["c5"], "--k", "-1")[0] == 2


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "lrw1", "recognize", files["p4"]], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "thread"
