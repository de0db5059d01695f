import json
import subprocess
import sys

import pytest

from mhcomplete import cli, completion
from mhcomplete.completion import ForkRule
from mhcomplete.graph import EdgeLabelledGraph
from mhcomplete.obstacles import ObstacleCatalogue

P5_FLAGS = ["--delta", "5", "--k1", "3", "--k2", "3", "--c0", "16", "--c1", "13"]


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_graph(tmp_path, g, name="g.json"):
    path = tmp_path / name
    path.write_text(g.dumps())
    return str(path)


def test_admissible_table(capsys):
    code, out, _ = run(capsys, "admissible", "--delta", "3")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 14
    assert lines[0].split()[:6] == ["K1", "K2", "C0", "C1", "M", "Case"]
    assert lines[8].split()[:6] == ["1", "3", "10", "11", "2,3", "III"]
    assert lines[1].split()[:6] == ["inf", "0", "8", "7", "--", "I"]


def test_admissible_json(capsys):
    code, out, _ = run(capsys, "admissible", "--delta", "4", "--no-bipartite", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 22
    assert all(r["k1"] != "inf" for r in rows)


def test_admissible_bad_delta(capsys):
    assert run(capsys, "admissible", "--delta", "2")[0] == 2
    assert run(capsys, "admissible", "--delta", "inf")[0] == 2


def test_complete_figure_success(capsys, tmp_path):
    path = write_graph(tmp_path, EdgeLabelledGraph.cycle([1, 5, 5, 5]))
    code, out, _ = run(capsys, "complete", path, *P5_FLAGS, "--trace")
    obj = json.loads(out)
    assert code == 0 and obj["status"] == "SUCCESS"
    assert [(s["time"], s["edge"], s["dist"]) for s in obj["trace"]] == [
        (2, [0, 2], 4), (2, [1, 3], 4)]
    assert EdgeLabelledGraph.from_json(obj["graph"]).is_complete()


def test_complete_figure_failure(capsys, tmp_path):
    path = write_graph(tmp_path, EdgeLabelledGraph.cycle([1, 1, 5, 5, 5]))
    code, out, err = run(capsys, "complete", path, *P5_FLAGS)
    assert code == 1
    assert json.loads(out)["certificate"]["vertices"] == [0, 1, 3]
    assert "NON_METRIC" in err


def test_complete_output_file(capsys, tmp_path):
    path = write_graph(tmp_path, EdgeLabelledGraph.path([1, 5]))
    dest = tmp_path / "out.json"
    code, out, _ = run(capsys, "complete", path, *P5_FLAGS, "-o", str(dest))
    assert code == 0 and out == ""
    assert json.loads(dest.read_text())["graph"]["edges"][1] == [0, 2, 4]


def test_complete_io_errors(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "complete", str(bad), *P5_FLAGS)[0] == 3
    assert run(capsys, "complete", str(tmp_path / "missing.json"), *P5_FLAGS)[0] == 3
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"vertices": 2, "edges": [[1, 0, 1]]}))
    assert run(capsys, "complete", str(wrong), *P5_FLAGS)[0] == 3
    big = write_graph(tmp_path, EdgeLabelledGraph.path([7]), "big.json")
    assert run(capsys, "complete", big, *P5_FLAGS)[0] == 3


def test_complete_bad_params(capsys, tmp_path):
    path = write_graph(tmp_path, EdgeLabelledGraph.path([1]))
    flags = ["--delta", "3", "--k1", "3", "--k2", "3", "--c0", "8", "--c1", "7"]
    assert run(capsys, "complete", path, *flags)[0] == 2
    flags = ["--delta", "3", "--k1", "1", "--k2", "3", "--c0", "9", "--c1", "11"]
    assert run(capsys, "complete", path, *flags)[0] == 2
    assert run(capsys, "complete", path, "--delta", "3")[0] == 2


def test_complete_antipodal_pode(capsys, tmp_path):
    g = EdgeLabelledGraph(4, {(0, 2): 3, (1, 3): 3})
    path = write_graph(tmp_path, g)
    flags = ["--delta", "3", "--k1", "1", "--k2", "2", "--c0", "8", "--c1", "7"]
    code, out, _ = run(capsys, "complete", path, *flags, "--pode", "0,1")
    obj = json.loads(out)
    assert code == 0 and obj["pode"] == [0, 1] and obj["pode_dependent"] is True


def test_complete_henson(capsys, tmp_path):
    path = write_graph(tmp_path, EdgeLabelledGraph.path([3, 3]))
    flags = ["--delta", "3", "--k1", "2", "--k2", "3", "--c0", "10", "--c1", "11",
             "--henson", "1,1,1"]
    code, out, _ = run(capsys, "complete", path, *flags)
    assert code == 0 and json.loads(out)["graph"]["edges"][1] == [0, 2, 2]


def test_obstacles_command(capsys):
    code, out, _ = run(capsys, "obstacles", *P5_FLAGS, "--max-len", "6")
    obj = json.loads(out)
    assert code == 0 and obj["cycles"]["6"] == [] and len(obj["cycles"]["5"]) == 8
    cat = ObstacleCatalogue.from_json(obj)
    assert cat.to_json() == obj
    flags = ["--delta", "3", "--k1", "3", "--k2", "3", "--c0", "8", "--c1", "7"]
    assert run(capsys, "obstacles", *flags)[0] == 2
    bip = ["--delta", "4", "--k1", "inf", "--k2", "0", "--c0", "12", "--c1", "9"]
    assert run(capsys, "obstacles", *bip)[0] == 2


def test_verify_requires_seed(capsys):
    assert run(capsys, "verify", "--suite", "oracle", "--delta", "3")[0] == 2


def test_verify_sir_delta3(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "sir", "--delta", "3", "--seed", "7",
                       "--max-vertices", "3")
    assert code == 0 and out.strip().endswith("violations 0")


def test_verify_oracle_delta5(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "oracle", "--delta", "5",
                       "--max-vertices", "4", "--seed", "7")
    assert code == 0
    assert out.strip().splitlines()[-1].endswith("violations 0")


@pytest.mark.parametrize("suite", ["optimality", "parity", "aut", "obstacles"])
def test_verify_other_suites(capsys, suite):
    code, out, _ = run(capsys, "verify", "--suite", suite, *P5_FLAGS, "--max-vertices", "3",
                       "--seed", "1", "--samples", "50", "--format", "json")
    obj = json.loads(out)
    assert code == 0 and obj["violations"] == [] and obj["checked"] > 0


def test_verify_detects_mutated_forks(capsys, monkeypatch):
    real = completion.fork_rules

    def mutated(p, M, bipartite=False):
        # close (1, 5) forks to 5 instead of 4
        out = []
        for r in real(p, M, bipartite):
            if r.target == 4:
                r = ForkRule(5, r.family, r.time, r.pairs)
            out.append(r)
        return out

    monkeypatch.setattr(completion, "fork_rules", mutated)
    code, out, _ = run(capsys, "verify", "--suite", "oracle", *P5_FLAGS,
                       "--max-vertices", "3", "--seed", "7")
    assert code == 1
    assert "violations 0" not in out.splitlines()[-1 - out.count("violation:")]


def test_output_is_deterministic(tmp_path):
    path = write_graph(tmp_path, EdgeLabelledGraph.cycle([1, 5, 5, 5]))
    cmd = [sys.executable, "-m", "mhcomplete", "complete", path, *P5_FLAGS, "--trace"]
    a = subprocess.run(cmd, capture_output=True, text=True)
    b = subprocess.run(cmd, capture_output=True, text=True)
    assert a.returncode == 0 and a.stdout == b.stdout
    cmd = [sys.executable, "-m", "mhcomplete", "verify", "--suite", "obstacles", *P5_FLAGS,
           "--seed", "3", "--samples", "40"]
    a = subprocess.run(cmd, capture_output=True, text=True)
    b = subprocess.run(cmd, capture_output=True, text=True)
    assert a.returncode == 0 and a.stdout == b.stdout
