import io
import json
import random
import subprocess
import sys

import pytest

from combident import cli, ring, walks
from combident.formats import digraph_from_json, digraph_to_json, matrix_from_json, matrix_to_json

from oracles import random_matrix


def run(*argv):
    out = io.StringIO()
    code = cli.run(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv, "--json")
    return code, json.loads(text)


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


@pytest.fixture
def loop_file(tmp_path):
    return write(tmp_path, "loop.json", {"n": 1, "edges": [{"from": 0, "to": 0, "weight": "2"}]})


@pytest.fixture
def full2_file(tmp_path):
    edges = [{"from": u, "to": v, "weight": w} for (u, v), w in
             zip([(0, 0), (0, 1), (1, 0), (1, 1)], "abcd")]
    return write(tmp_path, "full2.json", {"n": 2, "edges": edges})


def test_newton_loop(loop_file):
    code, doc = run_json("newton", "--graph", loop_file, "--r", "3")
    assert code == 0 and doc["verdict"] == "PASS"
    assert doc["checks"][0]["detail"].endswith("residual = 0")
    assert doc["values"]["c"] == ["2", "4", "8"]


def test_newton_default_range(full2_file):
    code, doc = run_json("newton", "--graph", full2_file)
    assert code == 0 and len(doc["checks"]) == 4


def test_newton_coefficients():
    code, doc = run_json("newton", "--coefficients=-3,2", "--r", "4")
    assert code == 0
    assert doc["values"]["p"] == ["3", "5", "9", "17"]


def test_sumident_pass(tmp_path):
    rng = random.Random(5)
    files = [write(tmp_path, f"{c}.json", matrix_to_json(random_matrix(rng, 2))) for c in "ABC"]
    code, doc = run_json("sumident", "--matrices", *files)
    assert code == 0 and doc["verdict"] == "PASS"
    code, doc = run_json("sumident", "--matrices", *files, "--permanent", "--pie")
    assert code == 0
    assert doc["values"]["pie"]["systems_touching_all_boxes"] == 0


def test_cramer_singular(tmp_path):
    a = write(tmp_path, "singular.json", {"rows": [["1", "1"], ["1", "1"]]})
    b = write(tmp_path, "b.json", {"rows": [["1"], ["2"]]})
    code, doc = run_json("cramer", "--matrix", a, "--rhs", b)
    assert code == 2
    assert doc["verdict"] == "ERROR" and "SINGULAR" in doc["error"]


def test_cramer_solve_and_identity(tmp_path):
    a = write(tmp_path, "a.json", {"rows": [["1", "2"], ["3", "4"]]})
    b = write(tmp_path, "b.json", {"rows": [["5", "6"]]})
    code, doc = run_json("cramer", "--matrix", a, "--rhs", b, "--verify-identity", "3", "2")
    assert code == 0
    assert doc["values"]["x"] == ["-4", "9/2"]
    assert doc["values"]["identity"]["difference"] == "0"


def test_matrix_commands(tmp_path):
    m = write(tmp_path, "m.json", {"rows": [["a", "b"], ["c", "d"]]})
    assert run_json("det", "--matrix", m)[1]["values"]["det"] == "a*d - b*c"
    assert run_json("per", "--matrix", m)[1]["values"]["per"] == "a*d + b*c"
    code, doc = run_json("charpoly", "--matrix", m)
    assert code == 0 and doc["values"]["coefficients"] == ["1", "-a - d", "a*d - b*c"]


def test_lgv_command(tmp_path):
    g = write(tmp_path, "dag.json", {"n": 4, "edges": [
        {"from": 0, "to": 2, "weight": "2"}, {"from": 0, "to": 3, "weight": "3"},
        {"from": 1, "to": 3, "weight": "5"}]})
    code, doc = run_json("lgv", "--graph", g, "--sources", "0,1", "--sinks", "2,3", "--permanent")
    assert code == 0
    assert doc["values"]["det"] == "10" and doc["values"]["per"] == "10"


def test_lgv_rejects_cycles(loop_file):
    code, doc = run_json("lgv", "--graph", loop_file, "--sources", "0", "--sinks", "0")
    assert code == 2


def test_involution_command(full2_file):
    code, doc = run_json("involution", "--graph", full2_file)
    assert code == 0
    assert set(doc["values"]) == {"r=1", "r=2", "r=3"}


def test_cap_exit_code(full2_file):
    code, doc = run_json("involution", "--graph", full2_file, "--r", "7")
    assert code == 3 and "cap" in doc["error"]


@pytest.mark.parametrize("payload", [
    "not json",
    json.dumps({"n": 2, "edges": [{"from": 0, "to": 5, "weight": "1"}]}),
    json.dumps({"n": 1, "edges": [{"from": 0, "to": 0, "weight": "x"}]}),
    json.dumps({"n": 1, "edges": [{"from": 0, "to": 0, "weight": "1.5"}]}),
    json.dumps({"n": 2, "edges": [{"from": 0, "to": 1, "weight": "1/2"}, {"from": 1, "to": 0, "weight": "a"}]}),
])
def test_bad_inputs_exit_2(tmp_path, payload):
    p = tmp_path / "bad.json"
    p.write_text(payload)
    code, doc = run_json("newton", "--graph", str(p))
    assert code == 2 and doc["verdict"] == "ERROR"


def test_missing_file_exit_2(tmp_path):
    code, _ = run("det", "--matrix", str(tmp_path / "nope.json"))
    assert code == 2


def test_usage_error_exit_2():
    with pytest.raises(SystemExit) as exc:
        cli.run(["newton"], out=io.StringIO())
    assert exc.value.code == 2


def test_failed_identity_exits_1(loop_file, monkeypatch):
    monkeypatch.setattr(walks, "newton_residual", lambda g, r: ring.one(g.mode))
    code, doc = run_json("newton", "--graph", loop_file, "--r", "2")
    assert code == 1 and doc["verdict"] == "FAIL"


def test_output_is_deterministic(full2_file):
    outs = {run("involution", "--graph", full2_file, "--json")[1] for _ in range(3)}
    assert len(outs) == 1
    texts = {run("newton", "--graph", full2_file)[1] for _ in range(3)}
    assert len(texts) == 1


def test_json_weights_round_trip(full2_file):
    _, doc = run_json("newton", "--graph", full2_file)
    for lit in doc["values"]["c"] + doc["values"]["l"]:
        w = ring.parse_weight(lit, ring.SYMBOLIC)
        assert ring.format_weight(w) == lit


def test_text_output(loop_file):
    code, text = run("newton", "--graph", loop_file, "--r", "3")
    assert code == 0
    assert "verdict: PASS" in text and "PASS  residual r=3" in text


def test_file_formats_round_trip(full2_file):
    with open(full2_file) as fh:
        obj = json.load(fh)
    g = digraph_from_json(obj)
    assert digraph_from_json(digraph_to_json(g)) == g
    m = matrix_from_json({"rows": [["1/2", "3"], ["-4", "0"]]})
    assert matrix_from_json(matrix_to_json(m)) == m


def test_module_entry_point(loop_file):
    proc = subprocess.run([sys.executable, "-m", "combident", "newton", "--graph", loop_file, "--r", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "verdict: PASS" in proc.stdout
