import json
import subprocess
import sys

import pytest

from dlm.cli import main
from dlm.models import Countermodel


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_decide_dlm_invalid_json(capsys):
    code, out, _ = run(capsys, "decide-dlm", "y*x*y <= x*y*x", "--format", "json")
    assert code == 1
    data = json.loads(out)
    assert data["verdict"] == "invalid"
    assert data["countermodel"]["kind"] == "end-chain"
    assert Countermodel.from_json(data["countermodel"]).check()


def test_decide_dlm_valid(capsys):
    assert run(capsys, "decide-dlm", "x /\\ y <= x \\/ y")[0] == 0


def test_decide_lg_reports_eliminated(capsys):
    code, out, _ = run(capsys, "decide-lg", "e <= x \\/ x^-1", "--format", "json")
    assert code == 0
    assert json.loads(out)["eliminated"] == ["x*_y0 <= x*_y0*x \\/ x*_y0*_y0 \\/ e"]


def test_decide_lg_invfree(capsys):
    code, out, _ = run(capsys, "decide-lg-invfree", "x*y <= y*x", "--format", "json")
    assert code == 1
    assert json.loads(out)["countermodel"]["kind"] == "aut-q"


def test_eliminate(capsys):
    code, out, _ = run(capsys, "eliminate", "e <= x^-1")
    assert code == 0 and out.strip() == "x*_y0 <= x*_y0*_y0 \\/ e"


def test_oracle(capsys):
    assert run(capsys, "oracle", "--chain", "2", "y*x*y <= x*y*x")[0] == 1
    assert run(capsys, "oracle", "--chain", "3", "x <= x")[0] == 0


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "endos", "3", "--format", "json")
    assert code == 0 and json.loads(out)["count"] == 10
    code, out, _ = run(capsys, "enumerate", "ordered-monoids", "2", "--format", "json")
    assert json.loads(out)["count"] == 2


def test_right_order_files(capsys, tmp_path):
    c = tmp_path / "c.txt"
    c.write_text("x*y < y*x\ny*x < x*y\n")
    assert run(capsys, "right-order-free", "--constraints", str(c))[0] == 1
    c.write_text("x < y\n")
    assert run(capsys, "right-order-free", "--constraints", str(c))[0] == 0
    m = tmp_path / "m.json"
    m.write_text(json.dumps({"size": 2, "unit": 0, "table": [[0, 1], [1, 0]]}))
    assert run(capsys, "right-order-monoid", "--monoid", str(m))[0] == 1
    m.write_text(json.dumps({"size": 2, "unit": 1, "table": [[0, 0], [0, 1]]}))
    code, out, _ = run(capsys, "right-order-monoid", "--monoid", str(m), "--format", "json")
    assert code == 0 and json.loads(out)["exists"]


def test_lift(capsys, tmp_path):
    universe = ["e", "x", "y", "x*y", "y*x", "x*y*x", "y*x*y"]
    rank = {"x": 0, "y*x": 0, "x*y*x": 0, "e": 1, "y": 1, "x*y": 1, "y*x*y": 1}
    le = [[rank[a] <= rank[b] for b in universe] for a in universe]
    f = tmp_path / "p.json"
    f.write_text(json.dumps({"universe": universe, "le": le}))
    code, out, _ = run(capsys, "lift", "--preorder", str(f))
    assert code == 0
    assert out.strip() == "x ◁ xyx ◁ yx ◁ e ◁ xy ◁ yxy ◁ y"


@pytest.mark.parametrize(
    "argv",
    [
        ["decide-dlm", "x <="],
        ["decide-dlm", "e <= x^-1"],
        ["decide-dlm", "x <= x", "--max-nodes", "0"],
        ["bogus"],
        [],
        ["right-order-free", "--constraints", "/nonexistent/file"],
    ],
)
def test_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and err


def test_budget_exit_2(capsys):
    code, _, err = run(
        capsys,
        "decide-dlm",
        "x1*x2*x3 /\\ x4*x5*x6 /\\ x7*x8*x9 <= x1*x4*x7 \\/ x2*x5*x8 \\/ x3*x6*x9",
        "--max-nodes",
        "2",
    )
    assert code == 2 and "budget" in err


def test_threads_deterministic(capsys):
    s = "(x \\/ y)*(y /\\ z) <= x*z \\/ y*y"
    a = run(capsys, "decide-dlm", s, "--format", "json")
    b = run(capsys, "decide-dlm", s, "--format", "json", "--threads", "2")
    da, db = json.loads(a[1]), json.loads(b[1])
    da.pop("seconds"), db.pop("seconds")
    assert a[0] == b[0] and da == db


def test_module_entry_point():
    r = subprocess.run(
        [sys.executable, "-m", "dlm", "decide-dlm", "x <= x"], capture_output=True, text=True
    )
    assert r.returncode == 0 and "VALID" in r.stdout
