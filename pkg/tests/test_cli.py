import json
import subprocess
import sys

import pytest

from conftest import gamma
from zcancel.cli import main
from zcancel.divisors import BaseCurve, GraphDivisor
from zcancel.trees import FiberTree, bush


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        path = tmp_path / name
        path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(path)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_gamma_2_3(capsys, files):
    code, out, _ = run(capsys, "analyze", files("g.json", gamma(2, 3).to_json()))
    report = json.loads(out)
    assert code == 0
    assert report["vertex_count"] == 9
    assert report["picard_number"] == 1
    assert report["zariski"]["status"] == "NotZariski1Factor"


def test_analyze_accepts_equation_json(capsys, files):
    code, out, _ = run(capsys, "analyze", files("e.json", {"d": 2, "m": 3, "b": [[-1, 0, 1]]}))
    assert code == 0 and json.loads(out)["vertex_count"] == 9


def test_analyze_text_and_dot(capsys, files):
    path = files("g.json", gamma(2, 1).to_json())
    code, out, _ = run(capsys, "analyze", path, "--format", "text")
    assert code == 0 and "vertex count: 5" in out
    code, out, _ = run(capsys, "analyze", path, "--format", "dot")
    assert out.startswith("graph extended {") and "doublecircle" in out


def test_compare_danielewski(capsys, files):
    a = files("a.json", gamma(2, 1).to_json())
    b = files("b.json", gamma(2, 4).to_json())
    code, out, _ = run(capsys, "compare", a, b, "--over-base")
    res = json.loads(out)
    assert code == 0
    assert res["verdict"] == "Yes"
    assert res["citation"]
    assert res["certificate_checked"] is True


def test_compare_no_and_unknown(capsys, files):
    a = files("a.json", gamma(2, 2).to_json())
    b = files("b.json", gamma(3, 2).to_json())
    code, out, _ = run(capsys, "compare", a, b, "--over-base")
    assert code == 0 and json.loads(out)["verdict"] == "No"
    d1 = GraphDivisor(BaseCurve(("x", "y")), {"x": bush(2, 1), "y": FiberTree.single()})
    d2 = GraphDivisor(BaseCurve(("x", "y")), {"y": bush(2, 1), "x": FiberTree.single()})
    code, out, _ = run(
        capsys, "compare", files("c.json", d1.to_json()), files("d.json", d2.to_json()), "--over-base"
    )
    assert code == 2 and json.loads(out)["verdict"] == "Unknown"


def test_stretch(capsys, files):
    path = files("g.json", gamma(2, 1).to_json())
    code, out, _ = run(capsys, "stretch", path, "--stretch", "0:level=top,a=2")
    res = json.loads(out)
    assert code == 0
    assert res["divisor"]["fibers"]["0"] == bush(2, 3).to_literal()


def test_family(capsys, files):
    path = files("g.json", gamma(2, 1).to_json())
    code, out, _ = run(capsys, "family", path, "--k", "3", "--format", "text")
    assert code == 0
    assert out.splitlines() == [
        "member 1: v=7, cylinder Yes",
        "member 2: v=9, cylinder Yes",
        "member 3: v=11, cylinder Yes",
    ]


def test_family_of_line_bundle_is_an_error(capsys, files):
    path = files("t.json", GraphDivisor.over_line({"0": FiberTree.single()}).to_json())
    code, _, err = run(capsys, "family", path)
    assert code == 1 and "NoBranchingFiber" in err


def test_classify_eq(capsys, files):
    g = files("g.txt", "z*t - (u^2 - 1)")
    h = files("h.json", {"d": 2, "m": 1, "b": [[-4, 0, 1]]})
    code, out, _ = run(capsys, "classify-eq", g, h)
    res = json.loads(out)
    assert code == 0 and res["outcome"] == "Isomorphic"
    code, out, _ = run(capsys, "classify-eq", g, files("k.txt", "z*t - (u^2 + 1)"))
    assert code == 2 and json.loads(out)["outcome"] == "Unknown"


def test_classify_mm(capsys, files):
    g = files("g.txt", "z^2*t - (u^3 + 2*u*z^2 + z^3) - 1")
    h = files("h.txt", "z^2*t - (u^3 + 8*u*z^2 + 8*z^3) - 1")
    code, out, _ = run(capsys, "classify-eq", g, h, "--family", "mm")
    assert code == 0 and json.loads(out)["lambda"] == "2"


def test_cover(capsys):
    code, out, _ = run(capsys, "cover", "--dpd", "p1:1/2,p2:3/4")
    res = json.loads(out)
    assert code == 0
    assert res["order"] == 4
    assert res["cover"] == {"p1": 2, "p2": 3}
    assert res["zariski"]["status"] == "ZariskiFactor"


def test_hj(capsys):
    code, out, _ = run(capsys, "hj", "5", "2")
    assert code == 0 and out == "[-3,-2]\n"


def test_input_errors(capsys, files):
    code, _, err = run(capsys, "analyze", files("bad.json", '{"base": [1,}'))
    assert code == 1 and "bad.json:1:" in err
    code, _, err = run(capsys, "classify-eq", files("g.txt", "z*t - u^2 + x"), files("h.txt", "z*t - u^2"))
    assert code == 1 and "g.txt:1:13:" in err
    code, _, err = run(capsys, "stretch", files("g.json", gamma(2, 1).to_json()), "--stretch", "0:a=q")
    assert code == 1 and "--stretch:1:3:" in err
    code, _, err = run(capsys, "hj", "4", "2")
    assert code == 1 and "BadParameters" in err
    code, _, err = run(capsys, "analyze", str(files("x", "")) + ".missing")
    assert code == 1


def test_invalid_divisor_is_rejected(capsys, files):
    doc = {"base": {"points": ["0"]}, "fibers": {"0": [-3, []]}}
    code, _, err = run(capsys, "analyze", files("d.json", doc))
    assert code == 1 and "NotContractible" in err


def test_dot_not_offered_everywhere(capsys):
    code, _, err = run(capsys, "hj", "5", "2", "--format", "dot")
    assert code == 1 and "dot" in err


def test_output_is_deterministic(files):
    a = files("a.json", gamma(2, 1).to_json())
    b = files("b.json", gamma(2, 3).to_json())
    cmd = [sys.executable, "-m", "zcancel", "compare", a, b, "--over-base"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first
