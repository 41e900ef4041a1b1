import json
import subprocess
import sys

import pytest

from digitop.cli import main
from digitop.fixtures import FIXTURES, square_curve
from digitop.homotopy import are_homotopic
from digitop.io import dumps
from digitop.lattice import image, interval
from digitop.maps import DigitalMap, constant, identity
from digitop.multimap import MultiMap
from digitop.analysis import cycle_cover


@pytest.fixture
def files(tmp_path):
    def put(name, obj):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else dumps(obj))
        return str(p)
    return put


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def run_json(argv, capsys):
    code, out, _ = run(argv + ["--json"], capsys)
    return code, json.loads(out)


def test_components(files, capsys):
    p = files("x.json", image([(0,), (1,), (5,)], u=1))
    code, rep = run_json(["components", p], capsys)
    assert code == 0 and rep["holds"] is False and rep["count"] == 2


def test_path(files, capsys):
    p = files("x.json", interval(0, 3))
    code, rep = run_json(["path", p, "0", "3"], capsys)
    assert code == 0 and rep["length"] == 3
    assert run(["path", p, "0", "9"], capsys)[0] == 2


def test_product_outputs_image(files, capsys):
    a = files("a.json", interval(0, 1))
    code, out, _ = run(["product", a, a, "--u", "1"], capsys)
    assert code == 0
    doc = json.loads(out.strip().splitlines()[-1])
    assert len(doc["points"]) == 4


def test_check_continuity_and_strict(files, capsys):
    X = interval(0, 2)
    p = files("f.json", DigitalMap(X, X, [(0,), (2,), (1,)]))
    code, rep = run_json(["check-continuity", p], capsys)
    assert code == 0 and rep["holds"] is False and rep["witness"] is not None
    assert run(["check-continuity", p, "--strict"], capsys)[0] == 1
    q = files("g.json", identity(X))
    assert run(["check-continuity", q, "--strict"], capsys)[0] == 0


def test_check_iso(files, capsys):
    X, Y = image([(0, 0), (1, 0)], u=2), image([(0, 0), (1, 1)], u=2)
    p = files("f.json", DigitalMap(X, Y, [(0, 0), (1, 1)]))
    assert run_json(["check-iso", p], capsys)[1]["holds"] is True
    q = files("g.json", constant(interval(0, 1), interval(0, 1), (0,)))
    assert run_json(["check-iso", q], capsys)[1]["reason"] == "not a bijection"


def test_check_retraction(files, capsys):
    X = interval(0, 2)
    A = X.subimage([(0,)])
    p = files("r.json", DigitalMap(X, A, [(0,)] * 3))
    assert run_json(["check-retraction", p], capsys)[1]["holds"] is True


def test_check_homotopy_kinds(files, capsys):
    X = interval(0, 2)
    H = are_homotopic(identity(X), constant(X, X, (0,)))
    from digitop.exthomotopy import homotopy_to_long, homotopy_to_real
    for name, obj, prop in (("h.json", H, "homotopy"), ("l.json", homotopy_to_long(H), "long homotopy"),
                            ("r.json", homotopy_to_real(H), "real homotopy")):
        code, rep = run_json(["check-homotopy", files(name, obj)], capsys)
        assert code == 0 and rep["holds"] is True and rep["property"] == prop
    bad = files("bad.json", json.dumps({"kind": "weird"}))
    assert run(["check-homotopy", bad], capsys)[0] == 2


def test_contractible(files, capsys):
    S8, _ = square_curve(2)
    p = files("c8.json", S8)
    code, out, _ = run(["contractible", p], capsys)
    assert code == 0 and out.startswith("contractible: no")
    assert run(["contractible", p, "--strict"], capsys)[0] == 1
    assert run(["contractible", p, "--budget", "5"], capsys)[0] == 3
    S4, _ = square_curve(1)
    assert run(["contractible", files("c4.json", S4), "--strict"], capsys)[0] == 0


def test_check_multimap_notions(files, capsys):
    F = MultiMap(interval(0, 1), interval(0, 2), {(0,): [(0,), (1,)], (1,): [(2,)]})
    p = files("F.json", F)
    want = {"weak": True, "strong": False, "cp": True, "continuous": True}
    for notion, holds in want.items():
        code, rep = run_json(["check-multimap", p, "--notion", notion], capsys)
        assert code == 0 and rep["holds"] is holds
    code, rep = run_json(["check-multimap", p, "--rmax", "1"], capsys)
    assert rep["holds"] is False and "r <= 1" in rep["note"]


def test_subdivide(files, capsys):
    p = files("x.json", interval(0, 1))
    code, rep = run_json(["subdivide", p, "--r", "3"], capsys)
    assert code == 0 and rep["size"] == 6 and rep["output"]["denom"] == 3
    assert run(["subdivide", p, "--r", "0"], capsys)[0] == 2


def test_check_shy(files, capsys):
    X, Y = interval(0, 2), interval(0, 1)
    p = files("f.json", DigitalMap(X, Y, [(0,), (1,), (0,)]))
    code, rep = run_json(["check-shy", p], capsys)
    assert rep["holds"] is False and "disconnected" in rep["reason"]


def test_check_afpp(files, capsys):
    code, rep = run_json(["check-afpp", files("two.json", image([(0,), (2,)], u=1))], capsys)
    assert code == 0 and rep["holds"] is False and rep["witness"]["table"] == [[[0], [2]], [[2], [0]]]
    assert run_json(["check-afpp", files("i.json", interval(0, 2))], capsys)[1]["holds"] is True
    big = files("big.json", interval(0, 39))
    assert run(["check-afpp", big], capsys)[0] == 3
    code, rep = run_json(["check-afpp", files("c.json", square_curve(1)[0]), "--threads", "2"], capsys)
    assert rep["holds"] is False


def test_check_bu(files, capsys):
    S = image([(1, 0), (0, 1), (-1, 0), (0, -1)], u=2)
    code, rep = run_json(["check-bu", files("s.json", S), "--m", "1", "--box", "2"], capsys)
    assert code == 0 and rep["holds"] is True
    asym = files("a.json", interval(0, 1))
    assert run(["check-bu", asym], capsys)[0] == 2


def test_check_covering(files, capsys):
    E, ecyc = square_curve(2)
    B, bcyc = square_curve(1)
    p = files("g.json", cycle_cover(ecyc, bcyc, E, B))
    assert run_json(["check-covering", p], capsys)[1]["holds"] is True
    assert run_json(["check-covering", p, "--radius", "2"], capsys)[1]["holds"] is False
    q = files("c.json", constant(interval(0, 1), interval(0, 1), (0,)))
    assert run_json(["check-covering", q], capsys)[1]["reason"] == "not surjective"


class TestFixtures:
    def test_list(self, capsys):
        code, rep = run_json(["fixtures", "list"], capsys)
        assert code == 0 and set(rep["fixtures"]) == set(FIXTURES)

    def test_run_named(self, capsys):
        code, out, _ = run(["fixtures", "run", "factors-not-prod"], capsys)
        assert code == 0
        assert "continuous under NP: yes; under c1: no" in out

    def test_run_all(self, capsys):
        code, rep = run_json(["fixtures", "run", "--all", "--strict"], capsys)
        assert code == 0 and rep["holds"] is True

    def test_bad_invocations(self, capsys):
        assert run(["fixtures", "run"], capsys)[0] == 2
        assert run(["fixtures", "run", "nope"], capsys)[0] == 2


class TestInputErrors:
    def test_schema_location(self, files, capsys):
        p = files("bad.json", json.dumps({"dim": 1, "points": [[0]], "adjacency": {"kind": "cu"}}))
        code, _, err = run(["components", p], capsys)
        assert code == 2 and "$.adjacency: missing field 'u'" in err

    def test_json_syntax(self, files, capsys):
        p = files("broken.json", '{"dim": 1,\n  "points": [[0],, ]}')
        code, _, err = run(["components", p], capsys)
        assert code == 2 and "broken.json:2:18" in err

    def test_missing_file(self, tmp_path, capsys):
        assert run(["components", str(tmp_path / "none.json")], capsys)[0] == 2

    def test_usage(self, capsys):
        with pytest.raises(SystemExit) as e:
            main(["check-multimap", "x.json", "--notion", "bogus"])
        assert e.value.code == 2
        with pytest.raises(SystemExit) as e:
            main(["path", "x.json", "a,b", "1"])
        assert e.value.code == 2


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "digitop", "fixtures", "run", "curve-8-not-contractible"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "contractible: no" in out.stdout
