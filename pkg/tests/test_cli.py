import json

import pytest

from ybl import cli, suites
from ybl.exact_algebra import Scalars


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_emit_mu_minus(capsys):
    code, out, _ = run(capsys, "emit", "mu", "minus", "g1_1", "--lambda", "1,1", "--symbolic")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "ybl/1"
    assert doc["operator"]["matrix"] == [["z1", "0"], ["h", "z2"]]
    assert doc["operator"]["sourceBasis"] == [[1, 2], [2, 1]]


def test_emit_wronskian_relations(capsys):
    code, out, _ = run(capsys, "emit", "wronskian", "--lambda", "1,1", "--symbolic")
    doc = json.loads(out)
    rel = {r["coefficient"]: r["value"] for r in doc["relations"]}
    assert set(rel) == {"u^1", "u^0"}
    sc = Scalars.symbolic(2, 2)
    z1, z2 = sc.z
    g11, g21 = sc.gamma(1, 1), sc.gamma(2, 1)
    assert cli.parse_expr(rel["u^1"], sc) == z1 + z2 - g11 - g21


def test_emit_pairing_angle(capsys):
    code, out, _ = run(capsys, "emit", "pairing", "angle", "1", "1", "--lambda", "1,1", "--symbolic")
    value = json.loads(out)["value"]
    assert value == "2/(z1 - z2 - h)(z1 - z2 + h)"


def test_emit_rationals_as_fractions(capsys):
    code, out, _ = run(capsys, "emit", "pairing", "angle", "1", "1", "--lambda", "1,1",
                       "--spec-z", "0,1", "--h", "1/2")
    # 2 / ((z1 - z2 + h)(z1 - z2 - h)) at z = (0, 1), h = 1/2
    assert json.loads(out)["value"] == "8/3"


@pytest.mark.parametrize("obj,args", [("xi", []), ("bethe-matrix", ["1", "2"]), ("quantum-matrix", ["bullet", "1"]),
                                      ("cm-matrix", [])])
def test_emit_objects_and_text(capsys, obj, args):
    code, out, _ = run(capsys, "emit", obj, *args, "--lambda", "1,1")
    assert code == 0 and json.loads(out)["object"] == obj
    code, out, _ = run(capsys, "emit", obj, *args, "--lambda", "1,1", "--format", "text")
    assert code == 0 and out.strip()


def test_emit_is_deterministic(capsys):
    a = run(capsys, "emit", "quantum-matrix", "star", "2", "--lambda", "2,1")[1]
    b = run(capsys, "emit", "quantum-matrix", "star", "2", "--lambda", "2,1")[1]
    assert a == b


def test_verify_symbolic_all(capsys):
    code, out, _ = run(capsys, "verify", "--N", "2", "--n", "2", "--lambda", "1,1", "--suite", "all", "--symbolic")
    assert code == 0
    doc = json.loads(out)
    assert doc["status"] == "pass"
    assert [s["suite"] for s in doc["suites"]] == sorted(suites.SUITES)
    for s in doc["suites"]:
        for c in s["checks"]:
            assert c["paperAnchor"].startswith("AC")
            assert ("witness" in c) == (c["status"] == "fail")


def test_verify_xi_specialized(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "xi", "--n", "4", "--lambda", "2,1,1",
                       "--spec-z", "0,1,5,17", "--h", "3")
    assert code == 0


def test_verify_reports_are_reproducible(capsys):
    argv = ("verify", "--lambda", "2,1", "--suite", "wronskian,xi", "--no-timings")
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_verify_failure_exit_code(capsys, monkeypatch):
    def broken(lam, sc, cfg):
        yield suites._check("always-wrong", "AC0:test", lambda: "witness text")
    monkeypatch.setitem(suites.SUITES, "xi", broken)
    code, out, _ = run(capsys, "verify", "--lambda", "1,1", "--suite", "xi")
    assert code == 1
    c = json.loads(out)["suites"][0]["checks"][0]
    assert c["status"] == "fail" and c["witness"] == "witness text"


def test_arithmetic_error_becomes_failure():
    def boom():
        raise ArithmeticError("does not commute")
    c = suites._check("x", "AC0:test", boom)
    assert c.status == "fail" and "does not commute" in c.witness


def test_skip_for_empty_block(capsys):
    code, out, _ = run(capsys, "verify", "--lambda", "2,0", "--suite", "limit-h")
    assert code == 0
    assert json.loads(out)["suites"][0]["checks"][0]["status"] == "skip"


@pytest.mark.parametrize("argv", [
    ("verify", "--lambda", "1,1", "--suite", ""),
    ("verify", "--lambda", "1,1"),
    ("verify", "--lambda", "1,1", "--suite", "nonsense"),
    ("verify", "--lambda", "1,1", "--n", "3", "--suite", "xi"),
    ("verify", "--lambda", "1,1", "--spec-z", "0,0", "--suite", "xi"),
    ("verify", "--lambda", "1,1", "--spec-z", "0,1", "--h", "1", "--suite", "xi"),
    ("verify", "--lambda", "1,1", "--order", "0", "--suite", "qde"),
    ("emit", "mu", "minus", "g1_1 +", "--lambda", "1,1"),
    ("emit", "mu", "minus", "g1_2", "--lambda", "1,1"),
    ("emit", "pairing", "angle", "1", "--lambda", "1,1"),
])
def test_config_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert "config error" in err


def test_genericity_guard_names_factor(capsys):
    code, _, err = run(capsys, "verify", "--lambda", "1,1", "--spec-z", "0,1", "--h", "1", "--suite", "xi")
    assert code == 2 and "z1 - z2 + h" in err


def test_unknown_object_rejected(capsys):
    with pytest.raises(SystemExit) as e:
        cli.main(["emit", "teapot", "--lambda", "1,1"])
    assert e.value.code == 2


def test_out_file(tmp_path, capsys):
    path = tmp_path / "r.txt"
    code = cli.main(["verify", "--lambda", "1,1", "--suite", "hecke", "--out", str(path), "--format", "text"])
    assert code == 0
    assert path.read_text().strip().endswith("overall: pass")


def test_parse_expr():
    sc = Scalars.symbolic(2, 2)
    z1, z2 = sc.z
    assert cli.parse_expr("(z1 - z2)^2/h + 3", sc) == (z1 - z2) ** 2 / sc.h + 3
    with pytest.raises(cli.ConfigError):
        cli.parse_expr("w7", sc)
    with pytest.raises(cli.ConfigError):
        cli.parse_expr("z1 ** z2", sc)


def test_render():
    sc = Scalars.symbolic(2, 2)
    z1, z2, h = sc.z[0], sc.z[1], sc.h
    assert cli.render(sc.const(3)) == "3"
    assert cli.render(sc.const(-3) / 4) == "-3/4"
    assert cli.render(z1 / (2 * h)) == "1/2*z1/(h)"
