import io
import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from descentlab.cli import EXIT_BOUND, EXIT_DOMAIN, jsonable, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def schema(name):
    return json.loads(resources.files("descentlab.schemas").joinpath(f"{name}.json").read_text())


def test_negpell_41_text():
    code, out, _ = call("negpell", "41")
    assert code == 0 and out == "T=64 U=10 via (a,b)=(5,2),(x,y)=(3,-1)\n"


def test_negpell_221():
    code, out, _ = call("negpell", "221")
    assert code == 0 and "unsolvable" in out and "(7/13)=-1" in out


def test_pell_group_aliases():
    assert call("pell", "negpell", "41")[1] == call("negpell", "41")[1] == call("pell", "descend2", "41")[1]


def test_json_flag_position():
    a = call("--json", "negpell", "4777")[1]
    b = call("negpell", "4777", "--json")[1]
    assert a == b and json.loads(a)["witness"]["T"] == "-325431264"


@pytest.mark.parametrize("argv,name", [
    (("negpell", "41"), "negpell"),
    (("negpell", "221"), "negpell"),
    (("pell", "descend1", "221"), "descent"),
    (("pell", "fund", "4777"), "pell_fund"),
    (("pell", "fund", "221"), "pell_fund"),
    (("pell", "fund", "41", "--rhs", "1"), "pell_fund"),
    (("cf", "octic", "5", "4"), "octic"),
    (("cf", "octic", "-3", "1"), "octic"),
    (("cf", "table", "octic-all"), "table"),
    (("cf", "table", "octic-unramified"), "table"),
    (("cf", "table", "caseA"), "table"),
    (("cf", "table", "caseB"), "table"),
    (("ell", "search", "-p", "797"), "torsor"),
    (("hasse", "laws", "-m", "41", "--samples", "20", "--box", "1"), "hasse_laws"),
    (("verify",), "verify"),
    (("arith", "factor", "4777"), "arith"),
    (("arith", "twosquares", "4777"), "arith"),
    (("arith", "jacobi", "7", "13"), "arith"),
    (("arith", "quartic", "2", "17"), "arith"),
])
def test_json_schemas(argv, name):
    code, out, _ = call(*argv, "--json")
    assert code == 0
    jsonschema.validate(json.loads(out), schema(name))


def test_all_json_integers_are_strings():
    def walk(x):
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        elif isinstance(x, list):
            for v in x:
                walk(v)
        else:
            assert x is None or isinstance(x, (str, bool))

    for argv in (("pell", "tquf", "221"), ("cf", "t14", "73", "89"), ("cf", "quartic", "4777"),
                 ("pell", "descend1", "4777")):
        code, out, _ = call(*argv, "--json")
        assert code == 0
        walk(json.loads(out))


def test_table_octic_unramified_text():
    code, out, _ = call("cf", "table", "octic-unramified")
    lines = out.splitlines()
    assert code == 0 and [ln.split()[0] for ln in lines] == ["p=41", "p=113", "p=137", "p=257"]
    assert "[erratum] corrections: a: -7 -> 7" in lines[1]


def test_verify_counts():
    code, out, _ = call("verify", "--json")
    r = json.loads(out)
    assert code == 0 and r["counts"] == {"pass": "27", "erratum": "2", "fail": "0"}
    assert sorted(c["name"] for c in r["checks"] if c["status"] == "erratum") == \
        ["octic-all 73", "octic-unramified 113"]


@pytest.mark.parametrize("argv", [
    ("arith", "factor", "0"),
    ("arith", "jacobi", "3", "8"),
    ("negpell", "45"),
    ("pell", "fund", "16"),
    ("cf", "t14", "17", "41"),
    ("ell", "search", "-p", "7"),
    ("cf", "octic", "2", "1"),
])
def test_domain_errors_exit_2(argv):
    code, out, err = call(*argv)
    assert code == EXIT_DOMAIN and out == "" and err.startswith("domain error")


def test_bound_exhausted_exit_3():
    code, _, err = call("ell", "search", "-p", "797", "--bound", "50")
    assert code == EXIT_BOUND and "50" in err
    assert call("cf", "octic", "57", "10", "--bound", "1")[0] == EXIT_BOUND


@pytest.mark.parametrize("argv", [("negpell", "4x"), ("negpell", "41", "--frobnicate"),
                                  ("cf", "table", "nope"), ("ell", "search", "-p", "5", "--bound", "0")])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as e:
        run(list(argv))
    assert e.value.code == 2


def test_determinism():
    for argv in (("verify",), ("cf", "table", "caseA", "--json"), ("hasse", "laws", "-m", "73")):
        assert call(*argv) == call(*argv)


def test_cache_flag_and_env(tmp_path, monkeypatch):
    path = tmp_path / "cache.txt"
    assert call("arith", "factor", "4777", "--cache", str(path))[0] == 0
    assert "4777\t17^1,281^1" in path.read_text()
    env_path = tmp_path / "env.txt"
    monkeypatch.setenv("DESCENTLAB_CACHE", str(env_path))
    assert call("arith", "factor", "221", "--cache", str(path))[0] == 0
    assert "221\t13^1,17^1" in env_path.read_text()
    assert "221" not in path.read_text()


def test_jsonable():
    assert jsonable({"a": (1, [2, None, True])}) == {"a": ["1", ["2", None, True]]}
    with pytest.raises(TypeError):
        jsonable(object())


def test_console_script_subprocess():
    r = subprocess.run([sys.executable, "-m", "descentlab.cli", "negpell", "41"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "T=64 U=10 via (a,b)=(5,2),(x,y)=(3,-1)\n"
    r = subprocess.run([sys.executable, "-m", "descentlab.cli", "arith", "factor", "0"],
                       capture_output=True, text=True)
    assert r.returncode == 2
