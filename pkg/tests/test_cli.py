import io
import json
import subprocess
import sys

import pytest

from parint.cli import run

MS = "AC x:Slave . E y:Master . only(p_m(y), p_s(x))"
WMS = "PC x:Slave . SE y:Master . wonly(p_m(y), p_s(x))"


@pytest.fixture
def files(tmp_path):
    sig = {"types": [{"name": "Master", "ports": [{"name": "p_m", "weight": "2"}]},
                     {"name": "Slave", "ports": [{"name": "p_s", "weight": "3"}]}]}
    paths = {
        "sig": tmp_path / "ms.json",
        "ok": tmp_path / "ok.json",
        "bad": tmp_path / "bad.json",
        "ms": tmp_path / "ms.foeil",
        "wms": tmp_path / "wms.wfoeil",
        "t": tmp_path / "t.json",
        "assoc1": tmp_path / "assoc1.epil",
        "assoc2": tmp_path / "assoc2.epil",
    }
    paths["sig"].write_text(json.dumps(sig))
    ok = [["p_m@1.1", "p_s@2.1"], ["p_m@1.1", "p_s@2.2"]]
    paths["ok"].write_text(json.dumps(ok))
    paths["bad"].write_text(json.dumps(ok[::-1]))
    paths["ms"].write_text(MS + "\n")
    paths["wms"].write_text("// weighted master/slave\n" + WMS + "\n")
    paths["t"].write_text(json.dumps({"types": [{"name": "T", "ports": ["a", "b", "c"]}]}))
    paths["assoc1"].write_text("a ; (b ; c)")
    paths["assoc2"].write_text("(a ; b) ; c")
    return {k: str(v) for k, v in paths.items()}


def cli(*argv):
    out = io.StringIO()
    code = run([str(a) for a in argv], out)
    return code, out.getvalue().strip()


def test_check(files):
    ms = ["--sig", files["sig"], "-r", "Master=1,Slave=2"]
    assert cli("check", files["ms"], *ms, "--trace", files["ok"]) == (0, "SAT-TRACE")
    assert cli("check", files["ms"], *ms, "--trace", files["bad"], "--oracle") == (1, "UNSAT-TRACE")


def test_sat_valid(files):
    ms = ["--sig", files["sig"], "-r", "Master=1,Slave=2"]
    assert cli("sat", MS, *ms) == (0, "SAT")
    assert cli("sat", "p_m & !p_m", *ms) == (1, "UNSAT")
    assert cli("valid", "true", *ms) == (0, "VALID")
    assert cli("valid", MS, *ms) == (1, "NOT-VALID")


def test_equiv(files):
    t = ["--sig", files["t"], "-r", "T=1"]
    assert cli("equiv", files["assoc1"], files["assoc2"], *t) == (0, "EQUIVALENT")
    code, text = cli("equiv", "a ; b", "b ; a", *t)
    assert code == 1
    assert text.splitlines()[0] == "NOT-EQUIVALENT"
    assert text.splitlines()[1].startswith("witness: ")


def test_weight_and_wequiv(files):
    ms = ["--sig", files["sig"], "-r", "Master=1,Slave=2"]
    assert cli("weight", files["wms"], *ms, "--trace", files["ok"], "--semiring", "nat") == (0, "36")
    assert cli("weight", files["wms"], *ms, "--trace", files["ok"], "--semiring", "maxplus",
               "--oracle") == (0, "10")
    assert cli("wequiv", f"({WMS}) w| ({WMS})", f"<2> w& ({WMS})", *ms)[0] == 0
    assert cli("wequiv", WMS, f"<2> w& ({WMS})", *ms)[0] == 1


def test_compile(files, tmp_path):
    ms = ["--sig", files["sig"], "-r", "Master=1,Slave=2"]
    out = tmp_path / "ms.dot"
    code, text = cli("compile", MS, *ms, "--out", out, "--format", "dot")
    assert code == 0 and out.read_text().startswith("digraph")
    out = tmp_path / "wms.json"
    assert cli("compile", WMS, *ms, "--out", out, "--semiring", "nat")[0] == 0
    data = json.loads(out.read_text())
    assert data["semiring"] == "nat" and "ter" in data


def test_template():
    assert cli("template", "master_slave") == (0, MS)
    assert cli("template", "master_slave", "--weighted") == (0, WMS)


def test_errors(files, capsys):
    ms = ["--sig", files["sig"], "-r", "Master=1,Slave=2"]
    assert cli("sat", "p_m & (", *ms)[0] == 2
    assert cli("sat", "p_m(x)", *ms)[0] == 2
    assert cli("sat", "!(p_m ~ p_s)", *ms)[0] == 2
    assert cli("sat", "!(p_m ~ p_s)", *ms, "--relaxed-negation")[0] == 0
    assert cli("sat", "true", "--sig", files["sig"], "-r", "Master=1")[0] == 2
    assert cli("sat", "true", "--sig", files["sig"], "-r", "Master=1,Slave=2", "--cap", "2")[0] == 2
    assert cli("check", MS, *ms, "--trace", files["sig"])[0] == 2
    assert cli("weight", WMS, *ms, "--trace", files["ok"], "--semiring", "reals")[0] == 2
    with pytest.raises(SystemExit) as exc:
        run(["frobnicate"], io.StringIO())
    assert exc.value.code == 2


def test_syntax_error_reports_position(files, capsys):
    cli("sat", "p_m & & p_s", "--sig", files["sig"], "-r", "Master=1,Slave=2")
    err = capsys.readouterr().err
    assert "FormulaSyntaxError" in err and "6" in err


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "parint", "sat", MS, "--sig", files["sig"],
                           "-r", "Master=1,Slave=2"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "SAT"
