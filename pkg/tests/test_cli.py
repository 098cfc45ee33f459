import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from mftop.cli import run

FIX = Path(__file__).resolve().parent.parent / "fixtures"
TAU, POINT, SPACE3 = str(FIX / "tau.json"), str(FIX / "point.json"), str(FIX / "space3.json")


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def report(*argv):
    code, out, _ = call(*argv, "--format", "json")
    return code, json.loads(out)


@pytest.mark.parametrize(
    "argv,code",
    [
        (["verify", TAU], 0),
        (["verify", SPACE3], 0),
        (["nbd", TAU], 0),
        (["roundtrip", TAU], 0),
        (["roundtrip", SPACE3], 0),
        (["continuity", TAU, "--map", "id"], 0),
        (["continuity", TAU, "--map", "collapse"], 0),
        (["continuity", TAU, "--map", "swap"], 2),
        (["homeo", TAU, "--map", "id"], 0),
        (["homeo", TAU, "--map", "swap"], 2),
        (["product", TAU, POINT], 0),
        (["product", TAU, TAU, "--check", "basis,projections,smallest,base"], 0),
        (["base", TAU], 0),
        (["compact", TAU], 0),
        (["mine", "nbd-roundtrip"], 0),
        (["mine", "nbd-roundtrip", "--disable-axiom", "N1"], 2),
        (["mine", "--list"], 0),
    ],
)
def test_exit_codes(argv, code):
    assert call(*argv)[0] == code


def test_roundtrip_text():
    code, out, _ = call("roundtrip", TAU)
    assert code == 0 and "τ_{L_τ} = τ: PASS" in out.splitlines()


def test_continuity_criteria_listed():
    code, rep = report("continuity", TAU, "--map", "swap", "--criteria", "all")
    names = [c["name"] for c in rep["checks"]]
    assert names[:4] == [f"continuous ({c})" for c in ("open-preimage", "closed-preimage", "nbd-pullback", "nbd-witness")]
    assert rep["checks"][-1] == {"name": "criteria agree", "status": "PASS", "detail": {
        "closed-preimage": False, "nbd-pullback": False, "nbd-witness": False, "open-preimage": False}}
    code, rep = report("continuity", TAU, "--map", "id", "--criteria", "nbd-witness")
    assert len(rep["checks"]) == 2 and code == 0


def test_map_into_other_codomain():
    code, _, err = call("continuity", TAU, POINT, "--map", "id")
    assert code == 65 and "map" in err


def test_report_shape():
    code, rep = report("nbd", TAU, "--seed", "9")
    assert code == 0
    assert list(rep) == ["checks", "command", "families", "inputs", "seed", "status"]
    assert rep["seed"] == 9 and rep["inputs"] == [TAU] and rep["status"] == "PASS"
    assert len(rep["families"]["a"]) == 4 and len(rep["families"]["b"]) == 3


def test_global_flags_before_or_after():
    a = call("--format", "json", "--seed", "4", "compact", TAU)
    b = call("compact", TAU, "--format", "json", "--seed", "4")
    assert a == b and json.loads(a[1])["seed"] == 4


def test_timing_is_opt_in():
    _, rep = report("verify", TAU)
    assert "timing_ms" not in rep
    _, rep = report("verify", TAU, "--timing")
    assert rep["timing_ms"] >= 0


def test_budget_env_overrides(monkeypatch):
    monkeypatch.setenv("MFTOP_BUDGET_MS", "1")
    code, rep = report("mine", "product-map-continuous", "--budget-ms", "999999")
    assert code == 2 and rep["mining"]["complete"] is False
    monkeypatch.setenv("MFTOP_BUDGET_MS", "soon")
    assert call("verify", TAU)[0] == 64


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        [],
        ["verify"],
        ["verify", TAU, "--nope"],
        ["continuity", TAU],
        ["continuity", TAU, "--map", "id", "--criteria", "psychic"],
        ["product", TAU, POINT, "--check", "everything"],
        ["mine"],
        ["mine", "no-such-property"],
        ["mine", "nbd-roundtrip", "--disable-axiom", "N7"],
        ["--seed", "-1", "verify", TAU],
        ["--format", "xml", "verify", TAU],
    ],
)
def test_usage_errors(argv):
    assert call(*argv)[0] == 64


def test_input_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"universe": ["a"], "n": 1, "D": 2, "opens": [{"a": ["1/3"]}]}))
    code, _, err = call("verify", str(bad))
    assert code == 65 and "not on chain" in err
    assert call("verify", str(tmp_path / "missing.json"))[0] == 65
    assert call("continuity", TAU, "--map", "nothing")[0] == 65
    assert call("nbd", TAU, "--point", "zz")[0] == 65
    assert call("product", TAU, SPACE3)[0] == 65


def test_axiom_violation_exits_2(tmp_path):
    doc = json.loads(Path(TAU).read_text())
    doc["opens"] = doc["opens"][1:]
    path = tmp_path / "no-null.json"
    path.write_text(json.dumps(doc))
    code, rep = report("roundtrip", str(path))
    assert code == 2 and rep["checks"][0]["detail"]["violations"][0]["rule"] == "missing-null"
    code, rep = report("verify", str(path))
    assert code == 2
    code, rep = report("roundtrip", str(path), "--no-verify")
    assert code == 2 and [c["status"] for c in rep["checks"]] == ["PASS", "FAIL", "PASS"]


def test_help_exits_zero():
    assert call("--help")[0] == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mftop", "verify", TAU], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.endswith("status: PASS\n")
