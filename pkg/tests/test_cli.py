import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from hermcalc.cli import main

DATA = Path(__file__).parent / "data"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def report(tmp_path, *argv):
    path = tmp_path / "r.json"
    code, _ = run(*argv, "--report", str(path))
    return code, json.loads(path.read_text())


def verdicts(rep):
    return {v["name"]: v for v in rep["verdicts"]}


def test_check_kahler(tmp_path):
    code, rep = report(tmp_path, "check", str(DATA / "kahler_flat.json"))
    assert code == 0 and rep["exit_code"] == 0
    assert all(v["holds"] for v in rep["verdicts"])


def test_check_skt_not_kahler(tmp_path):
    code, rep = report(tmp_path, "check", str(DATA / "skt_c2.json"))
    assert code == 1
    v = verdicts(rep)
    assert not v["kahler"]["holds"]
    assert v["kahler"]["witness"] == "(-i) dz1^dz2^dzb2 + (i) dz2^dzb1^dzb2"
    assert v["skt"]["holds"] and v["special"]["holds"]


def test_check_special_c3(tmp_path):
    code, rep = report(tmp_path, "check", str(DATA / "special_c3.json"))
    v = verdicts(rep)
    assert code == 1
    assert v["special"]["holds"] and v["astheno_kahler"]["holds"] and not v["kahler"]["holds"]


def test_malformed_index(tmp_path, capsys):
    code, rep = report(tmp_path, "check", str(DATA / "bad_index.json"))
    assert code == 2
    assert rep["error"]["path"] == "metric[0].holo[0]"
    assert "metric[0].holo[0]" in capsys.readouterr().err


def test_non_positive_metric_is_input_error(tmp_path):
    m = json.loads((DATA / "kahler_flat.json").read_text())
    m["metric"][0]["coeff"] = [[0, 1], [-1, 1]]
    p = tmp_path / "m.json"
    p.write_text(json.dumps(m))
    code, _ = run("check", str(p))
    assert code == 2


def test_deform_constant_family(tmp_path):
    code, rep = report(tmp_path, "deform", str(DATA / "deform_constant.json"))
    assert code == 0 and all(v["holds"] for v in rep["verdicts"])
    assert rep["seed"] == 7


def test_deform_metric_variation_residual(tmp_path):
    code, rep = report(tmp_path, "deform", str(DATA / "deform_eta.json"))
    assert code == 1
    v = verdicts(rep)["first_order_k1"]
    # i dz1^dzb1^dz2^dzb2 in canonical order
    assert v["witness"] == "(-i) dz1^dz2^dzb1^dzb2"


def test_deform_holomorphic_function():
    code, out = run("deform", str(DATA / "deform_holomorphy.json"))
    assert code == 0 and "holomorphic_1: holds" in out


def test_deform_truncation_too_low():
    code, _ = run("deform", str(DATA / "deform_truncation.json"))
    assert code == 2


def test_deform_oracle_mismatch_exits_3(tmp_path, monkeypatch):
    import hermcalc.cli as cli
    from hermcalc.core import BiForm

    monkeypatch.setattr(cli, "order1_jet_oracle", lambda base, fam, mf, k: BiForm.dz(1, base.dim))
    code, rep = report(tmp_path, "deform", str(DATA / "deform_constant.json"))
    assert code == 3
    assert rep["error"]["oracle"] == "dz1" and rep["error"]["direct"] == "0"


def test_blowup_kahler(tmp_path):
    code, rep = report(tmp_path, "blowup", str(DATA / "blowup_kahler.json"))
    assert code == 0 and all(v["holds"] for v in rep["verdicts"])


def test_blowup_chart_threshold(tmp_path):
    code, rep = report(tmp_path, "blowup", str(DATA / "blowup_chart.json"))
    assert code == 0
    assert rep["values"]["positivity_threshold"] == 1


def test_blowup_non_closed_omega(tmp_path):
    code, rep = report(tmp_path, "blowup", str(DATA / "blowup_nonclosed.json"))
    assert code == 2
    assert rep["error"]["path"] == "blowup.omega" and rep["error"]["witness"]


def test_missing_sections():
    assert run("deform", str(DATA / "kahler_flat.json"))[0] == 2
    assert run("blowup", str(DATA / "kahler_flat.json"))[0] == 2


def test_identities_default_seed_passes(tmp_path):
    code, rep = report(tmp_path, "identities", "--cases", "5")
    assert code == 0
    assert {r["status"] for r in rep["identities"]} == {"pass"}


@pytest.mark.parametrize("mutation,victim", [("delbar-sign", "dolbeault_squares"),
                                             ("contract-sign", "extension_equals_substitution")])
def test_identities_detect_injected_bugs(tmp_path, mutation, victim):
    code, rep = report(tmp_path, "identities", "--cases", "10", "--mutate", mutation)
    assert code == 1
    row = {r["name"]: r for r in rep["identities"]}[victim]
    assert row["status"] == "fail" and row["failing_case"].startswith("0/" + victim)


def test_identities_n1_degrades_gracefully(tmp_path):
    code, rep = report(tmp_path, "identities", "--n", "1", "--cases", "5")
    assert code == 0
    statuses = {r["name"]: r["status"] for r in rep["identities"]}
    assert statuses["first_order_oracle_equivalence"] == "vacuous"
    assert set(statuses.values()) <= {"pass", "vacuous"}


def test_identities_bad_sizes():
    assert run("identities", "--n", "0")[0] == 2


@pytest.mark.parametrize("argv", [("check", "kahler_flat.json"), ("deform", "deform_eta.json"),
                                  ("blowup", "blowup_chart.json"), ("identities", "--seed", "4", "--cases", "3")])
def test_reports_are_byte_identical(tmp_path, argv):
    argv = [str(DATA / a) if a.endswith(".json") else a for a in argv]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main([*argv, "--report", str(a)], out=io.StringIO())
    main([*argv, "--report", str(b)], out=io.StringIO())
    assert a.read_bytes() == b.read_bytes()


def test_timing_is_opt_in(tmp_path):
    _, rep = report(tmp_path, "check", str(DATA / "kahler_flat.json"))
    assert "timing" not in rep
    _, rep = report(tmp_path, "check", str(DATA / "kahler_flat.json"), "--timing")
    assert rep["timing"]["seconds"] >= 0


def test_quiet_prints_nothing_on_success():
    code, out = run("check", str(DATA / "kahler_flat.json"), "--quiet")
    assert code == 0 and out == ""
    code, out = run("--quiet", "check", str(DATA / "skt_c2.json"))
    assert code == 1 and "kahler: FAILS" in out and "skt" not in out


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hermcalc", "check", str(DATA / "skt_c2.json")],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert "kahler: FAILS" in proc.stdout
