import json
import subprocess
import sys

import pytest

from mcg_farrell.assembly import FarrellReport
from mcg_farrell.cli import ClassesReport, TableReport, TorsionReport, VerifyReport, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_torsion_text(capsys):
    code, out, _ = run(capsys, "torsion", "--genus", "2", "--punctures", "1")
    assert code == 0
    assert "torsion primes 2, 3, 5" in out
    assert "p=2: (0,6), (1,2)" in out
    assert "p=3: (0,4)" in out
    assert "p=5: (0,3)" in out


def test_torsion_json(capsys):
    code, d = run_json(capsys, "torsion", "--genus", "3", "--punctures", "6")
    assert code == 0
    assert d["primes"] == [{"p": 2, "solutions": [[0, 8]]}]
    assert TorsionReport.from_dict(d).to_dict() == d


def test_torsion_empty_and_errors(capsys):
    code, d = run_json(capsys, "torsion", "--genus", "1", "--punctures", "9")
    assert code == 0 and d["primes"] == []
    code, _, err = run(capsys, "torsion", "--genus", "0", "--punctures", "1")
    assert code == 2 and "genus" in err
    code, _, err = run(capsys, "torsion", "--genus", "2", "--punctures", "1", "--prime", "6")
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["torsion", "--genus", "x", "--punctures", "1"])
    assert exc.value.code == 2


def test_classes(capsys):
    code, d = run_json(capsys, "classes", "--genus", "3", "--punctures", "3", "--prime", "3")
    assert code == 0
    shown = {f"({','.join(map(str, c['data']['ordered']))}|{','.join(map(str, c['data']['suffix']))})" for c in d["classes"]}
    assert shown == {"(1,2,2|2,2)", "(1,2,1|1,1)", "(1,1,2|1,1)", "(1,1,1|1,2)"}
    assert ClassesReport.from_dict(d).to_dict() == d

    code, out, _ = run(capsys, "classes", "--genus", "2", "--punctures", "4", "--prime", "3")
    assert [line.split()[0] for line in out.splitlines()[1:]] == ["(1,1,2,2|)", "(1,2,1,2|)", "(1,2,2,1|)"]

    code, d = run_json(capsys, "classes", "--genus", "2", "--punctures", "1", "--prime", "7")
    assert code == 0 and d["classes"] == []

    code, d = run_json(capsys, "classes", "--genus", "2", "--punctures", "1", "--prime", "2")
    assert code == 0 and all(c["rule"] is None for c in d["classes"])

    code, _, _ = run(capsys, "classes", "--genus", "2", "--punctures", "1", "--prime", "9")
    assert code == 2


def test_farrell_text(capsys):
    code, out, _ = run(capsys, "farrell", "--genus", "1", "--punctures", "2", "--prime", "2")
    assert code == 0
    assert "total   even: Z/4  odd: Z/2" in out
    code, out, _ = run(capsys, "farrell", "--genus", "2", "--punctures", "3", "--prime", "3")
    assert "total   even: 3Z/3  odd: 6Z/3" in out
    assert "DISCREPANCY" not in out


def test_farrell_flagged(capsys):
    code, out, _ = run(capsys, "farrell", "--genus", "3", "--punctures", "2", "--prime", "3")
    assert code == 0
    assert "total   even: 7Z/3 ⊕ 2Z/9 or 5Z/3 ⊕ 3Z/9  odd: 5Z/3" in out
    assert "stated  even: 6Z/3 ⊕ Z/9 or 4Z/3 ⊕ 2Z/9  odd: 4Z/3" in out
    assert "DISCREPANCY" in out


def test_farrell_json_round_trip(capsys):
    code, d = run_json(capsys, "farrell", "--genus", "3", "--punctures", "2", "--prime", "3")
    assert d["discrepancy"] is True
    assert [c["rule"] for c in d["classes"]] == ["R3", "R4", "R4", "R6"]
    assert FarrellReport.from_dict(d).to_dict() == d


def test_farrell_unsupported(capsys):
    code, _, err = run(capsys, "farrell", "--genus", "2", "--punctures", "1", "--prime", "2")
    assert code == 2
    assert "(1|1,1,1,1,1)" in err


def test_reproduce_tables(capsys):
    code, d = run_json(capsys, "reproduce", "--table", "remark")
    assert code == 0
    assert len(d["rows"]) == 48
    assert all(r["status"] == "match" for r in d["rows"])
    assert TableReport.from_dict(d).to_dict() == d

    code, d = run_json(capsys, "reproduce", "--table", "genus2")
    assert all(r["status"] == "match" for r in d["rows"])

    code, d = run_json(capsys, "reproduce", "--table", "genus3")
    flagged = [r["label"] for r in d["rows"] if r["status"] != "match"]
    assert flagged == ["Γ_3^2 p=3"]

    code, d = run_json(capsys, "reproduce", "--table", "genus1")
    assert {r["status"] for r in d["rows"]} == {"match", "reference"}


def test_reproduce_genus_p(capsys):
    code, out, _ = run(capsys, "reproduce", "--table", "genus-p", "--prime", "7")
    assert code == 0
    assert "Γ_7^1 p=7  match      engine: even: Z/7; odd: 0" in out
    assert "Γ_7^3 p=7  match      engine: even: 0; odd: 0" in out
    code, _, _ = run(capsys, "reproduce", "--table", "genus-p", "--prime", "3")
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["reproduce", "--table", "genus9"])
    assert exc.value.code == 2


def test_verify_default(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    flags = [line for line in out.splitlines() if line.startswith("FLAG")]
    assert len(flags) == 2
    assert any("discrepancy:3,2,3" in f for f in flags)
    assert any("paper-literal:K5(45)" in f for f in flags)
    assert "NOTE  R2" in out
    assert "0 failed" in out


def test_verify_json(capsys):
    code, d = run_json(capsys, "verify")
    assert code == 0 and d["exit"] == 0
    assert VerifyReport.from_dict(d).to_dict() == d


def test_verify_paper_literal(capsys):
    code, out, _ = run(capsys, "verify", "--paper-literal")
    assert code == 3
    assert "FAIL  curated matrices have their declared orders: (45) on K_5" in out


def test_verify_empty_table(capsys, tmp_path):
    path = tmp_path / "empty.json"
    path.write_text("{}")
    code, out, _ = run(capsys, "verify", "--actions", str(path))
    assert code == 3 and out.startswith("FAIL")
    code, _, _ = run(capsys, "verify", "--actions", str(tmp_path / "missing.json"))
    assert code == 3


def test_output_is_deterministic(capsys):
    outs = {run(capsys, "farrell", "--genus", "3", "--punctures", "4", "--prime", "3")[1] for _ in range(3)}
    assert len(outs) == 1


def test_console_module():
    out = subprocess.run(
        [sys.executable, "-m", "mcg_farrell.cli", "torsion", "--genus", "1", "--punctures", "4"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert "torsion primes 2" in out.stdout
