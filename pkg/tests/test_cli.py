"""Tests for the report model, the check runner, and the CLI contract."""

import json
import subprocess
import sys

import pytest

from hhcalc.fields import Field
from hhcalc.algebra import zoo, algebra_to_json
from hhcalc.checks import run_checks, CHECK_IDS
from hhcalc.report import CheckOutcome, VerificationReport
from hhcalc.cli import main, load_algebra, LoadError

Q = Field.parse_spec("q")


def test_report_round_trip():
    r = VerificationReport("demo", "Q", 3, [
        CheckOutcome("thm1.1", "pass", {"a vs b": [1, 2, None]},
                     {"a vs b": [1, 2, None]}, ["note"]),
        CheckOutcome("thm3.8", "skipped", {}, {}, []),
    ])
    data = r.to_json_bytes()
    back = VerificationReport.from_json_bytes(data)
    assert back == r
    assert back.to_json_bytes() == data


def test_exit_code_logic():
    ok = VerificationReport("x", "Q", 1,
                            [CheckOutcome("thm1.1", "skipped")])
    assert ok.exit_code == 0
    bad = VerificationReport("x", "Q", 1,
                             [CheckOutcome("thm1.1", "fail")])
    assert bad.exit_code == 1


def test_run_checks_all_ids_present():
    a = zoo("cyclic:2", Q)
    rep = run_checks(a, ["all"], 1)
    assert [c.check for c in rep.checks] == list(CHECK_IDS)
    assert all(c.status in ("pass", "skipped", "hypothesis-violated")
               for c in rep.checks)


def test_run_checks_rejects_unknown_id():
    with pytest.raises(ValueError):
        run_checks(zoo("cyclic:2", Q), ["thm9.9"], 1)


def test_run_checks_canonical_order():
    a = zoo("dual-numbers", Q)
    rep = run_checks(a, ["thm2.7", "thm1.1", "lem2.3"], 1)
    assert [c.check for c in rep.checks] == ["thm1.1", "lem2.3", "thm2.7"]


def test_cli_verify_exit_zero(capsys):
    code = main(["verify", "--algebra", "cyclic:2", "--field", "q",
                 "--checks", "thm1.1,thm2.7", "--nmax", "2"])
    out = capsys.readouterr().out
    assert code == 0
    assert "thm1.1" in out and "pass" in out


def test_cli_corruption_injection_exits_one(capsys):
    code = main(["verify", "--algebra", "cyclic:2", "--checks", "thm2.7",
                 "--nmax", "1", "--inject-corruption"])
    assert code == 1
    assert "synthetic-corruption" in capsys.readouterr().out


def test_cli_json_report(tmp_path, capsys):
    path = tmp_path / "report.json"
    code = main(["verify", "--algebra", "dual-numbers", "--checks",
                 "lem2.3", "--nmax", "2", "--json", str(path)])
    assert code == 0
    capsys.readouterr()
    rep = VerificationReport.from_json_bytes(path.read_bytes())
    assert rep.algebra == "dual-numbers"
    assert rep.checks[0].check == "lem2.3"
    assert rep.to_json_bytes() == path.read_bytes()


def test_cli_load_error_exits_two(capsys):
    assert main(["verify", "--algebra", "no-such-algebra",
                 "--checks", "all"]) == 2
    assert main(["table", "--algebra", "file:/does/not/exist.json"]) == 2


def test_cli_table_output(capsys):
    code = main(["table", "--algebra", "dual-numbers", "--nmax", "2"])
    out = capsys.readouterr().out
    assert code == 0
    assert "dim HH^n" in out


def test_cli_frobenius_output(capsys):
    code = main(["frobenius", "--algebra", "taft:2", "--field", "fp:5"])
    out = capsys.readouterr().out
    assert code == 0
    assert "order: 2" in out


def test_load_algebra_from_file(tmp_path):
    a = zoo("trunc:3", Q)
    doc = algebra_to_json(a)
    path = tmp_path / "alg.json"
    path.write_text(json.dumps(doc))
    b = load_algebra(f"file:{path}", Q)
    assert b.dim == 3 and b.mul == a.mul


def test_load_algebra_bad_json_has_diagnostics(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"dim": 2,, }')
    with pytest.raises(LoadError) as exc:
        load_algebra(f"file:{path}", Q)
    assert "line" in str(exc.value)


def test_deterministic_output_bytes():
    a = zoo("cyclic:2", Q)
    r1 = run_checks(a, ["thm2.7", "lem2.3"], 2, seed=5).to_json_bytes()
    r2 = run_checks(a, ["thm2.7", "lem2.3"], 2, seed=5).to_json_bytes()
    assert r1 == r2


def test_entry_point_script():
    out = subprocess.run([sys.executable, "-m", "hhcalc.cli", "table",
                          "--algebra", "cyclic:2", "--nmax", "1"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert "dim HH^n" in out.stdout
