"""Front-end contract: flags, exit codes, documents, determinism."""

import json
import subprocess
import sys

import pytest

from bvlab import cli
from bvlab.bitstring import BitString
from bvlab.truthtable import bv_function, dump_table, pi_function


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    monkeypatch.delenv("BVLAB_THREADS", raising=False)
    monkeypatch.delenv("BVLAB_TAMPER", raising=False)


def run_cli(capsys, *argv):
    status = cli.main(list(argv))
    out = capsys.readouterr().out
    return status, out


def run_json(capsys, *argv):
    status, out = run_cli(capsys, *argv)
    return status, json.loads(out)


def test_run_with_planted_key(capsys):
    status, doc = run_json(
        capsys, "run", "--algorithm", "ccnot-bva", "--gamma", "101"
    )
    assert status == 0
    assert doc["recovered"] == "101"
    assert doc["expected"] == "101"
    assert doc["matches"] is True
    assert doc["oracle_calls"] == 2
    assert doc["top_distribution"] == {"101": 1.0}
    assert all(c["ok"] for c in doc["stage_checks"])


def test_run_pi_reports_middle(capsys):
    status, doc = run_json(capsys, "run", "--algorithm", "pi", "--gamma", "0")
    assert status == 0
    assert doc["recovered"] == "0"
    assert doc["middle_distribution"] == {"0": 1.0}


def test_run_text_format(capsys):
    status, out = run_cli(
        capsys, "run", "--algorithm", "bva", "--gamma", "11", "--format", "text"
    )
    assert status == 0
    assert "recovered     11" in out
    assert "top distribution" in out
    assert "stage checks" in out


def test_run_from_promise_keeping_table(tmp_path, capsys):
    path = tmp_path / "f.tbl"
    path.write_text(dump_table(bv_function(BitString.parse("011"))))
    status, doc = run_json(
        capsys, "run", "--algorithm", "single-oracle-bva", "--table", str(path)
    )
    assert status == 0
    assert doc["recovered"] == "011"
    assert doc["promise_verified"] is True


def test_run_from_shifted_promise_table(tmp_path, capsys):
    path = tmp_path / "f.tbl"
    path.write_text(dump_table(pi_function(BitString.parse("110"))))
    status, doc = run_json(capsys, "run", "--algorithm", "pi", "--table", str(path))
    assert status == 0
    assert doc["promise_verified"] is True


def test_run_constant_one_table_fails(tmp_path, capsys):
    path = tmp_path / "const1.tbl"
    path.write_text("arity 2\n1111\n")
    status, doc = run_json(capsys, "run", "--algorithm", "bva", "--table", str(path))
    assert status == 1
    assert doc["promise_verified"] is False
    assert doc["recovered"] == "00"  # the run itself was deterministic


def test_run_non_deterministic_table_fails(tmp_path, capsys):
    path = tmp_path / "and.tbl"
    path.write_text("arity 2\n0001\n")
    status, doc = run_json(capsys, "run", "--algorithm", "bva", "--table", str(path))
    assert status == 1
    assert doc["recovered"] is None
    assert "failure" in doc


def test_run_usage_errors(tmp_path, capsys):
    status, _ = run_cli(capsys, "run", "--algorithm", "bva", "--gamma", "12")
    assert status == 2
    status, _ = run_cli(
        capsys, "run", "--algorithm", "bva", "--table", str(tmp_path / "none.tbl")
    )
    assert status == 2
    bad = tmp_path / "bad.tbl"
    bad.write_text("arity 2\n01\n")
    status, _ = run_cli(capsys, "run", "--algorithm", "bva", "--table", str(bad))
    assert status == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["run", "--algorithm", "bva"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["run", "--algorithm", "nope", "--gamma", "1"])
    assert exc.value.code == 2


def test_run_seeded_sample(capsys):
    status, doc = run_json(
        capsys, "run", "--algorithm", "bva", "--gamma", "110", "--seed", "9"
    )
    assert status == 0
    assert doc["sample"] == "110"  # point mass: any seed lands on the key


def test_output_flag_writes_file_and_keeps_stdout_quiet(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    status, out = run_cli(
        capsys,
        "run", "--algorithm", "bva", "--gamma", "10", "--output", str(out_path),
    )
    assert status == 0
    assert out == ""
    assert json.loads(out_path.read_text())["recovered"] == "10"


def test_certify_exhaustive(capsys):
    status, doc = run_json(capsys, "certify", "--n", "2")
    assert status == 0
    assert doc["mode"] == "exhaustive"
    assert doc["functions_per_kind"] == 16
    assert doc["all_passed"] is True
    assert sorted(doc["kinds"]) == [
        "phase", "single-xor", "standard-bv", "toffoli", "two-register",
    ]
    entry = doc["kinds"]["phase"]
    assert entry["structure"] == "signed-diagonal"
    assert entry["unitary_failures"] == 0
    assert doc["kinds"]["toffoli"]["structure"] == "permutation"


def test_certify_random_mode(capsys, monkeypatch):
    monkeypatch.setattr(cli, "CERTIFY_RANDOM_COUNT", 5)
    status, doc = run_json(capsys, "certify", "--n", "4", "--seed", "3")
    assert status == 0
    assert doc["mode"] == "random"
    assert doc["functions_per_kind"] == 5


def test_certify_capacity_and_usage(capsys):
    assert run_cli(capsys, "certify", "--n", "5")[0] == 2
    assert run_cli(capsys, "certify", "--n", "0")[0] == 2


def test_certify_tamper_hook_is_caught(capsys, monkeypatch):
    monkeypatch.setenv("BVLAB_TAMPER", "two-register:0:1")
    status, doc = run_json(capsys, "certify", "--n", "1")
    assert status == 1
    assert doc["all_passed"] is False
    broken = doc["kinds"]["two-register"]
    assert broken["unitary_failures"] == 4  # every function's matrix was bent
    assert doc["kinds"]["toffoli"]["unitary_failures"] == 0


def test_certify_tamper_hook_validation(capsys, monkeypatch):
    monkeypatch.setenv("BVLAB_TAMPER", "gibberish")
    assert run_cli(capsys, "certify", "--n", "1")[0] == 2


def test_sweep(capsys):
    status, doc = run_json(capsys, "sweep", "--n", "2")
    assert status == 0
    assert doc["keys"] == 4
    assert doc["runs"] == 16
    assert doc["successes"] == 16
    assert doc["failures"] == []
    assert doc["all_passed"] is True
    assert doc["per_algorithm"]["bva"] == {"successes": 4, "oracle_calls": 4}
    assert doc["per_algorithm"]["ccnot-bva"] == {"successes": 4, "oracle_calls": 8}


def test_sweep_cap(capsys):
    assert run_cli(capsys, "sweep", "--n", "13")[0] == 2
    assert run_cli(capsys, "sweep", "--n", "4", "--cap", "3")[0] == 2


def test_sweep_thread_env(capsys, monkeypatch):
    monkeypatch.setenv("BVLAB_THREADS", "1")
    status, serial = run_cli(capsys, "sweep", "--n", "2")
    assert status == 0
    monkeypatch.setenv("BVLAB_THREADS", "4")
    status, threaded = run_cli(capsys, "sweep", "--n", "2")
    assert status == 0
    assert serial == threaded
    monkeypatch.setenv("BVLAB_THREADS", "zero")
    assert run_cli(capsys, "sweep", "--n", "2")[0] == 2


def test_trace_stages_and_checks(capsys):
    status, doc = run_json(
        capsys, "trace", "--algorithm", "ccnot-bva", "--gamma", "11"
    )
    assert status == 0
    assert [s["name"] for s in doc["stages"]] == [
        "initial",
        "after-h-layer",
        "after-flip-oracle",
        "after-phase-oracle",
        "final",
    ]
    assert doc["all_checks_ok"] is True
    assert doc["recovered"] == "11"
    # The starting stage is one amplitude on |0...0 0 1>.
    assert doc["stages"][0]["state"] == ["0001\t1.000000000000\t0.000000000000"]
    assert all(c["ok"] for s in doc["stages"] for c in s["checks"])


def test_trace_pi_records_both_oracle_comparators(capsys):
    status, doc = run_json(capsys, "trace", "--algorithm", "pi", "--gamma", "10")
    assert status == 0
    oracle_stage = [s for s in doc["stages"] if s["name"] == "after-oracle"][0]
    assert len(oracle_stage["checks"]) == 2


def test_trace_cap(capsys):
    assert run_cli(
        capsys, "trace", "--algorithm", "bva", "--gamma", "1" * 9
    )[0] == 2


def test_text_renderers_smoke(capsys):
    for argv in (
        ["certify", "--n", "1", "--format", "text"],
        ["sweep", "--n", "1", "--format", "text"],
        ["trace", "--algorithm", "single-oracle-bva", "--gamma", "1",
         "--format", "text"],
    ):
        status, out = run_cli(capsys, *argv)
        assert status == 0
        assert "pass" in out


def test_repeat_invocations_are_identical(capsys):
    first = run_cli(capsys, "run", "--algorithm", "pi", "--gamma", "101",
                    "--seed", "42")
    second = run_cli(capsys, "run", "--algorithm", "pi", "--gamma", "101",
                     "--seed", "42")
    assert first == second


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "bvlab", "run", "--algorithm", "bva",
         "--gamma", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["recovered"] == "1"
