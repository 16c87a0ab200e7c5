"""Command-line behavior: exit codes, determinism, report files."""

import json

import pytest

from semitop import cli
from semitop.corpus import read_report


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_classify_builders_to_stdout(capsys):
    code, out, err = run(capsys, "classify", "--builder", "cyclic:3",
                         "--builder", "natmin")
    assert code == 0 and err == ""
    doc = json.loads(out)
    assert doc["config"]["command"] == "classify"
    assert [e["id"] for e in doc["entries"]] == ["cyclic:3", "natmin"]
    natmin = doc["entries"][1]["classification"]
    assert natmin["theorems"]["C_closed"]["status"] == "fails"


def test_classify_files_with_summary(capsys, fixtures_dir, tmp_path):
    out_file = tmp_path / "report.json"
    code, out, err = run(capsys, "classify", str(fixtures_dir / "m3.cayley"),
                         "--out", str(out_file))
    assert code == 0
    assert out.startswith("m3: ")
    doc = read_report(out_file)
    assert doc.entries[0]["id"] == "m3"


def test_classify_is_byte_deterministic(capsys, fixtures_dir, tmp_path):
    args = ("classify", str(fixtures_dir / "m3.cayley"),
            str(fixtures_dir / "chain3.cayley"), "--builder", "cyclic:4")
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, *args, "--out", str(first))[0] == 0
    assert run(capsys, *args, "--out", str(second))[0] == 0
    assert first.read_bytes() == second.read_bytes()


def test_parallel_scan_writes_identical_bytes(capsys, tmp_path):
    args = ("classify", "--builder", "cyclic:4", "--builder", "chain:3",
            "--builder", "natmin", "--budget", "64")
    serial, parallel = tmp_path / "s.json", tmp_path / "p.json"
    assert run(capsys, *args, "--out", str(serial))[0] == 0
    assert run(capsys, *args, "--workers", "4", "--out", str(parallel))[0] == 0
    assert serial.read_bytes() == parallel.read_bytes()


def test_budget_shorthand_lands_in_config(capsys):
    code, out, _ = run(capsys, "classify", "--builder", "zero:2",
                       "--budget", "32")
    assert code == 0
    doc = json.loads(out)
    assert doc["config"]["budget"]["elements"] == 32
    # workers never enter the config: they must not affect bytes
    assert "workers" not in doc["config"]


def test_predicates_command(capsys):
    code, out, _ = run(capsys, "predicates", "--builder", "natmin",
                       "--budget", "64")
    assert code == 0
    doc = json.loads(out)
    suite = doc["entries"][0]["suite"]
    assert suite["chain_finite"]["status"] == "fails"
    assert suite["commutative"]["status"] == "holds"


def test_missing_inputs_is_exit_1(capsys):
    code, _, err = run(capsys, "classify")
    assert code == 1 and "nothing to analyze" in err


def test_unknown_builder_lists_catalog(capsys):
    code, _, err = run(capsys, "classify", "--builder", "nosuch:9")
    assert code == 1 and "known builders" in err


def test_usage_errors_fold_into_exit_1(capsys):
    assert run(capsys, "bogus-command")[0] == 1
    assert run(capsys, "enumerate")[0] == 1  # missing order argument


def test_enumerate_matches_frozen_constant(capsys):
    code, out, _ = run(capsys, "enumerate", "2")
    assert code == 0
    assert "order 2: 8 labeled semigroups" in out
    assert "(match)" in out


def test_enumerate_dedupe_commutative(capsys):
    code, out, _ = run(capsys, "enumerate", "3", "--commutative-only",
                       "--dedupe-iso")
    assert code == 0
    assert "order 3: 12 commutative isomorphism classes" in out


def test_frozen_mismatch_is_integrity_failure(capsys, monkeypatch):
    monkeypatch.setitem(cli.LABELED_COUNTS, 2, 9)
    code, out, err = run(capsys, "enumerate", "2")
    assert code == 2
    assert "MISMATCH" in out and "disagrees" in err


def test_enumerate_above_cap_is_exit_4(capsys):
    code, _, err = run(capsys, "enumerate", "7")
    assert code == 4 and "size cap" in err


def test_topology_needs_a_viable_anchor(capsys):
    code, _, err = run(capsys, "topology", "--builder", "natplus",
                       "--budget", "64")
    assert code == 3 and "not found" in err


def test_topology_on_a_group_is_discrete(capsys):
    code, out, _ = run(capsys, "topology", "--builder", "cyclic:4",
                       "--kind", "Z", "--budget", "64")
    assert code == 0
    assert "verdict: discrete" in out


def test_topology_flat_certifies_and_writes_report(capsys, tmp_path):
    out_file = tmp_path / "topo.json"
    code, out, _ = run(capsys, "topology", "--builder", "flat",
                       "--out", str(out_file))
    assert code == 0
    assert "verdict: non-discrete at the anchor" in out
    assert "confirmed_at_bound=True" in out
    doc = read_report(out_file)
    entry = doc.entries[0]
    assert entry["anchor"] == 0 and entry["certificate"]["failures"] == []
