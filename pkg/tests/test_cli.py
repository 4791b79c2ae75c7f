import json
import os

import pytest

from config import Config
from main import main
from utils.instance_io import parse_id_map, read_instance, write_instance


@pytest.fixture(autouse=True)
def logs_in_tmp(tmp_path, monkeypatch):
    monkeypatch.setattr(Config, "LOGS_PATH", str(tmp_path / "logs"))


@pytest.fixture
def k4_file(tmp_path, k4_instance):
    path = tmp_path / "k4.wtds"
    write_instance(k4_instance, path)
    return path


def test_kernelize_writes_kernel_and_report(tmp_path, k4_file, capsys):
    report = tmp_path / "report.json"
    assert main(["kernelize", str(k4_file), "--report", str(report), "--quiet"]) == 0
    kernel_path = tmp_path / "k4.kernel.wtds"
    kernel = read_instance(kernel_path)
    assert kernel.k == 2
    assert set(parse_id_map(kernel_path.read_text()).values()) <= {1, 2, 3, 4}
    data = json.loads(report.read_text())
    assert data["decided"] == "kernel"
    assert all(entry["satisfied"] for entry in data["bounds"])
    assert "Kernel:" in capsys.readouterr().out


def test_kernelize_decided_instance(tmp_path):
    path = tmp_path / "path.wtds"
    path.write_text("p wtds 3 2 0\ne 1 2\ne 2 3\n")
    assert main(["kernelize", str(path), str(tmp_path / "out.wtds"), "--quiet"]) == 1
    assert not (tmp_path / "out.wtds").exists()


def test_kernelize_parse_error(tmp_path):
    path = tmp_path / "bad.wtds"
    path.write_text("p wtds 2 1 0\ne 1 5\n")
    assert main(["kernelize", str(path), "--quiet"]) == 2


def test_kernelize_missing_file(tmp_path):
    assert main(["kernelize", str(tmp_path / "nope.wtds"), "--quiet"]) == 2


def test_solve(k4_file, capsys):
    assert main(["solve", str(k4_file), "--quiet"]) == 0
    assert capsys.readouterr().out.strip() == "YES weight=2 delete={1 2}"


def test_solve_no(tmp_path, capsys):
    path = tmp_path / "two.wtds"
    path.write_text("p wtds 2 0 0\n")
    assert main(["solve", str(path), "--quiet"]) == 1
    assert capsys.readouterr().out.strip() == "NO"


def test_solve_over_limit(k4_file):
    assert main(["solve", str(k4_file), "--oracle-limit", "3", "--quiet"]) == 3


def test_verify_single_file(k4_file):
    assert main(["verify", str(k4_file), "--quiet"]) == 0


def test_verify_rejects_large_graphs(tmp_path):
    code = main(["verify", "--samples", "1", "--max-n", "20", "--oracle-limit", "15", "--quiet"])
    assert code == 3


def test_verify_campaign_is_reproducible(tmp_path):
    reports = [tmp_path / "a.json", tmp_path / "b.json"]
    for report in reports:
        code = main(["verify", "--samples", "40", "--seed", "7", "--max-n", "8",
                     "--workers", "1", "--report", str(report), "--quiet"])
        assert code == 0
    assert reports[0].read_bytes() == reports[1].read_bytes()
    data = json.loads(reports[0].read_text())
    assert data["samples"] == 40
    assert data["agreements"] == 40
    assert data["disagreements"] == [] and data["errors"] == []


@pytest.mark.skipif("TDS_VERIFY_SAMPLES" in os.environ, reason="campaign size overridden")
def test_default_campaign_size():
    assert Config.VERIFY_SAMPLES >= 2000


@pytest.mark.slow
def test_verify_full_campaign(tmp_path):
    report = tmp_path / "r.json"
    assert main(["verify", "--samples", "2000", "--seed", "0", "--report", str(report), "--quiet"]) == 0
    data = json.loads(report.read_text())
    assert data["agreements"] == 2000
    assert data["disagreements"] == [] and data["errors"] == []


def test_gen_writes_files(tmp_path):
    out = tmp_path / "gen"
    assert main(["gen", "planted", "3", str(out), "--seed", "2", "--max-n", "7", "--quiet"]) == 0
    files = sorted(p.name for p in out.iterdir())
    assert files == ["inst_0000.wtds", "inst_0001.wtds", "inst_0002.wtds"]
    assert "planted weight" in (out / "inst_0000.wtds").read_text()


def test_gen_unknown_family(tmp_path):
    assert main(["gen", "clique", "1", str(tmp_path), "--quiet"]) == 3


def test_kernelize_self_loop_is_parse_error(tmp_path):
    path = tmp_path / "loop.wtds"
    path.write_text("p wtds 2 1 1\ne 1 1\n")
    assert main(["kernelize", str(path), "--quiet"]) == 2


def test_kernelize_negative_budget(tmp_path, capsys):
    path = tmp_path / "neg.wtds"
    path.write_text("p wtds 3 3 -1\ne 1 2\ne 2 3\ne 1 3\n")
    assert main(["kernelize", str(path), "--quiet"]) == 1
    assert "NO" in capsys.readouterr().out
