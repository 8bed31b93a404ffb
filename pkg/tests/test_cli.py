import csv
import io
import json

import pytest

from udrfusion.cli import FIELDS, JobConfig, main, parse_config, run
from udrfusion.errors import ParameterError


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_embeddable(capsys):
    code, out, _ = run_cli(capsys, "check-embeddable", "--n", "20", "--m", "24", "--alpha", "18", "--gamma", "9", "--output", "records")
    rec = json.loads(out)
    assert code == 0 and rec["p"] == 241 and rec["verdict"] == "verified"
    assert json.loads(rec["detail"])["embeddable"] is True
    assert list(rec) == sorted(FIELDS)


def test_paper_example_records(capsys):
    code, out, _ = run_cli(capsys, "paper-example", "--output", "records")
    recs = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(recs) == 53
    cell = [r for r in recs if r["ell"] == 7 and r["rep_id"] == "chi^0"][0]
    assert (cell["dioph_A"], cell["dioph_B"]) == (6, 7)
    assert json.loads(recs[-1]["detail"])["step"] == "12σ - 2τ"


def test_formats_are_projections(capsys):
    args = ["udr-table", "--n", "4", "--m", "2", "--alpha", "1"]
    _, rec_out, _ = run_cli(capsys, *args, "--output", "records")
    _, csv_out, _ = run_cli(capsys, *args, "--output", "csv")
    _, tab_out, _ = run_cli(capsys, *args, "--output", "table")
    recs = [json.loads(line) for line in rec_out.splitlines()]
    rows = list(csv.DictReader(io.StringIO(csv_out)))
    assert [{k: str(v) for k, v in r.items()} for r in recs] == rows
    assert len(tab_out.splitlines()) == len(recs) + 1
    assert sum(r["d1"] == 1 for r in recs) == 2


def test_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    for path in (a, b):
        assert main(["kernels", "--n", "6", "--m", "2", "--alpha", "1", "--gamma", "1", "--output", "csv", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert b"\r" not in a.read_bytes()


def test_config_file_and_override(capsys, tmp_path):
    cfg = tmp_path / "job.cfg"
    cfg.write_text("# job\nn = 6\nm = 2\nalpha = 1\ngamma = 1\ntasks = verify-thm1, fusion\noutput = records\n")
    code, out, _ = run_cli(capsys, "--config", str(cfg))
    tasks = [json.loads(line)["task"] for line in out.splitlines()]
    assert code == 0 and tasks == ["verify-thm1", "fusion", "fusion"]
    code, out, _ = run_cli(capsys, "--config", str(cfg), "--task", "fusion", "--ell", "2")
    assert code == 0 and [json.loads(line)["ell"] for line in out.splitlines()] == [2]


def test_empty_task_list():
    assert run(JobConfig()) == (0, [])


def test_bad_prime_exit_2(capsys):
    code, out, err = run_cli(capsys, "kernels", "--n", "4", "--m", "2", "--alpha", "1", "--p", "13")
    assert code == 2 and out == "" and "p = 13" in err


def test_inconsistent_exit_2(capsys):
    code, _, err = run_cli(capsys, "enumerate-reps", "--n", "4", "--m", "3", "--alpha", "1")
    assert code == 2


def test_refuted_exit_1(capsys):
    code, out, _ = run_cli(capsys, "verify-thm2", "--n", "8", "--m", "2", "--alpha", "1", "--output", "records")
    rec = json.loads(out)
    assert code == 1 and rec["verdict"] == "refuted"
    assert json.loads(rec["detail"])["witness"]


def test_unsupported_exit_2(capsys):
    code, out, _ = run_cli(capsys, "verify-thm1", "--n", "4", "--m", "2", "--output", "records")
    assert code == 2 and json.loads(out)["verdict"] == "unsupported-regime"


def test_sweep(capsys):
    code, out, _ = run_cli(capsys, "sweep", "--n", "4", "--m", "2,4", "--output", "records")
    recs = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and recs and {r["verdict"] for r in recs} == {"verified"}


def test_parse_config_errors():
    with pytest.raises(ParameterError):
        parse_config("bogus = 1")
    with pytest.raises(ParameterError):
        parse_config("n 4")
    assert parse_config("ell_list = 1, 3\np = 17") == {"ell_list": [1, 3], "p": 17}


def test_module_entry(capsys):
    import runpy
    import sys

    argv = sys.argv
    sys.argv = ["udrfusion", "characters", "--n", "4", "--m", "2", "--alpha", "1", "--output", "csv"]
    try:
        with pytest.raises(SystemExit) as exc:
            runpy.run_module("udrfusion", run_name="__main__")
    finally:
        sys.argv = argv
    assert exc.value.code == 0
    assert len(capsys.readouterr().out.splitlines()) == 1 + 4
