import json
import random

import pytest

from cubeblocks.cli import main
from cubeblocks.fields import FiniteField
from cubeblocks.lattice import BrickSpec


@pytest.fixture
def brick3_path(tmp_path):
    rng = random.Random(1)
    brick = BrickSpec.random(FiniteField(2), 3, (1, 1, 1), rng)
    path = tmp_path / "brick3.json"
    path.write_text(json.dumps(brick.to_json()))
    return str(path)


def _run_json(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_verify_2d_report(capsys):
    code, rep = _run_json(["verify", "2d", "--no-timestamp"], capsys)
    assert code == 0
    assert rep["status"] == "verified"
    assert rep["version"]
    assert rep["seed"] == 0
    assert rep["ordering"] == [[0, 1, 2, 3]] * 3
    assert all(r["verdict"] in ("verified", "degenerate") for r in rep["results"])


def test_reports_are_reproducible(tmp_path):
    a, b = str(tmp_path / "a.json"), str(tmp_path / "b.json")
    assert main(["verify", "diag3", "--no-timestamp", "--out", a]) == 0
    assert main(["verify", "diag3", "--no-timestamp", "--out", b]) == 0
    assert open(a, "rb").read() == open(b, "rb").read()


def test_csv_format(capsys):
    code = main(["verify", "2d", "--no-timestamp", "--format", "csv"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.splitlines()[0] == "key,value"
    assert any(line.startswith("status,") for line in out.splitlines())


def test_assemble_and_census(brick3_path, capsys):
    code, rep = _run_json(["assemble", "--brick", brick3_path, "--edge", "2",
                           "--no-timestamp"], capsys)
    assert code == 0 and rep["dimension"] == 12

    code, rep = _run_json(["census", "--brick", brick3_path, "--edge", "2",
                           "--bcs", "Periodic", "--oracle", "--no-timestamp"],
                          capsys)
    assert code == 0
    assert rep["census"]["oracle_agrees"]


def test_evolve_2d(tmp_path, capsys):
    rng = random.Random(2)
    f = FiniteField(2, 16)
    brick = BrickSpec.random(f, 2, (1, 1), rng)
    path = tmp_path / "b2.json"
    path.write_text(json.dumps(brick.to_json()))
    code, rep = _run_json(["evolve", "--brick", str(path), "--steps", "2",
                           "--no-timestamp"], capsys)
    assert code == 0
    assert rep["case"] == "2d"
    assert rep["predicted_counts"] == [4]


def test_malformed_brick_is_exit_2(capsys):
    assert main(["census", "--brick", '{"nonsense": true}',
                 "--no-timestamp"]) == 2
    assert "error:" in capsys.readouterr().err


def test_missing_file_is_exit_2(capsys):
    assert main(["assemble", "--brick", "/no/such/file.json",
                 "--no-timestamp"]) == 2


def test_cap_dim_is_exit_2(brick3_path, capsys):
    assert main(["assemble", "--brick", brick3_path, "--edge", "4",
                 "--cap-dim", "10", "--no-timestamp"]) == 2


def test_unknown_suite_rejected():
    with pytest.raises(SystemExit):
        main(["verify", "nonsense"])
