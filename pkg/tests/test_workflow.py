"""End-to-end runs through the command line and the experiment workflow."""

import csv
import json

import pytest

from main import EXIT_FAILED, EXIT_FLAGGED, EXIT_OK, main
from src.response import dyadic_eps_grid
from src.suspension import TABLE_COLUMNS


def write_config(tmp_path, name, data):
    data = {**data, "output": str(tmp_path / name)}
    path = tmp_path / f"{name}.json"
    path.write_text(json.dumps(data))
    return str(path)


def read_table(directory, name):
    with open(directory / f"{name}.csv", newline="") as handle:
        return list(csv.DictReader(handle))


def single_map(family, params=None, window=16):
    return {
        "cocycle": {"maps": {"T": {"family": family, "params": params or {}}}},
        "driving": {"family": "fixed", "window": window, "params": {"sequence": ["T"]}},
    }


def test_doubling_density_run(tmp_path):
    config = write_config(
        tmp_path,
        "density",
        {"experiment": "density", **single_map("doubling"), "discretization": {"modes": 16, "tol": 1e-12}},
    )
    assert main(["run", config]) == EXIT_OK

    rows = read_table(tmp_path / "density", "density")
    assert len(rows) == 1
    assert float(rows[0]["defect"]) <= 1e-12
    assert rows[0]["converged"] == "true"

    record = json.loads((tmp_path / "density" / "run_record.json").read_text())
    assert record["experiment"] == "density"
    assert record["status"] == "ok"
    assert set(record["tables"]) == {"density", "density_coefficients"}
    assert (tmp_path / "density" / "defects_fiber0_eps0.dat").is_file()


def test_unconverged_density_is_flagged(tmp_path):
    config = write_config(
        tmp_path,
        "short",
        {"experiment": "density", **single_map("additive", window=2), "discretization": {"modes": 16, "tol": 1e-12}},
    )
    assert main(["run", config]) == EXIT_FLAGGED
    summary = json.loads((tmp_path / "short" / "summary.json").read_text())
    assert summary["status"] == "flagged"
    assert not summary["all_converged"]


def test_stability_tables_do_not_depend_on_threads(tmp_path):
    data = {
        "experiment": "stability",
        **single_map("additive", window=40),
        "discretization": {"modes": 16},
        "eps_grid": [0.05, 0.025, 0.0125, 0.00625],
    }
    serial = write_config(tmp_path, "serial", data)
    pooled = write_config(tmp_path, "pooled", data)
    assert main(["run", serial, "--threads", "1"]) == EXIT_OK
    assert main(["run", pooled, "--threads", "8"]) == EXIT_OK
    assert (tmp_path / "serial" / "stability.csv").read_bytes() == (tmp_path / "pooled" / "stability.csv").read_bytes()


def test_response_run_on_composed_doubling(tmp_path):
    config = write_config(
        tmp_path,
        "response",
        {
            "experiment": "response",
            **single_map("doubling_composed", {"modes": 32}, window=60),
            "eps_grid": dyadic_eps_grid(1.0, 3, 10),
        },
    )
    assert main(["run", config]) == EXIT_OK
    summary = json.loads((tmp_path / "response" / "summary.json").read_text())
    assert summary["fitted_exponent"] >= 0.8
    assert summary["closed_form_match"]
    assert summary["routes_agree"]
    assert summary["observable_response"] == pytest.approx(0.5, abs=1e-8)


def test_counterexample_table_header(tmp_path):
    config = write_config(
        tmp_path,
        "counter",
        {
            "experiment": "counterexample",
            "options": {"sample_sizes": [500, 2000], "caps": [2, 4, 8, 16], "seed": 1},
        },
    )
    assert main(["run", config]) in (EXIT_OK, EXIT_FLAGGED)
    header = (tmp_path / "counter" / "counterexample.csv").read_text().splitlines()[0]
    assert header == ",".join(TABLE_COLUMNS)
    assert len(read_table(tmp_path / "counter", "tail_law")) == 50


def test_invalid_config_fails(tmp_path, capsys):
    config = write_config(tmp_path, "invalid", {"experiment": "stability", **single_map("additive")})
    assert main(["validate", config]) == EXIT_FAILED
    assert "eps_grid" in capsys.readouterr().out
    assert main(["run", config]) == EXIT_FAILED


def test_validate_echoes_resolved_config(tmp_path, capsys):
    config = write_config(tmp_path, "valid", {"experiment": "density", **single_map("doubling")})
    assert main(["validate", config]) == EXIT_OK
    out = capsys.readouterr().out
    assert "ok" in out.splitlines()
    assert '"experiment": "density"' in out


def test_list_families(capsys):
    assert main(["list-families"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert any(line.startswith("additive ") for line in lines)
    assert any(line.startswith("doubling_composed ") for line in lines)


def test_threads_must_be_positive(tmp_path):
    config = write_config(tmp_path, "threads", {"experiment": "density", **single_map("doubling")})
    assert main(["run", config, "--threads", "0"]) == EXIT_FAILED


def test_crim_check_run(tmp_path):
    config = write_config(
        tmp_path,
        "crim",
        {
            "experiment": "crim_check",
            "cocycle": {"maps": {"A": {"family": "additive", "params": {"d_amplitude": 0.0}}}},
            "options": {"ells": [1, 2]},
        },
    )
    assert main(["run", config]) == EXIT_OK
    residuals = read_table(tmp_path / "crim", "identity_residuals")
    assert [row["selected"] for row in residuals] == ["corrected", "corrected"]
    polynomials = read_table(tmp_path / "crim", "g_polynomials")
    assert len(polynomials) == 2 + 3
    assert polynomials[1]["corrected"] == "x1"


def test_ly_check_run(tmp_path):
    config = write_config(
        tmp_path,
        "ly",
        {"experiment": "ly_check", **single_map("doubling", window=2), "options": {"ells": [1], "trials": 20}},
    )
    assert main(["run", config]) in (EXIT_OK, EXIT_FLAGGED)
    rows = read_table(tmp_path / "ly", "ly_constants")
    assert [int(row["fiber"]) for row in rows] == [-2, -1, 0, 1, 2]
    assert all(float(row["C"]) == pytest.approx(1.5) for row in rows)


def test_lyapunov_run(tmp_path):
    config = write_config(
        tmp_path,
        "lyapunov",
        {
            "experiment": "lyapunov",
            **single_map("additive", {"d_amplitude": 0.0}, window=16),
            "discretization": {"modes": 16},
            "options": {"n_max": 12, "tests": 2, "trials": 16},
        },
    )
    assert main(["run", config]) == EXIT_OK
    summary = json.loads((tmp_path / "lyapunov" / "summary.json").read_text())
    assert summary["expanding"]
    assert summary["lambda_hat"] > 0.0
    assert summary["bounded"]
    assert len(read_table(tmp_path / "lyapunov", "decay")) == 13
    assert len(read_table(tmp_path / "lyapunov", "expansion")) == 33
