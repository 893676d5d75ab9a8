"""Tests for the executor, fits and result files."""

import json

import numpy as np
import pytest

from src.utils import (
    RunRecord,
    TaskExecutor,
    config_hash,
    format_value,
    git_blob_digest,
    jsonable,
    linear_fit,
    log_log_fit,
    persist_results,
    tail_window,
    task_rng,
)


def square(x):
    if x < 0:
        raise ValueError("negative input")
    return x * x


@pytest.mark.parametrize("threads", [1, 3])
def test_executor_keeps_input_order(threads):
    tasks = [(k, (k,)) for k in range(10)]
    results = TaskExecutor(threads).map(square, tasks)
    assert [r.key for r in results] == list(range(10))
    assert [r.output for r in results] == [k * k for k in range(10)]


def test_executor_captures_failures():
    results = TaskExecutor(2).map(square, [("a", (2,)), ("b", (-1,))])
    assert results[0].success and results[0].output == 4
    assert not results[1].success
    assert results[1].error == "ValueError: negative input"
    with pytest.raises(ValueError):
        TaskExecutor(0)


def test_task_rng_substreams():
    first = task_rng(7, 0, 3).random(4)
    assert np.array_equal(first, task_rng(7, 0, 3).random(4))
    assert not np.array_equal(first, task_rng(7, 0, 4).random(4))
    assert not np.array_equal(first, task_rng(8, 0, 3).random(4))


def test_linear_fits():
    fit = linear_fit([0, 1, 2, 3], [1, 3, 5, 7])
    assert fit.slope == pytest.approx(2.0)
    assert fit.intercept == pytest.approx(1.0)
    assert fit.r_squared == pytest.approx(1.0)
    flat = linear_fit([0, 1, 2], [4, 4, 4])
    assert flat.slope == 0.0 and flat.r_squared == 1.0
    assert log_log_fit([1, 10, 100], [2, 20, 200]).slope == pytest.approx(1.0)
    with pytest.raises(ValueError):
        linear_fit([1, 1], [0, 1])
    with pytest.raises(ValueError):
        log_log_fit([1, 2], [0, 1])


def test_tail_window():
    assert tail_window(20) == range(10, 21)
    assert tail_window(5) == range(1, 6)
    with pytest.raises(ValueError):
        tail_window(3)


def test_formatting_and_json():
    assert format_value(0.1) == "0.10000000000000001"
    assert format_value(True) == "true"
    assert format_value(None) == ""
    assert format_value(np.int64(3)) == "3"
    assert jsonable({"x": (np.float64(np.inf), np.bool_(False))}) == {"x": ["inf", False]}


def test_digests():
    assert git_blob_digest("") == "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391"
    assert git_blob_digest("hello\n") == "ce013625030ba8dba906f756967f9e9ca394464a"
    assert config_hash({"a": 1, "b": [1.0]}) == config_hash({"b": [1.0], "a": 1})
    assert config_hash({"a": 1}) != config_hash({"a": 2})


def test_persist_results(tmp_path):
    tables = {"errors": [{"eps": 0.1, "error": 1e-3}, {"eps": 0.05, "error": 5e-4}]}
    paths = persist_results(str(tmp_path / "out"), tables, {"fitted": 1.0}, {"rate": [[0.0, 1.0]]})
    assert paths == {"errors": str(tmp_path / "out" / "errors.csv")}
    lines = (tmp_path / "out" / "errors.csv").read_text().splitlines()
    assert lines == ["eps,error", "0.10000000000000001,0.001", "0.050000000000000003,0.00050000000000000001"]
    assert json.loads((tmp_path / "out" / "summary.json").read_text()) == {"fitted": 1.0}
    assert (tmp_path / "out" / "rate.dat").read_text() == "# x y\n0 1\n"


def test_run_record_round_trips_to_dict():
    record = RunRecord("density", "abc", "def", 1.5, {"density": "d.csv"}, "1.0.0")
    assert record.to_dict()["tables"] == {"density": "d.csv"}
    assert record.to_dict()["status"] == "ok"
