"""Serialization round-trips and loader error reporting."""

import numpy as np
import pytest

from yulesimon import corpus, fileio
from yulesimon.errors import DataError
from yulesimon.gibbs import ChainConfig, GammaPrior, run_chain
from yulesimon.rng import RngState


def test_format_float_round_trips_exactly():
    for v in (0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -0.0,
              0.0074478630929842304):
        assert float(fileio.format_float(v)) == v


def test_write_csv_cell_types(tmp_path):
    path = tmp_path / "cells.csv"
    fileio.write_csv(path, ["a", "b", "c", "d"],
                     [[1, 0.5, None, "x"], [np.int64(2), np.float64(0.25),
                                            True, ""]])
    lines = path.read_text().splitlines()
    assert lines[0] == "a,b,c,d"
    assert lines[1] == "1,0.5,,x"
    assert lines[2] == "2,0.25,True,"


def test_json_is_sorted_and_stable():
    text = fileio.dump_json({"z": 1, "a": [1.5, None], "m": {"k": True}})
    assert text.index('"a"') < text.index('"m"') < text.index('"z"')
    assert fileio.dump_json({"b": 2, "a": 1}) == fileio.dump_json(
        {"a": 1, "b": 2})


def test_write_json_appends_newline(tmp_path):
    path = tmp_path / "o.json"
    fileio.write_json(path, {"x": 1})
    assert path.read_text().endswith("\n")


def test_load_counts_plain_lines(tmp_path):
    path = tmp_path / "counts.txt"
    path.write_text("3\n1\n\n17\n")
    assert fileio.load_counts(path).tolist() == [3, 1, 17]


def test_load_counts_word_count_csv(tmp_path):
    path = tmp_path / "counts.csv"
    path.write_text("word,count\nthe,101\nof,57\nwhale,3\n")
    assert fileio.load_counts(path).tolist() == [101, 57, 3]


def test_load_counts_errors_carry_location(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("3\nseven\n")
    with pytest.raises(DataError) as excinfo:
        fileio.load_counts(path)
    assert f"{path}:2" in str(excinfo.value)
    empty = tmp_path / "empty.txt"
    empty.write_text("\n\n")
    with pytest.raises(DataError):
        fileio.load_counts(empty)
    nonpositive = tmp_path / "zero.txt"
    nonpositive.write_text("1\n0\n")
    with pytest.raises(DataError):
        fileio.load_counts(nonpositive)


def test_load_regression_csv(tmp_path):
    path = tmp_path / "reg.csv"
    path.write_text("k,x2,x3\n2,0.5,0.25\n1,0.1,0.9\n")
    counts, regressors = fileio.load_regression_csv(path)
    assert counts.tolist() == [2, 1]
    assert np.allclose(regressors, [[0.5, 0.25], [0.1, 0.9]])
    intercept_only = tmp_path / "k.csv"
    intercept_only.write_text("k\n4\n2\n")
    counts, regressors = fileio.load_regression_csv(intercept_only)
    assert counts.tolist() == [4, 2] and regressors is None


def test_load_regression_csv_errors(tmp_path):
    bad_header = tmp_path / "h.csv"
    bad_header.write_text("count,x2\n1,0.5\n")
    with pytest.raises(DataError):
        fileio.load_regression_csv(bad_header)
    ragged = tmp_path / "r.csv"
    ragged.write_text("k,x2\n1,0.5\n2\n")
    with pytest.raises(DataError) as excinfo:
        fileio.load_regression_csv(ragged)
    assert ":3" in str(excinfo.value)
    with pytest.raises(DataError):
        empty = tmp_path / "e.csv"
        empty.write_text("")
        fileio.load_regression_csv(empty)


def test_trace_csv_round_trip(tmp_path):
    trace = run_chain(np.array([2, 5, 1, 3]), GammaPrior(0.25, 0.05),
                      ChainConfig(iterations=40, burn_in=10, thinning=3,
                                  seed=6))
    path = tmp_path / "trace.csv"
    fileio.write_trace_csv(path, trace)
    lines = path.read_text().splitlines()
    assert lines[0] == "iter,rho"
    # iter column starts at burn_in and strides by thinning
    assert lines[1].split(",")[0] == "10"
    assert lines[2].split(",")[0] == "13"
    names, samples = fileio.read_trace_csv(path)
    assert names == ("rho",)
    assert np.array_equal(samples[:, 0], trace.column("rho"))


def test_read_trace_csv_errors(tmp_path):
    path = tmp_path / "t.csv"
    path.write_text("time,rho\n0,1.5\n")
    with pytest.raises(DataError):
        fileio.read_trace_csv(path)
    path.write_text("iter,rho\n")
    with pytest.raises(DataError):
        fileio.read_trace_csv(path)


def test_frequency_csv_ordering(tmp_path):
    freq = corpus.word_frequencies(["b", "a", "b", "c", "a", "b"])
    path = tmp_path / "freq.csv"
    fileio.write_frequency_csv(path, freq)
    assert path.read_text().splitlines() == ["word,count", "b,3", "a,2",
                                             "c,1"]
    # the counts column feeds straight back into the counts loader
    assert fileio.load_counts(path).tolist() == [3, 2, 1]


def test_trace_csv_numbers_are_17_digit_exact(tmp_path):
    trace = run_chain(np.array([4, 4, 2]), GammaPrior(1.0, 1.0),
                      ChainConfig(iterations=5, burn_in=0, seed=1))
    path = tmp_path / "exact.csv"
    fileio.write_trace_csv(path, trace)
    _, samples = fileio.read_trace_csv(path)
    assert np.array_equal(samples[:, 0], trace.column("rho"))
