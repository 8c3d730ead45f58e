"""Study harness: scenario plumbing, quick scaling, determinism of the
table builders, and multi-chain pooling."""

import json

import numpy as np
import pytest

from yulesimon import distribution, mle, study
from yulesimon.errors import ParameterError
from yulesimon.gibbs import GammaPrior
from yulesimon.rng import RngState


def tiny_iid_spec(seed=42):
    return study.ExperimentSpec(
        scenarios=(study.Scenario("iid", (0.8,), 25),),
        iterations=300, burn_in=50, replicates=2, master_seed=seed)


def test_scenario_validation():
    with pytest.raises(ParameterError):
        study.Scenario("weibull", (1.0,), 10)
    with pytest.raises(ParameterError):
        study.Scenario("iid", (1.0,), 0)
    sc = study.Scenario("iid", (1,), 10)
    assert sc.true_params == (1.0,)


def test_spec_validation_and_seeds():
    with pytest.raises(ParameterError):
        study.ExperimentSpec(scenarios=())
    spec = tiny_iid_spec(seed=7)
    assert spec.scenario_seed(0) == RngState(7).child_seed(0)
    assert spec.scenario_seed(3) == spec.scenario_seed(3)
    cfg = spec.config_dict()
    assert cfg["master_seed"] == 7
    assert cfg["scenarios"][0] == {"model": "iid", "true_params": [0.8],
                                   "n": 25}
    assert cfg["backend"] in ("numba", "numpy")


def test_quick_scaling():
    assert study._scaled(50_000, 10_000, 20, False) == (50_000, 10_000, 20)
    assert study._scaled(50_000, 10_000, 20, True) == (5_000, 1_000, 5)
    assert study._scaled(5, 3, 2, True) == (1, 0, 2)


def test_prebuilt_specs_cover_the_grid():
    spec = study.table1_spec(seed=1)
    cells = [(s.true_params[0], s.n) for s in spec.scenarios]
    assert cells == [(0.8, 30), (0.8, 100), (0.8, 500),
                     (5.0, 30), (5.0, 100), (5.0, 500)]
    spec2 = study.table2_spec(seed=1, quick=True)
    assert spec2.iterations == 5_000 and spec2.replicates == 5
    assert {s.true_params for s in spec2.scenarios} == {(-0.5, 5.0),
                                                        (1.5, -1.0)}


def test_spread_initials():
    assert study.spread_initials(2.5, 1) == [2.5]
    np.testing.assert_allclose(study.spread_initials(2.5, 3),
                               [0.25, 2.5, 25.0])
    lo, hi = study.spread_initials(4.0, 2)
    np.testing.assert_allclose([lo, hi],
                               [4.0 / np.sqrt(10), 4.0 * np.sqrt(10)])


def test_run_table1_deterministic_and_consistent():
    first = study.run_table1(tiny_iid_spec())
    second = study.run_table1(tiny_iid_spec())
    assert first.rows == second.rows
    row = first.rows[0]
    assert row["error"] is None
    assert row["rho_true"] == 0.8 and row["n"] == 25
    for key in ("mean", "median", "mse_mean", "mse_median", "fixed_point"):
        assert np.isfinite(row[key])
    detail = first.details[(0.8, 25)]
    assert len(detail.data_seeds) == 2
    rep0 = distribution.sample(RngState(detail.data_seeds[0]), 0.8, size=25)
    assert row["fixed_point"] == mle.fixed_point_fit(rep0).rho_hat


def test_run_table2_deterministic():
    spec = study.ExperimentSpec(
        scenarios=(study.Scenario("regression", (1.5, -1.0), 20),),
        iterations=200, burn_in=50, replicates=2, master_seed=5)
    first = study.run_table2(spec)
    second = study.run_table2(spec)
    assert first.rows == second.rows
    assert [r["coefficient"] for r in first.rows] == ["beta0", "beta1"]
    for row in first.rows:
        assert row["error"] is None
        assert 0.0 <= row["coverage"] <= 1.0
        assert row["ci_lower"] < row["ci_upper"]
    detail = first.details[((1.5, -1.0), 20)]
    assert len(detail["acceptance"]) == 2
    assert len(detail["summaries"]) == 2


def test_run_multichain_pooling():
    data = distribution.sample(RngState(77), 2.0, size=120)
    prior = GammaPrior(0.25, 0.05)
    summary, rhat, zs, traces = study.run_multichain(
        data, prior, iterations=1500, burn_in=300, n_chains=3, seed=6)
    assert rhat >= 1.0
    assert len(zs) == 3 and len(traces) == 3
    starts = [t.metadata["initial_rho"] for t in traces]
    np.testing.assert_allclose(starts, study.spread_initials(prior.mean, 3))
    pooled = np.concatenate([t.column("rho") for t in traces])
    assert summary.mean == pytest.approx(pooled.mean())
    _, solo_rhat, _, _ = study.run_multichain(
        data, prior, iterations=400, burn_in=100, n_chains=1, seed=6)
    assert solo_rhat is None


def test_run_table3_synthetic_and_missing(tmp_path, synthetic_novel):
    novel, counts = synthetic_novel
    missing = tmp_path / "ghost.txt"
    result = study.run_table3([novel, missing], seed=9, quick=True)
    ok, bad = result.rows
    assert ok["novel"] == "synthetic" and ok["error"] is None
    assert ok["n"] == counts.size
    assert ok["total_tokens"] == int(counts.sum())
    assert ok["ci_lower"] < ok["mean"] < ok["ci_upper"]
    assert np.isfinite(ok["fixed_point"])
    assert bad["novel"] == "ghost" and bad["error"] is not None
    assert result.details["synthetic"]["markers_found"] is True
    again = study.run_table3([novel, missing], seed=9, quick=True)
    assert again.rows == result.rows


def test_table_result_serialization(tmp_path):
    result = study.run_table1(tiny_iid_spec())
    csv_path = tmp_path / "t.csv"
    json_path = tmp_path / "t.json"
    result.write_csv(csv_path)
    result.write_json(json_path)
    header = csv_path.read_text().splitlines()[0]
    assert header == ",".join(result.columns)
    blob = json.loads(json_path.read_text())
    assert blob["columns"] == list(result.columns)
    assert blob["rows"][0]["mean"] == result.rows[0]["mean"]
    assert blob["config"]["replicates"] == 2
