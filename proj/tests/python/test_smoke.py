import json
import math

import numpy as np
import pytest

import cellfree_maxmin as cm


@pytest.fixture(scope="module")
def model():
    dims = cm.Dimensions(12, [2, 2])
    instance = cm.generate_instance(dims, cm.PhysicalConfig(), 5)
    return cm.build_rate_model(instance)


def test_instance_round_trip():
    dims = cm.Dimensions(6, [1, 2])
    instance = cm.generate_instance(dims, cm.PhysicalConfig(), 3)
    assert instance.zeta.shape == (6, 3)
    assert np.all(instance.gamma < instance.zeta)
    again = cm.instance_from_json(cm.instance_to_json(instance))
    np.testing.assert_array_equal(again.zeta, instance.zeta)


def test_bad_dimensions_raise():
    with pytest.raises(ValueError):
        cm.Dimensions(0, [1])


def test_rates_and_smoothing(model):
    mu = np.full(24, 1 / math.sqrt(2))
    rates = cm.user_rates(model, mu)
    assert rates.shape == (4,)
    np.testing.assert_allclose(rates, cm.epa_rates(model), rtol=1e-12)
    f = cm.min_rate(model, mu)
    fs = cm.smooth_objective(model, mu, 100.0)
    assert f <= fs <= f + math.log(4) / 100.0
    assert cm.smooth_gradient(model, mu, 100.0).shape == (24,)


def test_projection():
    p = cm.project_feasible(np.array([-1.0, 2.0]), 1, 2)
    np.testing.assert_array_equal(p, [0.0, 1.0])
    assert cm.is_feasible(p, 1, 2)
    assert not cm.is_feasible(np.array([1.0, 1.0]), 1, 2)


def test_solvers_agree(model):
    apg = cm.apg_solve(model)
    bis = cm.bisection_solve(model)
    assert np.all(np.diff(apg["trace_f_sigma"]) >= 0)
    assert cm.is_feasible(apg["mu"], 12, 2)
    assert bis["t_lower"] <= bis["t_upper"]
    assert abs(apg["min_rate"] - bis["t_lower"]) <= 5e-3
    assert apg["min_rate"] >= cm.epa_rates(model).min() - math.log(4) / 100.0


def test_monte_carlo_matches_equal_power():
    dims = cm.Dimensions(4, [2])
    instance = cm.generate_instance(dims, cm.PhysicalConfig(), 2)
    model = cm.build_rate_model(instance)
    rate, err = cm.monte_carlo_rates(instance, np.ones(4), 50000, 1, 1)
    assert np.all(np.abs(rate - cm.epa_rates(model)) <= 4 * err)


def test_run_experiment_writes_outputs(tmp_path):
    defaults = json.loads(cm.default_config("cdf"))
    assert defaults["trials"] == 200
    overrides = {"dims": {"num_aps": 8, "group_sizes": [2, 2]}, "trials": 3, "out_dir": str(tmp_path)}
    cm.run_experiment("cdf", json.dumps(overrides))
    for name in ["resolved_config.json", "cdf_apg.csv", "cdf_epa.csv", "cdf_trials.csv"]:
        assert (tmp_path / name).exists()
    lines = (tmp_path / "cdf_apg.csv").read_text().splitlines()
    assert lines[0] == "rank,rate_nats,rate_bits,cdf"
    assert len(lines) == 1 + 3 * 4


def test_unknown_experiment_raises():
    with pytest.raises(ValueError):
        cm.default_config("nope")
