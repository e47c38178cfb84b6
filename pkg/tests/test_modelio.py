import json

import numpy as np
import pytest

from specbench.data import SampleSet, normalize
from specbench.modelio import DUAL, FORWARD, TrainedModel
from specbench.network import NetworkTopology, init_network


@pytest.fixture
def forward_model():
    lam = np.array([350.0, 352.0, 354.0, 356.0])
    topo = NetworkTopology(4, (3,), 2, jump_connections=True)
    conc = np.random.default_rng(0).uniform(0.02, 0.1, (10, 2))
    ab = np.random.default_rng(1).uniform(0, 1, (10, 4))
    _, norm = normalize(SampleSet(conc, ab, lam))
    return TrainedModel(
        FORWARD, topo, init_network(topo, 5), norm, lam, provenance={"seed": 5}
    )


def test_save_load_roundtrip(forward_model, tmp_path):
    path = tmp_path / "model.json"
    forward_model.save(path)
    again = TrainedModel.load(path)
    assert again.direction == forward_model.direction
    assert again.topology == forward_model.topology
    for a, b in zip(again.weights.arrays(), forward_model.weights.arrays()):
        assert np.array_equal(a, b)
    x = np.random.default_rng(2).uniform(0, 1, (3, 4))
    assert np.allclose(again.predict(x), forward_model.predict(x))


def test_format_tag_enforced(forward_model, tmp_path):
    path = tmp_path / "model.json"
    forward_model.save(path)
    payload = json.loads(path.read_text())
    payload["format"] = "something-else"
    with pytest.raises(ValueError):
        TrainedModel.from_dict(payload)


def test_direction_validation():
    lam = np.array([350.0, 352.0])
    topo = NetworkTopology(2, (2,), 2)
    conc = np.random.default_rng(0).uniform(0, 1, (5, 2))
    ab = np.random.default_rng(1).uniform(0, 1, (5, 2))
    _, norm = normalize(SampleSet(conc, ab, lam))
    with pytest.raises(ValueError):
        TrainedModel("sideways", topo, init_network(topo, 0), norm, lam)


def test_topology_grid_mismatch():
    lam = np.array([350.0, 352.0, 354.0])
    topo = NetworkTopology(2, (2,), 2)  # forward model must take 3 inputs here
    conc = np.random.default_rng(0).uniform(0, 1, (5, 2))
    ab = np.random.default_rng(1).uniform(0, 1, (5, 3))
    _, norm = normalize(SampleSet(conc, ab, lam))
    with pytest.raises(ValueError):
        TrainedModel(FORWARD, topo, init_network(topo, 0), norm, lam)


def test_predict_width_check(forward_model):
    with pytest.raises(ValueError):
        forward_model.predict(np.zeros((2, 3)))


def test_predict_physical_units(forward_model):
    # outputs come back denormalized into the concentration scale
    out = forward_model.predict(np.random.default_rng(3).uniform(0, 1, (6, 4)))
    assert out.shape == (6, 2)
    assert np.all(np.isfinite(out))
