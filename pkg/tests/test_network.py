import numpy as np
import pytest

from specbench.network import (
    NetworkTopology,
    TrainingConfig,
    TrainingDivergence,
    backprop,
    forward,
    forward_batch,
    init_network,
    mse,
    numerical_gradient,
    sample_loss,
    train,
)
from specbench import network as network_mod


def relative_error(a, b):
    return np.abs(a - b) / np.maximum(np.maximum(np.abs(a), np.abs(b)), 1e-6)


class TestTopology:
    def test_parameter_count_with_jump(self):
        topo = NetworkTopology(126, (70,), 2, jump_connections=True)
        assert topo.parameter_count() == 9284

    def test_invalid_widths(self):
        with pytest.raises(ValueError):
            NetworkTopology(3, (0,), 2)
        with pytest.raises(ValueError):
            NetworkTopology(0, (4,), 2)

    def test_unknown_activation(self):
        with pytest.raises(ValueError):
            NetworkTopology(3, (4,), 2, hidden_activation="relu6")


class TestInit:
    def test_seeded_determinism(self):
        topo = NetworkTopology(4, (3,), 2, jump_connections=True)
        a = init_network(topo, 7)
        b = init_network(topo, 7)
        for x, y in zip(a.arrays(), b.arrays()):
            assert np.array_equal(x, y)

    def test_weight_range_and_zero_biases(self):
        topo = NetworkTopology(10, (8, 6), 4, jump_connections=True)
        ws = init_network(topo, 1)
        for w in ws.weights + [ws.jump]:
            assert np.all(np.abs(w) <= 0.5)
        for b in ws.biases:
            assert np.all(b == 0.0)


class TestForward:
    def test_zero_weights_give_half(self):
        topo = NetworkTopology(5, (4,), 3, jump_connections=True)
        ws = init_network(topo, 0)
        for arr in ws.arrays():
            arr[:] = 0.0
        assert np.allclose(forward(ws, topo, np.ones(5)), 0.5)

    def test_hand_evaluated_composition(self):
        # frozen oracle: sigma(sigma(1)) with unit weights, zero biases
        topo = NetworkTopology(1, (1,), 1)
        ws = init_network(topo, 0)
        ws.weights[0][:] = 1.0
        ws.weights[1][:] = 1.0
        out = forward(ws, topo, np.array([1.0]))
        assert out[0] == pytest.approx(0.6750375273768237, rel=1e-9)

    def test_zero_jump_matches_no_jump(self):
        base = NetworkTopology(4, (3,), 2)
        jumped = NetworkTopology(4, (3,), 2, jump_connections=True)
        ws = init_network(base, 3)
        wsj = init_network(jumped, 3)
        wsj.weights = [w.copy() for w in ws.weights]
        wsj.biases = [b.copy() for b in ws.biases]
        wsj.jump[:] = 0.0
        x = np.array([0.1, 0.9, 0.4, 0.3])
        assert np.allclose(forward(ws, base, x), forward(wsj, jumped, x))

    def test_length_mismatch(self):
        topo = NetworkTopology(4, (3,), 2)
        with pytest.raises(ValueError):
            forward(init_network(topo, 0), topo, np.ones(5))

    def test_outputs_in_open_unit_interval(self):
        rng = np.random.default_rng(0)
        topo = NetworkTopology(6, (5,), 4, jump_connections=True)
        ws = init_network(topo, 2)
        for arr in ws.arrays():
            arr *= 50.0  # drive pre-activations into saturation
        y = forward(ws, topo, rng.uniform(0, 1, 6))
        assert np.all(y > 0.0) and np.all(y < 1.0)

    def test_batch_matches_single(self):
        topo = NetworkTopology(4, (3, 5), 2, jump_connections=True)
        ws = init_network(topo, 4)
        X = np.random.default_rng(1).uniform(0, 1, (6, 4))
        batch = forward_batch(ws, topo, X)
        for i in range(6):
            assert np.allclose(batch[i], forward(ws, topo, X[i]))


class TestGradients:
    def test_backprop_matches_finite_differences(self):
        rng = np.random.default_rng(42)
        for trial in range(10):
            widths = tuple(int(w) for w in rng.integers(1, 9, size=rng.integers(1, 3)))
            topo = NetworkTopology(
                int(rng.integers(1, 9)),
                widths,
                int(rng.integers(1, 9)),
                jump_connections=bool(rng.integers(0, 2)),
            )
            ws = init_network(topo, trial)
            x = rng.uniform(0, 1, topo.input_count)
            t = rng.uniform(0, 1, topo.output_count)
            bp = backprop(ws, topo, x, t)
            fd = numerical_gradient(ws, topo, x, t, eps=1e-5)
            for a, b in zip(bp.arrays(), fd.arrays()):
                assert relative_error(a, b).max() < 1e-4

    def test_gradient_zero_at_perfect_fit(self):
        topo = NetworkTopology(3, (5,), 2)
        ws = init_network(topo, 1)
        x = np.array([0.2, 0.5, 0.8])
        target = forward(ws, topo, x)  # output equals target exactly
        g = backprop(ws, topo, x, target)
        assert max(np.abs(a).max() for a in g.arrays()) < 1e-9

    def test_eps_validation(self):
        topo = NetworkTopology(2, (2,), 1)
        ws = init_network(topo, 0)
        with pytest.raises(ValueError):
            numerical_gradient(ws, topo, np.ones(2), np.ones(1), eps=0.0)


class TestTrain:
    def test_zero_learning_rate_is_a_no_op(self):
        topo = NetworkTopology(3, (4,), 2)
        X = np.random.default_rng(0).uniform(0, 1, (8, 3))
        Y = np.random.default_rng(1).uniform(0, 1, (8, 2))
        cfg = TrainingConfig(learning_rate=0.0, momentum=0.5, max_epochs=3, patience=100, seed=9)
        ws, _ = train(topo, X, Y, X, Y, cfg)
        ss = np.random.SeedSequence(9)
        init_seed = ss.spawn(2)[0]
        fresh = init_network(topo, int(init_seed.generate_state(1)[0]))
        for a, b in zip(ws.arrays(), fresh.arrays()):
            assert np.array_equal(a, b)

    def test_learns_and_truth_table(self):
        X = np.array([[0, 0], [0, 1], [1, 0], [1, 1]], dtype=float)
        Y = np.array([[0], [0], [0], [1]], dtype=float)
        topo = NetworkTopology(2, (4,), 1)
        successes = 0
        for seed in range(5):
            cfg = TrainingConfig(
                learning_rate=0.5, momentum=0.9, max_epochs=5000, patience=5000, seed=seed
            )
            ws, trace = train(topo, X, Y, X, Y, cfg)
            if min(trace.test_mse) < 0.01:
                successes += 1
        assert successes >= 4

    def test_patience_arithmetic(self, monkeypatch):
        scripted = iter(
            [0.5, 0.9, 0.4, 0.5, 0.3, 0.6, 0.2, 0.7]  # (train, test) per epoch
        )
        monkeypatch.setattr(network_mod, "mse", lambda *a: next(scripted))
        topo = NetworkTopology(2, (2,), 1)
        X = np.zeros((2, 2))
        Y = np.zeros((2, 1))
        cfg = TrainingConfig(learning_rate=0.01, momentum=0.0, max_epochs=50, patience=2, seed=0)
        _, trace = train(topo, X, Y, X, Y, cfg)
        assert trace.test_mse == [0.9, 0.5, 0.6, 0.7]
        assert trace.best_epoch == 2
        assert len(trace.test_mse) == 4
        assert trace.stopped_reason == "patience"

    def test_best_epoch_weights_restored(self):
        rng = np.random.default_rng(3)
        X = rng.uniform(0, 1, (20, 3))
        Y = rng.uniform(0, 1, (20, 2))
        topo = NetworkTopology(3, (4,), 2)
        cfg = TrainingConfig(learning_rate=0.3, momentum=0.5, max_epochs=40, patience=5, seed=2)
        ws, trace = train(topo, X, Y, X[:5], Y[:5], cfg)
        assert trace.best_epoch >= 1
        recorded = trace.test_mse[trace.best_epoch - 1]
        assert mse(ws, topo, X[:5], Y[:5]) == recorded
        assert recorded == min(trace.test_mse)

    def test_determinism(self):
        rng = np.random.default_rng(5)
        X = rng.uniform(0, 1, (15, 3))
        Y = rng.uniform(0, 1, (15, 2))
        topo = NetworkTopology(3, (4,), 2, jump_connections=True)
        cfg = TrainingConfig(learning_rate=0.2, momentum=0.7, max_epochs=10, patience=100, seed=8)
        a, _ = train(topo, X, Y, X, Y, cfg)
        b, _ = train(topo, X, Y, X, Y, cfg)
        for x, y in zip(a.arrays(), b.arrays()):
            assert np.array_equal(x, y)

    def test_divergence_guard(self):
        # identity outputs with huge targets and an aggressive step blow up
        topo = NetworkTopology(2, (3,), 1, output_activation="identity")
        X = np.random.default_rng(0).uniform(0, 1, (10, 2))
        Y = np.full((10, 1), 1e4)
        cfg = TrainingConfig(learning_rate=10.0, momentum=0.9, max_epochs=100, patience=100, seed=0)
        with pytest.raises(TrainingDivergence) as excinfo:
            train(topo, X, Y, X, Y, cfg)
        assert excinfo.value.trace.stopped_reason == "diverged"
        assert len(excinfo.value.trace.train_mse) >= 1

    def test_empty_sets_rejected(self):
        topo = NetworkTopology(2, (2,), 1)
        cfg = TrainingConfig(learning_rate=0.1)
        with pytest.raises(ValueError):
            train(topo, np.zeros((0, 2)), np.zeros((0, 1)), np.zeros((1, 2)), np.zeros((1, 1)), cfg)

    def test_config_validation(self):
        with pytest.raises(ValueError):
            TrainingConfig(learning_rate=-0.1)
        with pytest.raises(ValueError):
            TrainingConfig(learning_rate=0.1, momentum=1.0)
        with pytest.raises(ValueError):
            TrainingConfig(learning_rate=0.1, patience=0)

    def test_trace_csv(self, tmp_path):
        topo = NetworkTopology(2, (2,), 1)
        X = np.random.default_rng(1).uniform(0, 1, (6, 2))
        Y = np.random.default_rng(2).uniform(0, 1, (6, 1))
        cfg = TrainingConfig(learning_rate=0.1, max_epochs=3, patience=100, seed=0)
        _, trace = train(topo, X, Y, X, Y, cfg)
        path = tmp_path / "trace.csv"
        trace.save_csv(path)
        lines = path.read_text().splitlines()
        assert lines[0] == "epoch,train_mse,test_mse"
        assert len(lines) == 4
