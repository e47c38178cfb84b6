"""Feed-forward nets with optional input-to-output jump connections.

Plain numpy implementation: logistic layers, per-sample backpropagation with
learning rate + momentum, patience-based early stopping that restores the
best-test-error weights, and a finite-difference gradient for verification.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


def _logistic(z):
    return 1.0 / (1.0 + np.exp(-z))


def _logistic_deriv(y):
    return y * (1.0 - y)


def _tanh(z):
    return np.tanh(z)


def _tanh_deriv(y):
    return 1.0 - y * y


def _identity(z):
    return z


def _identity_deriv(y):
    return np.ones_like(y)


# activation id -> (f, f' expressed in terms of the activation output)
ACTIVATIONS = {
    "logistic": (_logistic, _logistic_deriv),
    "tanh": (_tanh, _tanh_deriv),
    "identity": (_identity, _identity_deriv),
}


@dataclass(frozen=True)
class NetworkTopology:
    input_count: int
    hidden_layer_widths: tuple[int, ...]
    output_count: int
    jump_connections: bool = False
    hidden_activation: str = "logistic"
    output_activation: str = "logistic"

    def __post_init__(self):
        object.__setattr__(self, "hidden_layer_widths", tuple(self.hidden_layer_widths))
        if self.input_count < 1 or self.output_count < 1:
            raise ValueError("input_count and output_count must be >= 1")
        if any(w < 1 for w in self.hidden_layer_widths):
            raise ValueError("hidden layer widths must be >= 1")
        for act in (self.hidden_activation, self.output_activation):
            if act not in ACTIVATIONS:
                raise ValueError(f"unknown activation {act!r}")

    @property
    def layer_sizes(self) -> tuple[int, ...]:
        return (self.input_count, *self.hidden_layer_widths, self.output_count)

    def parameter_count(self) -> int:
        sizes = self.layer_sizes
        n = sum(sizes[i] * sizes[i + 1] + sizes[i + 1] for i in range(len(sizes) - 1))
        if self.jump_connections:
            n += self.input_count * self.output_count
        return n


@dataclass
class WeightSet:
    """All trainable parameters: per-layer (W, b) plus the optional jump matrix."""

    weights: list[np.ndarray]  # weights[i] has shape (fan_out, fan_in)
    biases: list[np.ndarray]
    jump: np.ndarray | None = None

    def copy(self) -> "WeightSet":
        return WeightSet(
            [w.copy() for w in self.weights],
            [b.copy() for b in self.biases],
            None if self.jump is None else self.jump.copy(),
        )

    def arrays(self) -> list[np.ndarray]:
        out = [*self.weights, *self.biases]
        if self.jump is not None:
            out.append(self.jump)
        return out

    def zeros_like(self) -> "WeightSet":
        return WeightSet(
            [np.zeros_like(w) for w in self.weights],
            [np.zeros_like(b) for b in self.biases],
            None if self.jump is None else np.zeros_like(self.jump),
        )


def init_network(topology: NetworkTopology, seed: int) -> WeightSet:
    """Weights uniform in [-0.5, 0.5], biases zero; deterministic per seed."""
    rng = np.random.default_rng(seed)
    sizes = topology.layer_sizes
    weights = [
        rng.uniform(-0.5, 0.5, size=(sizes[i + 1], sizes[i]))
        for i in range(len(sizes) - 1)
    ]
    biases = [np.zeros(sizes[i + 1]) for i in range(len(sizes) - 1)]
    jump = None
    if topology.jump_connections:
        jump = rng.uniform(-0.5, 0.5, size=(topology.output_count, topology.input_count))
    return WeightSet(weights, biases, jump)


def _forward_activations(ws: WeightSet, topology: NetworkTopology, x: np.ndarray):
    """All layer activations for one input vector (used by forward and backprop)."""
    hid_f, _ = ACTIVATIONS[topology.hidden_activation]
    out_f, _ = ACTIVATIONS[topology.output_activation]
    acts = [x]
    a = x
    last = len(ws.weights) - 1
    for i, (w, b) in enumerate(zip(ws.weights, ws.biases)):
        z = w @ a + b
        if i == last:
            if ws.jump is not None:
                z = z + ws.jump @ x
            a = out_f(z)
        else:
            a = hid_f(z)
        acts.append(a)
    return acts


def forward(ws: WeightSet, topology: NetworkTopology, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (topology.input_count,):
        raise ValueError(
            f"input length {x.shape} does not match input_count {topology.input_count}"
        )
    return _forward_activations(ws, topology, x)[-1]


def forward_batch(ws: WeightSet, topology: NetworkTopology, X: np.ndarray) -> np.ndarray:
    """Vectorized forward pass over the rows of X."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != topology.input_count:
        raise ValueError("X must have shape (n, input_count)")
    hid_f, _ = ACTIVATIONS[topology.hidden_activation]
    out_f, _ = ACTIVATIONS[topology.output_activation]
    a = X
    last = len(ws.weights) - 1
    for i, (w, b) in enumerate(zip(ws.weights, ws.biases)):
        z = a @ w.T + b
        if i == last:
            if ws.jump is not None:
                z = z + X @ ws.jump.T
            a = out_f(z)
        else:
            a = hid_f(z)
    return a


def sample_loss(ws: WeightSet, topology: NetworkTopology, x, target) -> float:
    """Per-sample loss: mean squared error over the output dimensions."""
    y = forward(ws, topology, np.asarray(x, dtype=float))
    d = y - np.asarray(target, dtype=float)
    return float(np.mean(d * d))


def mse(ws: WeightSet, topology: NetworkTopology, X, Y) -> float:
    """Mean squared error over all samples and outputs."""
    pred = forward_batch(ws, topology, np.asarray(X, dtype=float))
    d = pred - np.asarray(Y, dtype=float)
    return float(np.mean(d * d))


def backprop(ws: WeightSet, topology: NetworkTopology, x, target) -> WeightSet:
    """Gradient of the per-sample MSE with respect to every parameter."""
    x = np.asarray(x, dtype=float)
    target = np.asarray(target, dtype=float)
    acts = _forward_activations(ws, topology, x)
    _, hid_df = ACTIVATIONS[topology.hidden_activation]
    _, out_df = ACTIVATIONS[topology.output_activation]

    grad = ws.zeros_like()
    n_layers = len(ws.weights)
    y = acts[-1]
    # dE/dy for E = mean_j (y_j - t_j)^2
    delta = (2.0 / y.shape[0]) * (y - target) * out_df(y)
    for i in range(n_layers - 1, -1, -1):
        grad.weights[i][:] = np.outer(delta, acts[i])
        grad.biases[i][:] = delta
        if i == n_layers - 1 and ws.jump is not None:
            grad.jump[:] = np.outer(delta, x)
        if i > 0:
            delta = (ws.weights[i].T @ delta) * hid_df(acts[i])
    return grad


def numerical_gradient(
    ws: WeightSet, topology: NetworkTopology, x, target, eps: float = 1e-5
) -> WeightSet:
    """Central-difference gradient of the per-sample MSE; verification oracle."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    grad = ws.zeros_like()
    for arr, g in zip(ws.arrays(), grad.arrays()):
        it = np.nditer(arr, flags=["multi_index"])
        for _ in it:
            idx = it.multi_index
            orig = arr[idx]
            arr[idx] = orig + eps
            up = sample_loss(ws, topology, x, target)
            arr[idx] = orig - eps
            down = sample_loss(ws, topology, x, target)
            arr[idx] = orig
            g[idx] = (up - down) / (2.0 * eps)
    return grad


@dataclass(frozen=True)
class TrainingConfig:
    learning_rate: float
    momentum: float = 0.0
    max_epochs: int = 2000
    patience: int = 100
    seed: int = 0
    divergence_limit: float = 1e6

    def __post_init__(self):
        if self.learning_rate < 0:
            raise ValueError("learning_rate must be non-negative")
        if not (0.0 <= self.momentum < 1.0):
            raise ValueError("momentum must lie in [0, 1)")
        if self.patience < 1:
            raise ValueError("patience must be >= 1")
        if self.max_epochs < 1:
            raise ValueError("max_epochs must be >= 1")


@dataclass
class TrainingTrace:
    train_mse: list[float] = field(default_factory=list)
    test_mse: list[float] = field(default_factory=list)
    best_epoch: int = 0  # 1-based epoch index of the test-MSE minimum
    stopped_reason: str = ""  # "patience" | "max_epochs" | "diverged"

    def save_csv(self, path) -> None:
        with open(path, "w") as fh:
            fh.write("epoch,train_mse,test_mse\n")
            for i, (tr, te) in enumerate(zip(self.train_mse, self.test_mse), start=1):
                fh.write(f"{i},{tr!r},{te!r}\n")


class TrainingDivergence(RuntimeError):
    """Raised when the loss blows up; carries the trace accumulated so far."""

    def __init__(self, message: str, trace: TrainingTrace):
        super().__init__(message)
        self.trace = trace


def train(
    topology: NetworkTopology,
    train_x,
    train_y,
    test_x,
    test_y,
    config: TrainingConfig,
) -> tuple[WeightSet, TrainingTrace]:
    """Per-sample backprop with momentum and early stopping.

    Update rule: dw(t) = -lr * grad + momentum * dw(t-1). Sample order is
    reshuffled every epoch by the seeded RNG. Training stops when the test
    MSE has not decreased for `patience` consecutive epochs or at max_epochs,
    and the returned weights are the snapshot from the best epoch.
    """
    train_x = np.asarray(train_x, dtype=float)
    train_y = np.asarray(train_y, dtype=float)
    test_x = np.asarray(test_x, dtype=float)
    test_y = np.asarray(test_y, dtype=float)
    if len(train_x) == 0 or len(test_x) == 0:
        raise ValueError("training and test sets must be non-empty")

    ss = np.random.SeedSequence(config.seed)
    init_seed, shuffle_seed = ss.spawn(2)
    ws = init_network(topology, int(init_seed.generate_state(1)[0]))
    rng = np.random.default_rng(int(shuffle_seed.generate_state(1)[0]))

    velocity = ws.zeros_like()
    trace = TrainingTrace()
    best_test = np.inf
    best_ws = ws.copy()
    stale = 0
    n = len(train_x)

    for epoch in range(1, config.max_epochs + 1):
        order = rng.permutation(n)
        for i in order:
            grad = backprop(ws, topology, train_x[i], train_y[i])
            for v, g, p in zip(velocity.arrays(), grad.arrays(), ws.arrays()):
                v *= config.momentum
                v -= config.learning_rate * g
                p += v

        train_err = mse(ws, topology, train_x, train_y)
        test_err = mse(ws, topology, test_x, test_y)
        trace.train_mse.append(train_err)
        trace.test_mse.append(test_err)

        if not np.isfinite(train_err) or train_err > config.divergence_limit:
            trace.stopped_reason = "diverged"
            raise TrainingDivergence(
                f"training diverged at epoch {epoch} (train MSE {train_err})", trace
            )

        if test_err < best_test:
            best_test = test_err
            best_ws = ws.copy()
            trace.best_epoch = epoch
            stale = 0
        else:
            stale += 1
            if stale >= config.patience:
                trace.stopped_reason = "patience"
                return best_ws, trace

    trace.stopped_reason = "max_epochs"
    return best_ws, trace
