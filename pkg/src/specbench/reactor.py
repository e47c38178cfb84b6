"""Artificial-chemistry search over network structures and hyperparameters.

Molecules encode (hidden layers, widths, jump flag, learning rate, momentum).
Bimolecular collisions recombine two molecules; wall collisions mutate a single
gene. Each cycle the reactor filter keeps the fittest fixed-size population,
and the run ends on structural consensus or a cycle budget.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

import numpy as np

from .metrics import pearson
from .network import NetworkTopology, TrainingConfig, TrainingDivergence, forward_batch, train

DIVERGED_FITNESS = -1.0


@dataclass(frozen=True)
class Molecule:
    widths: tuple[int, ...]  # one entry per hidden layer
    jump_flag: bool
    learning_rate: float
    momentum: float
    fitness: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "widths", tuple(int(w) for w in self.widths))
        if len(self.widths) < 1:
            raise ValueError("at least one hidden layer is required")

    @property
    def hidden_layer_count(self) -> int:
        return len(self.widths)

    @property
    def structure(self) -> tuple:
        """The consensus key: architecture only, hyperparameters excluded."""
        return (self.hidden_layer_count, self.widths, self.jump_flag)

    @property
    def total_neurons(self) -> int:
        return sum(self.widths)

    def genes(self) -> tuple:
        return (self.widths, self.jump_flag, self.learning_rate, self.momentum)

    def to_dict(self) -> dict:
        return {
            "hidden_layer_count": self.hidden_layer_count,
            "widths": list(self.widths),
            "jump_flag": self.jump_flag,
            "learning_rate": self.learning_rate,
            "momentum": self.momentum,
            "fitness": self.fitness,
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "Molecule":
        return cls(
            widths=tuple(payload["widths"]),
            jump_flag=bool(payload["jump_flag"]),
            learning_rate=float(payload["learning_rate"]),
            momentum=float(payload["momentum"]),
            fitness=payload.get("fitness"),
        )

    def save(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh)


@dataclass(frozen=True)
class ReactorConfig:
    input_count: int
    output_count: int
    population_size: int = 50
    max_cycles: int = 10_000
    consensus_fraction: float = 0.80
    collisions_per_cycle: int = 10
    wall_collision_probability: float = 0.2
    max_epochs_per_molecule: int = 2000
    seed: int = 0
    # gene bounds; they bracket the known-good region without pinning it
    max_hidden_layers: int = 3
    width_min: int = 1
    width_max: int = 200
    lr_min: float = 0.001
    lr_max: float = 1.0
    momentum_min: float = 0.0
    momentum_max: float = 0.99
    fitness_mode: str = "pearson"  # or "neg_mse"

    def __post_init__(self):
        if self.population_size < 2:
            raise ValueError("population_size must be >= 2")
        if not (0 < self.consensus_fraction <= 1):
            raise ValueError("consensus_fraction must lie in (0, 1]")
        if self.max_hidden_layers < 1 or self.width_min < 1:
            raise ValueError("layer/width bounds must be >= 1")
        if self.width_max < self.width_min:
            raise ValueError("width_max must be >= width_min")
        if self.fitness_mode not in ("pearson", "neg_mse"):
            raise ValueError(f"unknown fitness_mode {self.fitness_mode!r}")


@dataclass
class ReactorResult:
    best: Molecule
    population: list[Molecule]
    history: list[dict]  # cycle, best_fitness, mean_fitness, consensus_fraction_observed
    termination_reason: str  # "consensus" | "budget"
    cycles_run: int

    def save_history_csv(self, path) -> None:
        with open(path, "w") as fh:
            fh.write("cycle,best_fitness,mean_fitness,consensus_fraction_observed\n")
            for row in self.history:
                fh.write(
                    f"{row['cycle']},{row['best_fitness']!r},"
                    f"{row['mean_fitness']!r},{row['consensus_fraction_observed']!r}\n"
                )


def random_molecule(config: ReactorConfig, rng: np.random.Generator) -> Molecule:
    layers = int(rng.integers(1, config.max_hidden_layers + 1))
    widths = tuple(
        int(rng.integers(config.width_min, config.width_max + 1)) for _ in range(layers)
    )
    return Molecule(
        widths=widths,
        jump_flag=bool(rng.integers(0, 2)),
        learning_rate=float(rng.uniform(config.lr_min, config.lr_max)),
        momentum=float(rng.uniform(config.momentum_min, config.momentum_max)),
    )


def _blend(a: float, b: float, lo: float, hi: float, rng) -> float:
    u = rng.uniform(-0.25, 1.25)
    return float(np.clip(u * a + (1.0 - u) * b, lo, hi))


def collide(m1: Molecule, m2: Molecule, rng: np.random.Generator, config: ReactorConfig):
    """Bimolecular reaction: two offspring recombined gene-by-gene.

    The layer structure (count + widths) travels as one gene so offspring stay
    internally consistent; the jump flag is picked per parent; continuous genes
    are extrapolating blends clipped to bounds.
    """
    children = []
    for _ in range(2):
        widths = (m1 if rng.integers(0, 2) else m2).widths
        jump = (m1 if rng.integers(0, 2) else m2).jump_flag
        lr = _blend(m1.learning_rate, m2.learning_rate, config.lr_min, config.lr_max, rng)
        mom = _blend(m1.momentum, m2.momentum, config.momentum_min, config.momentum_max, rng)
        children.append(Molecule(widths, jump, lr, mom))
    return children[0], children[1]


def wall_collision(m: Molecule, rng: np.random.Generator, config: ReactorConfig) -> Molecule:
    """Unary reaction with the tank wall: exactly one gene changes."""
    gene = int(rng.integers(0, 4))  # 0=structure, 1=jump, 2=lr, 3=momentum
    for _ in range(1000):
        if gene == 0:
            layers = int(rng.integers(1, config.max_hidden_layers + 1))
            widths = tuple(
                int(rng.integers(config.width_min, config.width_max + 1))
                for _ in range(layers)
            )
            mutant = replace(m, widths=widths, fitness=None)
            if mutant.widths != m.widths:
                return mutant
        elif gene == 1:
            return replace(m, jump_flag=not m.jump_flag, fitness=None)
        elif gene == 2:
            sigma = 0.1 * (config.lr_max - config.lr_min)
            lr = float(np.clip(m.learning_rate + rng.normal(0, sigma), config.lr_min, config.lr_max))
            if lr != m.learning_rate:
                return replace(m, learning_rate=lr, fitness=None)
        else:
            sigma = 0.1 * (config.momentum_max - config.momentum_min)
            mom = float(
                np.clip(m.momentum + rng.normal(0, sigma), config.momentum_min, config.momentum_max)
            )
            if mom != m.momentum:
                return replace(m, momentum=mom, fitness=None)
    raise RuntimeError("wall collision failed to produce a distinct gene value")


def evaluate_molecule(molecule: Molecule, data, config: ReactorConfig) -> float:
    """Train the encoded net and score it on the validation set.

    `data` is a ((train_x, train_y), (test_x, test_y), (val_x, val_y)) triple
    of normalized arrays. Divergent training yields the sentinel fitness -1.
    """
    (train_x, train_y), (test_x, test_y), (val_x, val_y) = data
    topology = NetworkTopology(
        input_count=config.input_count,
        hidden_layer_widths=molecule.widths,
        output_count=config.output_count,
        jump_connections=molecule.jump_flag,
    )
    tconf = TrainingConfig(
        learning_rate=molecule.learning_rate,
        momentum=molecule.momentum,
        max_epochs=config.max_epochs_per_molecule,
        patience=100,
        seed=config.seed,
    )
    try:
        weights, _ = train(topology, train_x, train_y, test_x, test_y, tconf)
    except TrainingDivergence:
        return DIVERGED_FITNESS
    pred = forward_batch(weights, topology, np.asarray(val_x, dtype=float))
    actual = np.asarray(val_y, dtype=float)
    if config.fitness_mode == "neg_mse":
        return -float(np.mean((pred - actual) ** 2))
    rs = []
    for j in range(actual.shape[1]):
        try:
            rs.append(pearson(pred[:, j], actual[:, j]))
        except ValueError:
            rs.append(0.0)  # constant column contributes nothing
    return float(np.mean(rs))


def _consensus_fraction(population: list[Molecule]) -> float:
    counts: dict[tuple, int] = {}
    for m in population:
        counts[m.structure] = counts.get(m.structure, 0) + 1
    return max(counts.values()) / len(population)


def run_reactor(
    config: ReactorConfig,
    data=None,
    fitness_fn=None,
    initial_population: list[Molecule] | None = None,
) -> ReactorResult:
    """Run the reactor until structural consensus or the cycle budget.

    `fitness_fn(molecule) -> float` overrides the default train-and-validate
    evaluation (used for cheap surrogate searches and tests).
    """
    if fitness_fn is None:
        if data is None:
            raise ValueError("either data or fitness_fn is required")
        fitness_fn = lambda m: evaluate_molecule(m, data, config)

    rng = np.random.default_rng(config.seed)
    cache: dict[tuple, float] = {}

    def fitness(m: Molecule) -> Molecule:
        key = m.genes()
        if key not in cache:
            cache[key] = fitness_fn(m)
        return replace(m, fitness=cache[key])

    if initial_population is not None:
        population = [fitness(m) for m in initial_population]
    else:
        population = [fitness(random_molecule(config, rng)) for _ in range(config.population_size)]

    order = {id(m): i for i, m in enumerate(population)}
    next_index = len(population)
    history: list[dict] = []
    reason = "budget"
    cycle = 0

    def record(cycle: int):
        fits = [m.fitness for m in population]
        history.append(
            {
                "cycle": cycle,
                "best_fitness": max(fits),
                "mean_fitness": float(np.mean(fits)),
                "consensus_fraction_observed": _consensus_fraction(population),
            }
        )

    record(0)
    if _consensus_fraction(population) >= config.consensus_fraction:
        reason = "consensus"
    else:
        for cycle in range(1, config.max_cycles + 1):
            offspring: list[Molecule] = []
            for _ in range(config.collisions_per_cycle):
                if rng.uniform() < config.wall_collision_probability:
                    m = population[int(rng.integers(0, len(population)))]
                    offspring.append(wall_collision(m, rng, config))
                else:
                    i, j = rng.choice(len(population), size=2, replace=False)
                    c1, c2 = collide(population[i], population[j], rng, config)
                    offspring.extend((c1, c2))
            evaluated = [fitness(m) for m in offspring]  # deterministic order
            pool = population + evaluated
            for m in pool:
                if id(m) not in order:
                    order[id(m)] = next_index
                    next_index += 1
            # reactor filter: fittest survive; ties favor smaller nets, then age
            pool.sort(key=lambda m: (-m.fitness, m.total_neurons, order[id(m)]))
            population = pool[: config.population_size]
            record(cycle)
            if _consensus_fraction(population) >= config.consensus_fraction:
                reason = "consensus"
                break

    best = max(population, key=lambda m: m.fitness)
    return ReactorResult(
        best=best,
        population=population,
        history=history,
        termination_reason=reason,
        cycles_run=cycle,
    )
