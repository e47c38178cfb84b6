"""Artificial-chemistry search for a good network structure, at desk scale.

Runs the reactor over a narrowed gene space with a short per-molecule training
budget so the whole search finishes in a few minutes. The full-scale search
(widths up to 200, 2,000-epoch budgets, 10,000 cycles) uses the same code via
`specbench achem`.

Run:  python3 demos/04_achem_structure_search.py
"""
from specbench import data as data_mod
from specbench import spectral
from specbench.modelio import FORWARD
from specbench.reactor import ReactorConfig, run_reactor

corpus = spectral.generate_dataset(spectral.GenerationSpec(count=600, seed=42))
_, norm = data_mod.normalize(corpus)
parts = data_mod.split(corpus, seed=7)


def xy(samples):
    scaled = norm.apply(samples.columns(), samples.column_names)
    return scaled[:, 2:], scaled[:, :2]


data = tuple(xy(s) for s in (parts.train, parts.test, parts.validation))

config = ReactorConfig(
    input_count=126,
    output_count=2,
    population_size=10,
    max_cycles=8,
    collisions_per_cycle=4,
    wall_collision_probability=0.4,
    max_epochs_per_molecule=10,
    max_hidden_layers=2,
    width_max=40,
    seed=0,
)
result = run_reactor(config, data=data)

print(f"terminated after {result.cycles_run} cycles ({result.termination_reason})")
print("cycle  best_r   mean_r  consensus")
for row in result.history:
    print(
        f"{row['cycle']:>5}  {row['best_fitness']:.4f}  {row['mean_fitness']:.4f}  "
        f"{row['consensus_fraction_observed']:.2f}"
    )
best = result.best
print(
    f"\nbest molecule: widths={best.widths} jump={best.jump_flag} "
    f"lr={best.learning_rate:.3f} momentum={best.momentum:.3f} "
    f"validation r={best.fitness:.4f}"
)
