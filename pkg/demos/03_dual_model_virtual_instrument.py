"""The dual problem: predict the whole spectrum from the concentration pair.

Trains the 2-70-126 net on a reduced corpus and overlays its prediction on
the analytic Beer's-law curve, plus the per-wavelength correlation profile.

Run:  python3 demos/03_dual_model_virtual_instrument.py
"""
import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from specbench import data as data_mod
from specbench import spectral
from specbench.metrics import evaluate_model
from specbench.modelio import DUAL, TrainedModel
from specbench.network import NetworkTopology, TrainingConfig, train

HERE = pathlib.Path(__file__).parent

corpus = spectral.generate_dataset(spectral.GenerationSpec(count=1500, seed=42))
_, norm = data_mod.normalize(corpus)
parts = data_mod.split(corpus, seed=7)


def xy(samples):
    scaled = norm.apply(samples.columns(), samples.column_names)
    return scaled[:, :2], scaled[:, 2:]  # concentrations in, spectra out


topology = NetworkTopology(2, (70,), 126, jump_connections=True)
config = TrainingConfig(learning_rate=0.1, momentum=0.8, max_epochs=60, patience=100, seed=1)
tx, ty = xy(parts.train)
sx, sy = xy(parts.test)
weights, trace = train(topology, tx, ty, sx, sy, config)
model = TrainedModel(DUAL, topology, weights, norm, corpus.wavelengths_nm)
print(f"trained {len(trace.train_mse)} epochs; best test MSE {min(trace.test_mse):.3e}")

lam = corpus.wavelengths_nm
fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4))

for co, ni in [(0.03, 0.09), (0.06, 0.06), (0.09, 0.03)]:
    predicted = model.predict(np.array([[co, ni]]))[0]
    analytic = spectral.absorbance_profile(co, ni)
    (line,) = ax1.plot(lam, predicted, label=f"model Co={co} Ni={ni}")
    ax1.plot(lam, analytic, "--", color=line.get_color(), alpha=0.6)
ax1.set_xlabel("wavelength (nm)")
ax1.set_ylabel("absorbance")
ax1.set_title("dual net (solid) vs Beer's law (dashed)")
ax1.legend(fontsize=8)

report = evaluate_model(model, parts.validation)
rs = [np.nan if r is None else r for r in report.r]
ax2.plot(lam, rs)
ax2.set_xlabel("wavelength (nm)")
ax2.set_ylabel("Pearson r")
ax2.set_ylim(0, 1.02)
ax2.set_title(f"per-wavelength correlation (max at {report.argmax_label} nm)")

fig.tight_layout()
out = HERE / "dual_model_instrument.png"
fig.savefig(out, dpi=120)
print(f"wrote {out}")
