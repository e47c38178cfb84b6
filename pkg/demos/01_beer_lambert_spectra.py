"""Absorbance profiles of Ni, Co, and mixed solutions at increasing concentration.

Reproduces the classic instrument-style plots: the Ni curve peaks near 394 nm,
the Co curve near 510 nm, and the mixture shows both maxima with overlap.

Run:  python3 demos/01_beer_lambert_spectra.py  (writes PNGs next to itself)
"""
import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from specbench import spectral

HERE = pathlib.Path(__file__).parent
grid = spectral.WavelengthGrid()
lam = grid.points()

fig, axes = plt.subplots(1, 3, figsize=(15, 4), sharey=True)
concentrations = np.arange(0.02, 0.11, 0.02)

for c in concentrations:
    axes[0].plot(lam, spectral.absorbance_profile(0.0, c), label=f"{c:.2f} M")
    axes[1].plot(lam, spectral.absorbance_profile(c, 0.0), label=f"{c:.2f} M")
    axes[2].plot(lam, spectral.absorbance_profile(c, c), label=f"{c:.2f} M each")

for ax, title in zip(axes, ["Ni(II)", "Co(II)", "Ni + Co mixture"]):
    ax.set_title(title)
    ax.set_xlabel("wavelength (nm)")
    ax.legend(fontsize=8)
axes[0].set_ylabel("absorbance")

fig.tight_layout()
out = HERE / "beer_lambert_profiles.png"
fig.savefig(out, dpi=120)
print(f"wrote {out}")

# absorbance at each band maximum grows linearly with concentration
i394 = int(np.where(lam == 394.0)[0][0])
i510 = int(np.where(lam == 510.0)[0][0])
print("\n[Ni] vs A(394):")
for c in concentrations:
    print(f"  {c:.2f} M -> {spectral.absorbance_profile(0.0, c)[i394]:.4f}")
print("[Co] vs A(510):")
for c in concentrations:
    print(f"  {c:.2f} M -> {spectral.absorbance_profile(c, 0.0)[i510]:.4f}")
