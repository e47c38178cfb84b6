"""Synthetic Ni/Co absorbance spectra: Beer's law over Gaussian absorption bands.

The measured corpus behind the original calibration experiment is not
available, so this module stands in for the instrument: each metal species
gets a molar-absorptivity curve built from one or more Gaussian bands, and
mixtures obey A(lambda) = sum_s eps_s(lambda) * c_s * l.
"""
from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field

import numpy as np

from .data import SampleSet


@dataclass(frozen=True)
class WavelengthGrid:
    """Evenly spaced scan grid. Defaults: 350-600 nm in 2 nm steps (126 points)."""

    start_nm: float = 350.0
    end_nm: float = 600.0
    step_nm: float = 2.0

    def __post_init__(self):
        if self.step_nm <= 0:
            raise ValueError("step_nm must be positive")
        if self.end_nm < self.start_nm:
            raise ValueError("end_nm must be >= start_nm")

    @property
    def count(self) -> int:
        return int(math.floor((self.end_nm - self.start_nm) / self.step_nm)) + 1

    def points(self) -> np.ndarray:
        return self.start_nm + self.step_nm * np.arange(self.count)


@dataclass(frozen=True)
class BandModel:
    """One Gaussian absorption band of a species' molar-absorptivity curve."""

    center_nm: float
    sigma_nm: float
    eps_peak: float  # M^-1 cm^-1 at the band center

    def __post_init__(self):
        if self.sigma_nm <= 0:
            raise ValueError("sigma_nm must be positive")
        if self.eps_peak < 0:
            raise ValueError("eps_peak must be non-negative")


@dataclass(frozen=True)
class SpeciesSpectrum:
    species: str
    bands: tuple[BandModel, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "bands", tuple(self.bands))


# Band parameters chosen so the absorptivity maxima land at 394 nm (Ni) and
# 510 nm (Co) on the default grid, with overlapping shoulders and ~0.5 AU
# absorbance at 0.1 M in a 1 cm cell. Overridable via a band config file.
DEFAULT_NI = SpeciesSpectrum("Ni", (BandModel(394.0, 30.0, 5.0),))
DEFAULT_CO = SpeciesSpectrum("Co", (BandModel(510.0, 25.0, 4.8),))


def molar_absorptivity(spectrum: SpeciesSpectrum, lam) -> float | np.ndarray:
    """Evaluate eps(lambda) as the sum of the species' Gaussian bands.

    `lam` may be a scalar or an array of wavelengths in nm.
    """
    lam = np.asarray(lam, dtype=float)
    if not np.all(np.isfinite(lam)):
        raise ValueError("wavelength must be finite")
    eps = np.zeros_like(lam)
    for band in spectrum.bands:
        eps = eps + band.eps_peak * np.exp(
            -((lam - band.center_nm) ** 2) / (2.0 * band.sigma_nm**2)
        )
    return float(eps) if eps.ndim == 0 else eps


def absorbance_profile(
    co_conc: float,
    ni_conc: float,
    co_spectrum: SpeciesSpectrum = DEFAULT_CO,
    ni_spectrum: SpeciesSpectrum = DEFAULT_NI,
    grid: WavelengthGrid = WavelengthGrid(),
    path_length_cm: float = 1.0,
) -> np.ndarray:
    """Beer's-law mixture absorbance over the grid: linear in each concentration."""
    if co_conc < 0 or ni_conc < 0:
        raise ValueError("concentrations must be non-negative")
    if path_length_cm <= 0:
        raise ValueError("path_length_cm must be positive")
    lam = grid.points()
    eps_co = molar_absorptivity(co_spectrum, lam)
    eps_ni = molar_absorptivity(ni_spectrum, lam)
    return (eps_co * co_conc + eps_ni * ni_conc) * path_length_cm


@dataclass(frozen=True)
class GenerationSpec:
    """Everything needed to synthesize a corpus reproducibly."""

    grid: WavelengthGrid = WavelengthGrid()
    co_min: float = 0.02
    co_max: float = 0.10
    ni_min: float = 0.02
    ni_max: float = 0.10
    count: int = 6000
    noise_sigma: float = 0.005  # absorbance units, zero-mean Gaussian
    path_length_cm: float = 1.0
    seed: int = 0
    co_spectrum: SpeciesSpectrum = DEFAULT_CO
    ni_spectrum: SpeciesSpectrum = DEFAULT_NI

    def __post_init__(self):
        if not (0 <= self.co_min <= self.co_max):
            raise ValueError("require 0 <= co_min <= co_max")
        if not (0 <= self.ni_min <= self.ni_max):
            raise ValueError("require 0 <= ni_min <= ni_max")
        if self.count <= 0:
            raise ValueError("count must be positive")
        if self.noise_sigma < 0:
            raise ValueError("noise_sigma must be non-negative")
        if self.path_length_cm <= 0:
            raise ValueError("path_length_cm must be positive")


def generate_dataset(spec: GenerationSpec) -> SampleSet:
    """Draw `count` random mixtures and their noisy Beer's-law spectra.

    Concentrations are uniform per species; each reading is perturbed by
    N(0, noise_sigma) and clamped at zero. Deterministic for a fixed seed.
    """
    rng = np.random.default_rng(spec.seed)
    co = rng.uniform(spec.co_min, spec.co_max, size=spec.count)
    ni = rng.uniform(spec.ni_min, spec.ni_max, size=spec.count)
    lam = spec.grid.points()
    eps_co = molar_absorptivity(spec.co_spectrum, lam)
    eps_ni = molar_absorptivity(spec.ni_spectrum, lam)
    clean = (np.outer(co, eps_co) + np.outer(ni, eps_ni)) * spec.path_length_cm
    if spec.noise_sigma > 0:
        clean = clean + rng.normal(0.0, spec.noise_sigma, size=clean.shape)
    absorbances = np.clip(clean, 0.0, None)
    return SampleSet(
        concentrations=np.column_stack([co, ni]),
        absorbances=absorbances,
        wavelengths_nm=lam,
    )


def load_band_config(path) -> dict[str, SpeciesSpectrum]:
    """Read species band models from an INI-style file.

    One section per species; keys center_nm, sigma_nm, eps_peak. Each key
    accepts a comma-separated list for multi-band species, e.g.::

        [Ni]
        center_nm = 394, 660
        sigma_nm = 30, 40
        eps_peak = 5.0, 1.2
    """
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise ValueError(f"cannot read band config: {path}")
    species = {}
    for name in parser.sections():
        sec = parser[name]
        try:
            centers = [float(v) for v in sec["center_nm"].split(",")]
            sigmas = [float(v) for v in sec["sigma_nm"].split(",")]
            peaks = [float(v) for v in sec["eps_peak"].split(",")]
        except KeyError as exc:
            raise ValueError(f"band config section [{name}] missing key {exc}") from exc
        if not (len(centers) == len(sigmas) == len(peaks)):
            raise ValueError(f"band config section [{name}]: list lengths differ")
        bands = tuple(BandModel(c, s, p) for c, s, p in zip(centers, sigmas, peaks))
        species[name] = SpeciesSpectrum(name, bands)
    return species


def band_config_dict(co: SpeciesSpectrum = DEFAULT_CO, ni: SpeciesSpectrum = DEFAULT_NI) -> dict:
    """JSON-friendly view of the band models (used by the model metadata endpoint)."""
    def one(sp: SpeciesSpectrum):
        return [
            {"center_nm": b.center_nm, "sigma_nm": b.sigma_nm, "eps_peak": b.eps_peak}
            for b in sp.bands
        ]

    return {co.species: one(co), ni.species: one(ni)}
