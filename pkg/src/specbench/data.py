"""Sample corpora: CSV persistence, [0,1] min-max normalization, seeded splits."""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Sample:
    """One record: a concentration pair plus its absorbance readings."""

    co_M: float
    ni_M: float
    absorbances: np.ndarray


@dataclass(frozen=True)
class SampleSet:
    """Column-oriented corpus: concentrations (n, 2) as [co, ni], absorbances (n, m)."""

    concentrations: np.ndarray
    absorbances: np.ndarray
    wavelengths_nm: np.ndarray

    def __post_init__(self):
        conc = np.asarray(self.concentrations, dtype=float)
        ab = np.asarray(self.absorbances, dtype=float)
        lam = np.asarray(self.wavelengths_nm, dtype=float)
        if conc.ndim != 2 or conc.shape[1] != 2:
            raise ValueError("concentrations must have shape (n, 2)")
        if ab.ndim != 2 or ab.shape[0] != conc.shape[0]:
            raise ValueError("absorbances row count must match concentrations")
        if ab.shape[1] != lam.shape[0]:
            raise ValueError("absorbance column count must match wavelength grid")
        if not (np.all(np.isfinite(conc)) and np.all(np.isfinite(ab))):
            raise ValueError("all values must be finite")
        object.__setattr__(self, "concentrations", conc)
        object.__setattr__(self, "absorbances", ab)
        object.__setattr__(self, "wavelengths_nm", lam)

    def __len__(self) -> int:
        return self.concentrations.shape[0]

    def sample(self, i: int) -> Sample:
        return Sample(self.concentrations[i, 0], self.concentrations[i, 1], self.absorbances[i])

    @property
    def column_names(self) -> list[str]:
        return ["co_M", "ni_M"] + [f"a{int(round(w))}" for w in self.wavelengths_nm]

    def columns(self) -> np.ndarray:
        """All columns as one (n, 2+m) matrix, concentrations first."""
        return np.hstack([self.concentrations, self.absorbances])

    def take(self, idx) -> "SampleSet":
        return SampleSet(self.concentrations[idx], self.absorbances[idx], self.wavelengths_nm)

    def save_csv(self, path) -> None:
        cols = self.columns()
        with open(path, "w") as fh:
            fh.write(",".join(self.column_names) + "\n")
            for row in cols:
                fh.write(",".join(repr(float(v)) for v in row) + "\n")

    @classmethod
    def load_csv(cls, path) -> "SampleSet":
        with open(path) as fh:
            header = fh.readline().strip().split(",")
            if header[:2] != ["co_M", "ni_M"]:
                raise ValueError(f"unexpected CSV header in {path}")
            wavelengths = []
            for name in header[2:]:
                if not name.startswith("a"):
                    raise ValueError(f"unexpected absorbance column name {name!r}")
                wavelengths.append(float(name[1:]))
            rows = np.loadtxt(fh, delimiter=",", ndmin=2)
        if rows.shape[1] != len(header):
            raise ValueError(f"row width does not match header in {path}")
        return cls(rows[:, :2], rows[:, 2:], np.asarray(wavelengths))


@dataclass(frozen=True)
class NormalizationParams:
    """Per-column min-max statistics; constant columns are flagged and map to 0."""

    names: tuple[str, ...]
    mins: np.ndarray
    maxs: np.ndarray
    constant: np.ndarray  # bool per column

    def __post_init__(self):
        mins = np.asarray(self.mins, dtype=float)
        maxs = np.asarray(self.maxs, dtype=float)
        const = np.asarray(self.constant, dtype=bool)
        if not (len(self.names) == mins.shape[0] == maxs.shape[0] == const.shape[0]):
            raise ValueError("per-column arrays must align with names")
        if np.any(mins > maxs):
            raise ValueError("column min exceeds max")
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "mins", mins)
        object.__setattr__(self, "maxs", maxs)
        object.__setattr__(self, "constant", const)

    def _indices(self, names) -> np.ndarray:
        pos = {n: i for i, n in enumerate(self.names)}
        try:
            return np.array([pos[n] for n in names], dtype=int)
        except KeyError as exc:
            raise ValueError(f"unknown column {exc}") from exc

    def apply(self, values: np.ndarray, names=None) -> np.ndarray:
        """Scale the given columns into [0, 1]; constant columns become 0."""
        idx = np.arange(len(self.names)) if names is None else self._indices(names)
        values = np.asarray(values, dtype=float)
        if values.shape[-1] != idx.shape[0]:
            raise ValueError("value width does not match selected columns")
        span = self.maxs[idx] - self.mins[idx]
        safe = np.where(self.constant[idx], 1.0, span)
        out = (values - self.mins[idx]) / safe
        return np.where(self.constant[idx], 0.0, out)

    def invert(self, values: np.ndarray, names=None) -> np.ndarray:
        """Exact inverse of `apply`; constant columns restore the stored constant."""
        idx = np.arange(len(self.names)) if names is None else self._indices(names)
        values = np.asarray(values, dtype=float)
        if values.shape[-1] != idx.shape[0]:
            raise ValueError("value width does not match selected columns")
        span = self.maxs[idx] - self.mins[idx]
        out = values * span + self.mins[idx]
        return np.where(self.constant[idx], self.mins[idx], out)

    def to_json(self) -> str:
        payload = {
            name: {
                "min": float(self.mins[i]),
                "max": float(self.maxs[i]),
                "constant": bool(self.constant[i]),
            }
            for i, name in enumerate(self.names)
        }
        return json.dumps(payload, indent=None)

    @classmethod
    def from_json(cls, text: str) -> "NormalizationParams":
        payload = json.loads(text)
        names = tuple(payload.keys())
        mins = np.array([payload[n]["min"] for n in names])
        maxs = np.array([payload[n]["max"] for n in names])
        const = np.array([payload[n]["constant"] for n in names])
        return cls(names, mins, maxs, const)

    def save(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_json())

    @classmethod
    def load(cls, path) -> "NormalizationParams":
        with open(path) as fh:
            return cls.from_json(fh.read())


def normalize(samples: SampleSet) -> tuple[SampleSet, NormalizationParams]:
    """Min-max scale every column (concentrations and absorbances) to [0, 1]."""
    if len(samples) == 0:
        raise ValueError("cannot normalize an empty sample set")
    cols = samples.columns()
    mins = cols.min(axis=0)
    maxs = cols.max(axis=0)
    const = maxs == mins
    params = NormalizationParams(tuple(samples.column_names), mins, maxs, const)
    scaled = params.apply(cols)
    return (
        SampleSet(scaled[:, :2], scaled[:, 2:], samples.wavelengths_nm),
        params,
    )


def denormalize(values: np.ndarray, params: NormalizationParams) -> np.ndarray:
    """Invert `normalize` on full-width rows."""
    return params.invert(values)


@dataclass(frozen=True)
class SplitSet:
    train: SampleSet
    test: SampleSet
    validation: SampleSet


TRAIN_FRACTION = 0.70
TEST_FRACTION = 0.10  # remainder (20%) is the validation set


def split(samples: SampleSet, seed: int) -> SplitSet:
    """Seeded shuffle then contiguous 70/10/20 cuts (4200/600/1200 at n=6000)."""
    n = len(samples)
    n_train = int(n * TRAIN_FRACTION)
    n_test = int(n * TEST_FRACTION)
    n_val = n - n_train - n_test
    if min(n_train, n_test, n_val) < 1:
        raise ValueError(f"{n} records are too few to split 70/10/20")
    rng = np.random.default_rng(seed)
    perm = rng.permutation(n)
    return SplitSet(
        train=samples.take(perm[:n_train]),
        test=samples.take(perm[n_train : n_train + n_test]),
        validation=samples.take(perm[n_train + n_test :]),
    )
