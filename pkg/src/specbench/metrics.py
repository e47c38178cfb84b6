"""Pearson correlation reports for the forward (2-output) and dual (126-output) models."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def pearson(predicted, actual) -> float:
    """Sample Pearson correlation coefficient.

    Raises on length mismatch, fewer than two points, or a constant argument.
    """
    x = np.asarray(predicted, dtype=float)
    y = np.asarray(actual, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("inputs must be 1-D vectors of equal length")
    if x.shape[0] < 2:
        raise ValueError("need at least two points")
    xc = x - x.mean()
    yc = y - y.mean()
    sx = float(np.sqrt(np.dot(xc, xc)))
    sy = float(np.sqrt(np.dot(yc, yc)))
    if sx == 0.0 or sy == 0.0:
        raise ValueError("correlation undefined for a constant vector")
    r = float(np.dot(xc, yc) / (sx * sy))
    return max(-1.0, min(1.0, r))


@dataclass(frozen=True)
class CorrelationReport:
    """Per-output Pearson r. Undefined correlations (constant columns) are None."""

    labels: tuple[str, ...]
    r: tuple[float | None, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "r", tuple(self.r))
        if len(self.labels) != len(self.r):
            raise ValueError("labels and r must align")

    def _defined(self):
        return [(lab, v) for lab, v in zip(self.labels, self.r) if v is not None]

    @property
    def min_r(self) -> float | None:
        vals = self._defined()
        return min(v for _, v in vals) if vals else None

    @property
    def max_r(self) -> float | None:
        vals = self._defined()
        return max(v for _, v in vals) if vals else None

    @property
    def argmax_label(self) -> str | None:
        vals = self._defined()
        return max(vals, key=lambda t: t[1])[0] if vals else None

    def save_csv(self, path) -> None:
        with open(path, "w") as fh:
            fh.write("label,r\n")
            for lab, v in zip(self.labels, self.r):
                fh.write(f"{lab},{'undefined' if v is None else repr(v)}\n")

    def save_gnuplot(self, path) -> None:
        """Two-column file (label value, r); undefined rows are skipped."""
        with open(path, "w") as fh:
            for lab, v in zip(self.labels, self.r):
                if v is None:
                    continue
                token = lab.strip("[]")
                try:
                    xval = float(token)
                except ValueError:
                    xval = math.nan
                fh.write(f"{xval:g} {v!r}\n" if not math.isnan(xval) else f"# {lab} {v!r}\n")

    def format_table(self) -> str:
        width = max(len(lab) for lab in self.labels)
        lines = [f"{'output':<{width}}  r"]
        for lab, v in zip(self.labels, self.r):
            lines.append(f"{lab:<{width}}  {'undefined' if v is None else f'{v:.6f}'}")
        lines.append(
            f"min r = {self.min_r}  max r = {self.max_r}  argmax = {self.argmax_label}"
        )
        return "\n".join(lines)


def correlation_report(predicted: np.ndarray, actual: np.ndarray, labels) -> CorrelationReport:
    """Column-wise Pearson r of predictions against ground truth."""
    predicted = np.asarray(predicted, dtype=float)
    actual = np.asarray(actual, dtype=float)
    if predicted.shape != actual.shape or predicted.ndim != 2:
        raise ValueError("predicted and actual must be matching (n, k) matrices")
    if predicted.shape[1] != len(labels):
        raise ValueError("label count must match output count")
    rs: list[float | None] = []
    for j in range(predicted.shape[1]):
        try:
            rs.append(pearson(predicted[:, j], actual[:, j]))
        except ValueError:
            rs.append(None)
    return CorrelationReport(tuple(labels), tuple(rs))


def evaluate_model(model, samples) -> CorrelationReport:
    """Run a trained model over a SampleSet and correlate against ground truth.

    Forward models report two entries labeled [Co] and [Ni]; dual models one
    entry per wavelength. Correlations are computed in physical units.
    """
    from .modelio import FORWARD

    if model.direction == FORWARD:
        predicted = model.predict(samples.absorbances)
        actual = samples.concentrations
        labels = ("[Co]", "[Ni]")
    else:
        predicted = model.predict(samples.concentrations)
        actual = samples.absorbances
        labels = tuple(f"{int(round(w))}" for w in samples.wavelengths_nm)
    return correlation_report(predicted, actual, labels)
