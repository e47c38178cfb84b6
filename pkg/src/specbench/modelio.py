"""Trained-model bundles: topology + weights + normalization, saved as versioned JSON."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .data import NormalizationParams
from .network import NetworkTopology, WeightSet, forward_batch

FORMAT_TAG = "specbench-model/1"

FORWARD = "forward"  # spectrum -> concentrations
DUAL = "dual"  # concentrations -> spectrum

CONC_COLUMNS = ("co_M", "ni_M")


@dataclass
class TrainedModel:
    """A deployable net plus everything needed to map physical units in and out."""

    direction: str
    topology: NetworkTopology
    weights: WeightSet
    norm: NormalizationParams
    wavelengths_nm: np.ndarray
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.direction not in (FORWARD, DUAL):
            raise ValueError(f"unknown model direction {self.direction!r}")
        self.wavelengths_nm = np.asarray(self.wavelengths_nm, dtype=float)
        n_abs = self.wavelengths_nm.shape[0]
        want_in, want_out = (
            (n_abs, 2) if self.direction == FORWARD else (2, n_abs)
        )
        if (self.topology.input_count, self.topology.output_count) != (want_in, want_out):
            raise ValueError(
                f"{self.direction} model topology does not match the {n_abs}-point grid"
            )

    @property
    def absorbance_columns(self) -> tuple[str, ...]:
        return tuple(f"a{int(round(w))}" for w in self.wavelengths_nm)

    def predict(self, values: np.ndarray) -> np.ndarray:
        """Physical units in, physical units out (normalization handled internally)."""
        values = np.atleast_2d(np.asarray(values, dtype=float))
        if self.direction == FORWARD:
            in_cols, out_cols = self.absorbance_columns, CONC_COLUMNS
        else:
            in_cols, out_cols = CONC_COLUMNS, self.absorbance_columns
        if values.shape[1] != len(in_cols):
            raise ValueError(
                f"expected {len(in_cols)} input values, got {values.shape[1]}"
            )
        x = self.norm.apply(values, in_cols)
        y = forward_batch(self.weights, self.topology, x)
        return self.norm.invert(y, out_cols)

    def to_dict(self) -> dict:
        return {
            "format": FORMAT_TAG,
            "direction": self.direction,
            "topology": {
                "input_count": self.topology.input_count,
                "hidden_layer_widths": list(self.topology.hidden_layer_widths),
                "output_count": self.topology.output_count,
                "jump_connections": self.topology.jump_connections,
                "hidden_activation": self.topology.hidden_activation,
                "output_activation": self.topology.output_activation,
            },
            "weights": {
                "layers": [
                    {"w": w.tolist(), "b": b.tolist()}
                    for w, b in zip(self.weights.weights, self.weights.biases)
                ],
                "jump": None if self.weights.jump is None else self.weights.jump.tolist(),
            },
            "normalization": json.loads(self.norm.to_json()),
            "wavelengths_nm": self.wavelengths_nm.tolist(),
            "provenance": self.provenance,
        }

    def save(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh)

    @classmethod
    def from_dict(cls, payload: dict) -> "TrainedModel":
        if payload.get("format") != FORMAT_TAG:
            raise ValueError(f"unsupported model format {payload.get('format')!r}")
        t = payload["topology"]
        topology = NetworkTopology(
            input_count=t["input_count"],
            hidden_layer_widths=tuple(t["hidden_layer_widths"]),
            output_count=t["output_count"],
            jump_connections=t["jump_connections"],
            hidden_activation=t["hidden_activation"],
            output_activation=t["output_activation"],
        )
        wpayload = payload["weights"]
        weights = WeightSet(
            [np.asarray(layer["w"], dtype=float) for layer in wpayload["layers"]],
            [np.asarray(layer["b"], dtype=float) for layer in wpayload["layers"]],
            None if wpayload["jump"] is None else np.asarray(wpayload["jump"], dtype=float),
        )
        norm = NormalizationParams.from_json(json.dumps(payload["normalization"]))
        return cls(
            direction=payload["direction"],
            topology=topology,
            weights=weights,
            norm=norm,
            wavelengths_nm=np.asarray(payload["wavelengths_nm"], dtype=float),
            provenance=payload.get("provenance", {}),
        )

    @classmethod
    def load(cls, path) -> "TrainedModel":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))
