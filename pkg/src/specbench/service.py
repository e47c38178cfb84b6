"""Prediction service: loads the trained model pair and answers JSON queries.

Endpoints:
  POST /api/spectrum        {"co_M": x, "ni_M": y} -> wavelengths + absorbances
  POST /api/concentrations  {"absorbance": [...]}  -> {"co_M": x, "ni_M": y}
  GET  /api/model           topology, grid, band config, provenance
Static UI files are served at /.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import spectral
from .modelio import DUAL, FORWARD, TrainedModel

CONC_LIMIT = 0.12  # accepted request/output range in M
TRAINED_RANGE = (0.02, 0.10)  # extrapolation warning outside this band

ADDR_ENV = "SPECBENCH_ADDR"
MODEL_DIR_ENV = "SPECBENCH_MODEL_DIR"

FORWARD_FILE = "forward.json"
DUAL_FILE = "dual.json"


@dataclass(frozen=True)
class ModelRegistry:
    """Immutable pair of deployed models; either may be absent."""

    forward: TrainedModel | None
    dual: TrainedModel | None
    bands: dict

    @classmethod
    def load(cls, model_dir, bands: dict | None = None) -> "ModelRegistry":
        def maybe(path, direction):
            if not os.path.exists(path):
                return None
            model = TrainedModel.load(path)
            if model.direction != direction:
                raise ValueError(f"{path} holds a {model.direction} model, expected {direction}")
            return model

        return cls(
            forward=maybe(os.path.join(model_dir, FORWARD_FILE), FORWARD),
            dual=maybe(os.path.join(model_dir, DUAL_FILE), DUAL),
            bands=bands if bands is not None else spectral.band_config_dict(),
        )


def _error(status: int, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": message})


def create_app(registry: ModelRegistry, static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="specbench", docs_url=None, redoc_url=None)

    @app.post("/api/spectrum")
    async def predict_spectrum(request: Request):
        if registry.dual is None:
            return _error(503, "no dual model loaded")
        try:
            body = await request.json()
        except Exception:
            return _error(400, "request body must be JSON")
        if not isinstance(body, dict):
            return _error(400, "request body must be a JSON object")
        try:
            co = float(body["co_M"])
            ni = float(body["ni_M"])
        except (KeyError, TypeError, ValueError):
            return _error(400, "body requires numeric fields co_M and ni_M")
        if not (math.isfinite(co) and math.isfinite(ni)):
            return _error(400, "concentrations must be finite")
        if not (0.0 <= co <= CONC_LIMIT and 0.0 <= ni <= CONC_LIMIT):
            return _error(400, f"concentrations must lie in [0, {CONC_LIMIT}] M")
        absorbance = registry.dual.predict(np.array([[co, ni]]))[0]
        payload = {
            "wavelengths_nm": registry.dual.wavelengths_nm.tolist(),
            "absorbance": [float(v) for v in absorbance],
        }
        lo, hi = TRAINED_RANGE
        if not (lo <= co <= hi and lo <= ni <= hi):
            payload["warning"] = (
                f"concentrations outside the trained range [{lo}, {hi}] M; extrapolating"
            )
        return payload

    @app.post("/api/concentrations")
    async def predict_concentrations(request: Request):
        if registry.forward is None:
            return _error(503, "no forward model loaded")
        try:
            body = await request.json()
        except Exception:
            return _error(400, "request body must be JSON")
        if not isinstance(body, dict) or "absorbance" not in body:
            return _error(400, "body requires field absorbance")
        values = body["absorbance"]
        expected = registry.forward.wavelengths_nm.shape[0]
        if not isinstance(values, list) or len(values) != expected:
            found = len(values) if isinstance(values, list) else "non-list"
            return _error(400, f"expected {expected} absorbance values, found {found}")
        try:
            arr = np.array([float(v) for v in values])
        except (TypeError, ValueError):
            return _error(400, "absorbance values must be numbers")
        if not np.all(np.isfinite(arr)):
            return _error(400, "absorbance values must be finite")
        conc = registry.forward.predict(arr[None, :])[0]
        conc = np.clip(conc, 0.0, CONC_LIMIT)
        return {"co_M": float(conc[0]), "ni_M": float(conc[1])}

    @app.get("/api/model")
    async def model_metadata():
        def describe(model: TrainedModel | None):
            if model is None:
                return None
            return {
                "topology": {
                    "input_count": model.topology.input_count,
                    "hidden_layer_widths": list(model.topology.hidden_layer_widths),
                    "output_count": model.topology.output_count,
                    "jump_connections": model.topology.jump_connections,
                    "hidden_activation": model.topology.hidden_activation,
                    "output_activation": model.topology.output_activation,
                },
                "provenance": model.provenance,
            }

        grid = None
        for model in (registry.dual, registry.forward):
            if model is not None:
                lam = model.wavelengths_nm
                grid = {
                    "start_nm": float(lam[0]),
                    "end_nm": float(lam[-1]),
                    "step_nm": float(lam[1] - lam[0]) if lam.shape[0] > 1 else 0.0,
                    "count": int(lam.shape[0]),
                }
                break
        return {
            "forward": describe(registry.forward),
            "dual": describe(registry.dual),
            "grid": grid,
            "bands": registry.bands,
            "conc_limit_M": CONC_LIMIT,
            "trained_range_M": list(TRAINED_RANGE),
        }

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app


def serve(registry: ModelRegistry, addr: str, static_dir: str | None = None) -> None:
    """Blocking uvicorn server; addr is host:port."""
    import uvicorn

    host, _, port = addr.rpartition(":")
    uvicorn.run(create_app(registry, static_dir), host=host or "127.0.0.1", port=int(port))
