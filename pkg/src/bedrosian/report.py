"""Deterministic JSON serialisation of run reports."""
from __future__ import annotations

import json
import math
from importlib import resources

import numpy as np

SCHEMA_NAME = "run_report.schema.json"


def jsonable(obj):
    """Recursively convert numpy scalars, complex numbers and infinities to JSON values.

    Infinite floats become the string ``"inf"`` (or ``"-inf"``); NaN is rejected.
    """
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            raise ValueError("NaN is not allowed in reports")
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": jsonable(obj.real), "im": jsonable(obj.imag)}
    return obj


def dumps(report: dict) -> str:
    """Byte-stable JSON text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(jsonable(report), indent=2, sort_keys=True, allow_nan=False) + "\n"


def load_schema() -> dict:
    text = resources.files("bedrosian.schemas").joinpath(SCHEMA_NAME).read_text()
    return json.loads(text)
