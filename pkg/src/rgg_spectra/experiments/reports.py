"""Versioned experiment reports and deterministic JSON/CSV writers."""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any, Literal

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

SCHEMA_VERSION = 1
CSV_FLOAT_FORMAT = "%.17g"

OutputFormat = Literal["json", "csv"]


class ExperimentReport(BaseModel):
    """{schema, experiment, params, per_trial, summary, pass, failures}."""

    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(default=SCHEMA_VERSION, alias="schema")
    experiment: str
    params: dict[str, Any] = Field(default_factory=dict)
    per_trial: list[dict[str, Any]] = Field(default_factory=list)
    summary: dict[str, Any] = Field(default_factory=dict)
    passed: bool = Field(default=True, alias="pass")
    failures: list[str] = Field(default_factory=list)

    def fail(self, message: str) -> None:
        self.failures.append(message)
        self.passed = False

    def to_json(self) -> str:
        payload = _round_floats(self.model_dump(by_alias=True))
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _round_floats(value: Any) -> Any:
    """Floats through 17 significant digits; NaN and infinities become strings."""
    if isinstance(value, np.ndarray):
        return _round_floats(value.tolist())
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float):
        if not math.isfinite(value):
            return str(value)
        return float(f"{value:.17g}")
    if isinstance(value, dict):
        return {str(k): _round_floats(v) for k, v in value.items()}
    if isinstance(value, list | tuple):
        return [_round_floats(v) for v in value]
    return value


def write_frame_csv(frame: pd.DataFrame, path: Path | str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
    return path


def write_report(
    report: ExperimentReport,
    path: Path | str,
    fmt: OutputFormat = "json",
    frame: pd.DataFrame | None = None,
) -> Path:
    """JSON writes the whole report; CSV writes ``frame`` (or the per-trial rows)."""
    path = Path(path)
    if fmt == "csv":
        return write_frame_csv(frame if frame is not None else pd.DataFrame(report.per_trial), path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(report.to_json(), encoding="utf-8")
    return path


def failure_payload(report: ExperimentReport) -> str:
    """Machine-readable failure list printed on stderr when assertions fail."""
    payload = {"experiment": report.experiment, "failures": report.failures}
    return json.dumps(payload, sort_keys=True)
