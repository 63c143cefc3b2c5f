"""CSV export of dense matrices for debugging."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pandas as pd

FLOAT_FORMAT = "%.17g"


def export_matrix_csv(matrix: np.ndarray, path: Path | str) -> Path:
    """Write one matrix row per line, comma separated, 17 significant digits, no header."""
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    pd.DataFrame(np.asarray(matrix, dtype=float)).to_csv(
        out, header=False, index=False, float_format=FLOAT_FORMAT
    )
    return out


def load_matrix_csv(path: Path | str) -> np.ndarray:
    return pd.read_csv(path, header=None, float_precision="round_trip").to_numpy(dtype=float)
