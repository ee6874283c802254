"""CSV plumbing shared by the raw, scored and curve files."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import numpy as np
import pandas as pd

from .errors import DataValidationError


def _shortest_repr(value: float) -> str:
    return repr(float(value))


def write_frame(frame: pd.DataFrame, path: Path) -> None:
    """Write ``frame`` as UTF-8 CSV with round-trippable float text."""

    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(
        path,
        index=False,
        float_format=_shortest_repr,
        na_rep="nan",
        lineterminator="\n",
        encoding="utf-8",
    )


def read_frame(path: Path, required: Sequence[str]) -> pd.DataFrame:
    """Read a CSV and check that every ``required`` column is present."""

    if not path.exists():
        raise DataValidationError(f"{path}: file does not exist")
    try:
        frame = pd.read_csv(path, float_precision="round_trip", encoding="utf-8")
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as exc:
        raise DataValidationError(f"{path}: cannot parse CSV ({exc})") from exc
    missing = [column for column in required if column not in frame.columns]
    if missing:
        raise DataValidationError(f"{path}: missing columns {', '.join(missing)}")
    return frame


def numeric_column(frame: pd.DataFrame, column: str, path: Path, finite: bool = True) -> np.ndarray:
    """Coerce a column to floats, naming the first offending line on failure."""

    values = pd.to_numeric(frame[column], errors="coerce").to_numpy(dtype=float)
    bad = np.isnan(values)
    if bad.any():
        line = int(bad.nonzero()[0][0]) + 2
        raise DataValidationError(f"{path}: line {line}: column {column!r} is not numeric")
    if finite:
        infinite = ~np.isfinite(values)
        if infinite.any():
            line = int(infinite.nonzero()[0][0]) + 2
            raise DataValidationError(f"{path}: line {line}: column {column!r} is not finite")
    return values


def label_column(frame: pd.DataFrame, column: str, path: Path) -> np.ndarray:
    """Parse a +1/-1 class label column."""

    values = numeric_column(frame, column, path)
    bad = ~np.isin(values, (1.0, -1.0))
    if bad.any():
        index = int(bad.nonzero()[0][0])
        raise DataValidationError(
            f"{path}: line {index + 2}: label {frame[column].iloc[index]!r} is not -1 or 1"
        )
    return values.astype(np.int8)
