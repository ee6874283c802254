"""Synthetic Gaussian datasets and raw feature/label records."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Dict, Iterable, Iterator, Tuple

import numpy as np
import pandas as pd
import yaml

from .csvio import label_column, numeric_column, read_frame, write_frame
from .errors import DataValidationError

logger = logging.getLogger(__name__)

DATASET_LETTERS = tuple("abcdefghi")
MAX_SEED = 2**64 - 1


def _check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed <= MAX_SEED:
        raise DataValidationError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def derive_seed(seed: int, *keys: int) -> int:
    """Child seed for ``keys`` derived from ``seed`` through ``numpy.random.SeedSequence``."""

    sequence = np.random.SeedSequence([_check_seed(seed), *[int(k) for k in keys]])
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


@dataclass(slots=True, frozen=True)
class DatasetSpec:
    """Positive class plus difficult and easy negatives, all Gaussian in x."""

    n_pos: int
    m_p: float
    sigma_p: float
    n_diff: int
    m_n: float
    sigma_n: float
    n_easy: int
    m_easy: float
    sigma_easy: float
    seed: int = 0

    def __post_init__(self) -> None:
        if min(self.n_pos, self.n_diff, self.n_easy) < 0:
            raise DataValidationError("counts must be non-negative")
        if self.n_pos < 1:
            raise DataValidationError("n_pos must be at least 1")
        if self.n_diff + self.n_easy < 1:
            raise DataValidationError("at least one negative (difficult or easy) is required")
        for name in ("sigma_p", "sigma_n", "sigma_easy"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise DataValidationError(f"{name} must be positive, got {value}")
        for name in ("m_p", "m_n", "m_easy"):
            if not math.isfinite(getattr(self, name)):
                raise DataValidationError(f"{name} must be finite")
        _check_seed(self.seed)

    @property
    def size(self) -> int:
        return self.n_pos + self.n_diff + self.n_easy


@dataclass(slots=True, frozen=True)
class RawDataset:
    """Feature/label records ``(x_i, y_i)`` with ``y_i`` in {+1, -1}."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self) -> None:
        x = np.array(self.x, dtype=float, copy=True)
        y_raw = np.asarray(self.y)
        if x.ndim != 1 or y_raw.shape != x.shape:
            raise DataValidationError("x and y must be 1-D arrays of equal length")
        if not np.all(np.isfinite(x)):
            raise DataValidationError(f"record {int(np.argmin(np.isfinite(x)))}: x is not finite")
        bad = ~np.isin(y_raw, (1, -1))
        if bad.any():
            index = int(bad.nonzero()[0][0])
            raise DataValidationError(f"record {index}: label {y_raw[index]!r} is not -1 or 1")
        y = y_raw.astype(np.int8)
        x.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def __len__(self) -> int:
        return int(self.x.size)

    @classmethod
    def from_records(cls, records: Iterable[Tuple[float, int]]) -> "RawDataset":
        pairs = list(records)
        x = [float(item[0]) for item in pairs]
        y = [int(item[1]) for item in pairs]
        return cls(x=np.asarray(x, dtype=float), y=np.asarray(y, dtype=np.int8))

    def records(self) -> Iterator[Tuple[float, int]]:
        for value, label in zip(self.x, self.y):
            yield float(value), int(label)

    @property
    def n_pos(self) -> int:
        return int(np.count_nonzero(self.y == 1))

    @property
    def n_neg(self) -> int:
        return int(np.count_nonzero(self.y == -1))

    def require_both_classes(self) -> None:
        if self.n_pos == 0 or self.n_neg == 0:
            raise DataValidationError("at least one record of each class is required")


def generate_synthetic(spec: DatasetSpec) -> RawDataset:
    """Draw positives, then difficult negatives, then easy negatives from one PCG64 stream."""

    rng = np.random.default_rng(spec.seed)
    positives = rng.normal(spec.m_p, spec.sigma_p, spec.n_pos)
    difficult = rng.normal(spec.m_n, spec.sigma_n, spec.n_diff)
    easy = rng.normal(spec.m_easy, spec.sigma_easy, spec.n_easy)
    x = np.concatenate([positives, difficult, easy])
    y = np.concatenate(
        [
            np.ones(spec.n_pos, dtype=np.int8),
            -np.ones(spec.n_diff + spec.n_easy, dtype=np.int8),
        ]
    )
    logger.debug("generated %d records (seed=%d)", x.size, spec.seed)
    return RawDataset(x=x, y=y)


def _load_grid_config() -> Dict:
    text = resources.files(__package__).joinpath("grid.yaml").read_text(encoding="utf-8")
    return yaml.safe_load(text)


def benchmark_grid(seed: int) -> Dict[str, DatasetSpec]:
    """The nine datasets a..i with per-dataset seeds derived from ``seed``."""

    config = _load_grid_config()
    base = config["base"]
    columns = config["columns"]
    rows = config["rows"]
    specs: Dict[str, DatasetSpec] = {}
    for index, letter in enumerate(DATASET_LETTERS):
        row, column = divmod(index, 3)
        specs[letter] = DatasetSpec(
            n_pos=int(base["n_pos"]),
            m_p=float(base["m_p"]),
            sigma_p=float(base["sigma_p"]),
            n_diff=int(base["n_diff"]),
            m_n=float(columns[column]["m_n"]),
            sigma_n=float(base["sigma_n"]),
            n_easy=int(rows[row]["n_easy"]),
            m_easy=float(base["m_easy"]),
            sigma_easy=float(base["sigma_easy"]),
            seed=derive_seed(seed, index),
        )
    return specs


def save_raw_csv(data: RawDataset, path: Path) -> None:
    frame = pd.DataFrame({"x": data.x, "y": data.y.astype(int)})
    write_frame(frame, path)


def load_raw_csv(path: Path) -> RawDataset:
    frame = read_frame(path, ("x", "y"))
    x = numeric_column(frame, "x", path)
    y = label_column(frame, "y", path)
    return RawDataset(x=x, y=y)
