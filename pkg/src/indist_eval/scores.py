"""Scored datasets: sorted positive and negative score multisets."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np
import pandas as pd

from .csvio import label_column, numeric_column, read_frame, write_frame
from .errors import DataValidationError


def _frozen_sorted(values: np.ndarray, name: str) -> np.ndarray:
    array = np.sort(np.asarray(values, dtype=float).ravel())
    if array.size == 0:
        raise DataValidationError(f"{name} must contain at least one score")
    if not np.all(np.isfinite(array)):
        raise DataValidationError(f"{name} contains non-finite scores")
    array.setflags(write=False)
    return array


@dataclass(slots=True, frozen=True)
class ScoredDataset:
    """Empirical score distributions of both classes.

    ``pos_scores`` and ``neg_scores`` are kept sorted ascending so every rate,
    CDF and pair count reduces to ``numpy.searchsorted``.
    """

    pos_scores: np.ndarray
    neg_scores: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "pos_scores", _frozen_sorted(self.pos_scores, "pos_scores"))
        object.__setattr__(self, "neg_scores", _frozen_sorted(self.neg_scores, "neg_scores"))

    @classmethod
    def from_labelled(cls, scores: np.ndarray, labels: np.ndarray) -> "ScoredDataset":
        scores = np.asarray(scores, dtype=float)
        labels = np.asarray(labels)
        if scores.shape != labels.shape:
            raise DataValidationError("scores and labels must have equal length")
        if not np.all(np.isin(labels, (1, -1))):
            raise DataValidationError("labels must be -1 or 1")
        return cls(pos_scores=scores[labels == 1], neg_scores=scores[labels == -1])

    @property
    def n_pos(self) -> int:
        return int(self.pos_scores.size)

    @property
    def n_neg(self) -> int:
        return int(self.neg_scores.size)

    @property
    def distinct_scores(self) -> np.ndarray:
        return np.unique(np.concatenate([self.pos_scores, self.neg_scores]))

    def map_scores(self, transform: Callable[[np.ndarray], np.ndarray]) -> "ScoredDataset":
        """Apply ``transform`` to every score; rank metrics survive increasing maps."""

        return ScoredDataset(
            pos_scores=transform(np.array(self.pos_scores)),
            neg_scores=transform(np.array(self.neg_scores)),
        )

    def as_frame(self) -> pd.DataFrame:
        scores = np.concatenate([self.pos_scores, self.neg_scores])
        labels = np.concatenate(
            [np.ones(self.n_pos, dtype=int), -np.ones(self.n_neg, dtype=int)]
        )
        order = np.argsort(scores, kind="stable")
        return pd.DataFrame({"score": scores[order], "label": labels[order]})


def save_scored_csv(data: ScoredDataset, path: Path) -> None:
    write_frame(data.as_frame(), path)


def load_scored_csv(path: Path) -> ScoredDataset:
    frame = read_frame(path, ("score", "label"))
    scores = numeric_column(frame, "score", path)
    labels = label_column(frame, "label", path)
    if not np.any(labels == 1):
        raise DataValidationError(f"{path}: no positive (label 1) rows")
    if not np.any(labels == -1):
        raise DataValidationError(f"{path}: no negative (label -1) rows")
    return ScoredDataset.from_labelled(scores, labels)
