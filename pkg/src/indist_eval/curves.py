"""ROC and precision-recall curves sampled at every distinct score."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Tuple

import numpy as np
import pandas as pd

from .metrics import AucEstimate, count_above
from .scores import ScoredDataset

CURVE_COLUMNS = ("r", "u", "v", "precision", "f1")


@dataclass(slots=True, frozen=True)
class Curve:
    """Parametric curve over increasing thresholds ``r``.

    ``u`` and ``v`` are non-increasing along the sequence. ``precision`` and
    ``f1`` are NaN where the labelled set is empty or F1 is undefined.
    """

    thresholds: np.ndarray
    u: np.ndarray
    v: np.ndarray
    precision: np.ndarray
    f1: np.ndarray
    orientation: str
    n_pos: int
    n_neg: int

    def __len__(self) -> int:
        return int(self.thresholds.size)

    @property
    def points(self) -> Iterator[Tuple[float, float, float, float, float]]:
        for row in zip(self.thresholds, self.u, self.v, self.precision, self.f1):
            yield tuple(float(value) for value in row)

    def as_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "r": self.thresholds,
                "u": self.u,
                "v": self.v,
                "precision": self.precision,
                "f1": self.f1,
            },
            columns=list(CURVE_COLUMNS),
        )


def sample_curve(data: ScoredDataset, thresholds: np.ndarray, orientation: str) -> Curve:
    thresholds = np.asarray(thresholds, dtype=float)
    true_pos = count_above(data.pos_scores, thresholds)
    false_pos = count_above(data.neg_scores, thresholds)
    labelled = true_pos + false_pos
    v = true_pos / data.n_pos
    u = false_pos / data.n_neg
    with np.errstate(invalid="ignore", divide="ignore"):
        precision = np.where(labelled > 0, true_pos / np.maximum(labelled, 1), np.nan)
        f1 = np.where(precision + v > 0, 2.0 * precision * v / (precision + v), np.nan)
    return Curve(
        thresholds=thresholds,
        u=u,
        v=v,
        precision=precision,
        f1=f1,
        orientation=orientation,
        n_pos=data.n_pos,
        n_neg=data.n_neg,
    )


def roc_curve(data: ScoredDataset) -> Curve:
    """Thresholds -inf, each distinct score, +inf: from (u, v) = (1, 1) down to (0, 0)."""

    distinct = data.distinct_scores
    thresholds = np.concatenate([[-np.inf], distinct, [np.inf]])
    return sample_curve(data, thresholds, orientation="roc")


def auc_trapezoid(curve: Curve) -> AucEstimate:
    """Trapezoidal area under (u, v); equal to the rank AUC since ties become diagonals."""

    area = float(np.trapezoid(curve.v[::-1], curve.u[::-1]))
    return AucEstimate(value=area, std_error=0.0, n_pairs=curve.n_pos * curve.n_neg)


def pr_curve(data: ScoredDataset) -> Curve:
    """Thresholds -inf and every distinct score except the maximum (non-empty labelled sets)."""

    distinct = data.distinct_scores
    thresholds = np.concatenate([[-np.inf], distinct[:-1]])
    return sample_curve(data, thresholds, orientation="pr")


def auprc(curve: Curve) -> float:
    """Area under precision vs recall, linear between achieved points, no extrapolation to recall 0."""

    achieved = ~np.isnan(curve.precision)
    recall = curve.v[achieved][::-1]
    precision = curve.precision[achieved][::-1]
    if recall.size < 2:
        return 0.0
    return float(np.trapezoid(precision, recall))
