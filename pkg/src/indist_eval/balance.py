"""The balance function B(r) and its decomposition into B+ and B-.

B(r) is the probability that a random positive outscores a random member of
the labelled set {s > r} (independent draws, ties count one half). With
k = P v(r) labelled positives and m = N u(r) labelled negatives

    B(r) = [P v(r)^2 / 2 + N J(r)] / [P v(r) + N u(r)],
    J(r) = (1/N) * sum over negatives n_j > r of v~(n_j),

where v~ is the tie-adjusted true positive rate. Two terms of the commonly
printed closed form are corrected here:

* the denominator is ``P v + N u`` (not ``N v + P u``), which is what makes
  B+ = v C / 2 hold;
* the negative-class integrand uses ``v`` (not ``u``), which is what makes
  B(-inf) = (P/2 + N A) / (N + P).

Everything is computed from integer pair counts scaled by two, so each B value
is a single correctly rounded division.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
import pandas as pd

from .errors import EmptyLabelSet
from .metrics import auc_rank, count_above, doubled_wins
from .scores import ScoredDataset

logger = logging.getLogger(__name__)

# Outer grid sentinels sit max(1, |s|) beyond the extreme scores s.
SENTINEL_OFFSET = 1.0


@dataclass(slots=True, frozen=True)
class BalanceValue:
    r: float
    b: float
    b_plus: float
    b_minus: float


@dataclass(slots=True, frozen=True)
class BalanceCurve:
    """B, its components and the matching rates on the threshold grid.

    The last grid point lies above every score; its labelled set is empty and
    it carries the B(+inf) = 0 limit with NaN precision.
    """

    thresholds: np.ndarray
    b: np.ndarray
    b_plus: np.ndarray
    b_minus: np.ndarray
    precision: np.ndarray
    v: np.ndarray
    u: np.ndarray
    f1: np.ndarray

    def __len__(self) -> int:
        return int(self.thresholds.size)

    def is_non_increasing(self) -> bool:
        return bool(np.all(np.diff(self.b) <= 0.0))

    def as_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {"r": self.thresholds, "B": self.b, "B_plus": self.b_plus, "B_minus": self.b_minus}
        )

    def tradeoff_frame(self) -> pd.DataFrame:
        """B and B+ against precision, both rates and F1, parameterised by r."""

        return pd.DataFrame(
            {
                "r": self.thresholds,
                "B": self.b,
                "B_plus": self.b_plus,
                "precision": self.precision,
                "v": self.v,
                "u": self.u,
                "f1": self.f1,
            }
        )

    def f1_peak(self) -> Optional[int]:
        """Grid index of the largest F1 (the smallest r on ties), None if F1 is undefined everywhere."""

        if np.all(np.isnan(self.f1)):
            return None
        return int(np.nanargmax(self.f1))


def _suffix_sums(values: np.ndarray) -> np.ndarray:
    """``out[j] = values[j:].sum()`` with a trailing zero."""

    return np.concatenate([np.cumsum(values[::-1])[::-1], [0]]).astype(np.int64)


def _balance_counts(data: ScoredDataset, thresholds: np.ndarray):
    """Labelled positives k, labelled negatives m, doubled negative wins W."""

    negative_wins = _suffix_sums(doubled_wins(data.pos_scores, data.neg_scores))
    k = count_above(data.pos_scores, thresholds).astype(np.int64)
    neg_start = np.searchsorted(data.neg_scores, thresholds, side="right")
    m = (data.n_neg - neg_start).astype(np.int64)
    wins = negative_wins[neg_start]
    return k, m, wins


def b_exact(data: ScoredDataset, r: float) -> BalanceValue:
    k, m, wins = _balance_counts(data, np.asarray([r], dtype=float))
    k, m, wins = int(k[0]), int(m[0]), int(wins[0])
    if k + m == 0:
        raise EmptyLabelSet(r)
    denominator = 2 * data.n_pos * (k + m)
    return BalanceValue(
        r=float(r),
        b=(k * k + wins) / denominator,
        b_plus=(k * k) / denominator,
        b_minus=wins / denominator,
    )


def b_limit_neg_inf(data: ScoredDataset) -> float:
    """B as r -> -inf: (P/2 + N A) / (N + P)."""

    area = auc_rank(data).value
    return (data.n_pos / 2.0 + data.n_neg * area) / (data.n_neg + data.n_pos)


def balance_grid(data: ScoredDataset) -> np.ndarray:
    """Below-min sentinel, midpoints of consecutive distinct scores, above-max sentinel.

    A midpoint that rounds onto the upper score falls back to the lower one,
    so every grid point keeps the labelled set {s > lower}.
    """

    distinct = data.distinct_scores
    lower, upper = distinct[:-1], distinct[1:]
    midpoints = lower / 2.0 + upper / 2.0
    midpoints = np.where((midpoints > lower) & (midpoints < upper), midpoints, lower)
    low, high = float(distinct[0]), float(distinct[-1])
    below = low - max(SENTINEL_OFFSET, abs(low))
    above = high + max(SENTINEL_OFFSET, abs(high))
    return np.concatenate([[below], midpoints, [above]])


def balance_curve(data: ScoredDataset) -> BalanceCurve:
    thresholds = balance_grid(data)
    k, m, wins = _balance_counts(data, thresholds)
    labelled = k + m
    denominator = 2 * data.n_pos * np.maximum(labelled, 1)
    empty = labelled == 0
    b = np.where(empty, 0.0, (k * k + wins) / denominator)
    b_plus = np.where(empty, 0.0, (k * k) / denominator)
    b_minus = np.where(empty, 0.0, wins / denominator)
    precision = np.where(empty, np.nan, k / np.maximum(labelled, 1))
    v = k / data.n_pos
    u = m / data.n_neg
    with np.errstate(invalid="ignore", divide="ignore"):
        f1 = np.where(precision + v > 0, 2.0 * precision * v / (precision + v), np.nan)
    curve = BalanceCurve(
        thresholds=thresholds,
        b=b,
        b_plus=b_plus,
        b_minus=b_minus,
        precision=precision,
        v=v,
        u=u,
        f1=f1,
    )
    logger.debug("balance curve on %d grid points", len(curve))
    return curve
