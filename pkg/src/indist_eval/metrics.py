"""Classification rates, empirical CDFs, rank AUC, precision and F1."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.stats import rankdata

from .errors import EmptyLabelSet, UndefinedMetric
from .scores import ScoredDataset


class ScoreClass(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


@dataclass(slots=True, frozen=True)
class Rates:
    """Rates at a threshold ``r``.

    ``v``/``u`` count strictly-above scores; the ``*_tie`` variants add half of
    the scores equal to ``r`` and are only used inside pairwise probabilities.
    """

    v: float
    u: float
    v_tie: float
    u_tie: float


@dataclass(slots=True, frozen=True)
class AucEstimate:
    value: float
    std_error: float = 0.0
    n_pairs: int = 0


def count_above(sorted_scores: np.ndarray, r):
    """Number of scores strictly greater than ``r`` (vectorised over ``r``)."""

    return sorted_scores.size - np.searchsorted(sorted_scores, r, side="right")


def count_equal(sorted_scores: np.ndarray, r):
    return np.searchsorted(sorted_scores, r, side="right") - np.searchsorted(sorted_scores, r, side="left")


def doubled_wins(reference: np.ndarray, values: np.ndarray) -> np.ndarray:
    """``2*#{reference > s} + #{reference == s}`` for every ``s`` in ``values``.

    Twice the tie-adjusted win count keeps pair sums in exact integers.
    """

    above = count_above(reference, values)
    equal = count_equal(reference, values)
    return (2 * above + equal).astype(np.int64)


def empirical_cdf(data: ScoredDataset, score_class: ScoreClass, r: float) -> float:
    """F(r) = fraction of the class scoring strictly below ``r``."""

    scores = data.pos_scores if ScoreClass(score_class) is ScoreClass.POSITIVE else data.neg_scores
    return float(np.searchsorted(scores, r, side="left")) / scores.size


def rates_at(data: ScoredDataset, r: float) -> Rates:
    pos_above = int(count_above(data.pos_scores, r))
    neg_above = int(count_above(data.neg_scores, r))
    pos_tied = int(count_equal(data.pos_scores, r))
    neg_tied = int(count_equal(data.neg_scores, r))
    return Rates(
        v=pos_above / data.n_pos,
        u=neg_above / data.n_neg,
        v_tie=(pos_above + 0.5 * pos_tied) / data.n_pos,
        u_tie=(neg_above + 0.5 * neg_tied) / data.n_neg,
    )


def auc_rank(data: ScoredDataset) -> AucEstimate:
    """Mann-Whitney AUC from average ranks of the pooled scores (ties count one half)."""

    pooled = np.concatenate([data.pos_scores, data.neg_scores])
    ranks = rankdata(pooled, method="average")
    n_pos, n_neg = data.n_pos, data.n_neg
    u_statistic = float(np.sum(ranks[:n_pos])) - n_pos * (n_pos + 1) / 2.0
    return AucEstimate(value=u_statistic / (n_pos * n_neg), std_error=0.0, n_pairs=n_pos * n_neg)


def auc_integral(data: ScoredDataset) -> AucEstimate:
    """A as the empirical integral of ``f_N(t) * v(t)`` with tie-adjusted ``v``."""

    wins = int(np.sum(doubled_wins(data.pos_scores, data.neg_scores)))
    n_pairs = data.n_pos * data.n_neg
    return AucEstimate(value=wins / (2 * n_pairs), std_error=0.0, n_pairs=n_pairs)


def precision_at(data: ScoredDataset, r: float) -> float:
    """C(r) = P v(r) / (P v(r) + N u(r)), the share of labelled items that are positive."""

    true_pos = int(count_above(data.pos_scores, r))
    false_pos = int(count_above(data.neg_scores, r))
    if true_pos + false_pos == 0:
        raise EmptyLabelSet(r)
    return true_pos / (true_pos + false_pos)


def f1_at(data: ScoredDataset, r: float) -> float:
    precision = precision_at(data, r)
    recall = rates_at(data, r).v
    if precision + recall == 0.0:
        raise UndefinedMetric(f"F1 undefined at {r!r}: precision and recall are both zero")
    return 2.0 * precision * recall / (precision + recall)
