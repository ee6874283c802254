"""Seeded Monte Carlo estimators of A and B(r) by random pair comparison."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import DataValidationError, EmptyLabelSet, NoValidPairs
from .metrics import AucEstimate, count_above
from .scores import ScoredDataset

logger = logging.getLogger(__name__)


@dataclass(slots=True, frozen=True)
class MonteCarloEstimate:
    value: float
    std_error: float
    n_samples: int
    n_redraws: int = 0


def _pair_outcomes(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """1 when left outscores right, 1/2 on ties, 0 otherwise."""

    return 0.5 * (np.sign(left - right) + 1.0)


def _std_error(mean: float, n_samples: int) -> float:
    return math.sqrt(max(mean * (1.0 - mean), 0.0) / n_samples)


def _check_samples(n_samples: int) -> None:
    if n_samples < 1:
        raise DataValidationError(f"n_samples must be at least 1, got {n_samples}")


def auc_pairwise_mc(data: ScoredDataset, n_samples: int, seed: int) -> AucEstimate:
    """Mean outcome of ``n_samples`` independent positive-vs-negative comparisons."""

    _check_samples(n_samples)
    rng = np.random.default_rng(seed)
    pos_index = rng.integers(0, data.n_pos, size=n_samples)
    neg_index = rng.integers(0, data.n_neg, size=n_samples)
    outcomes = _pair_outcomes(data.pos_scores[pos_index], data.neg_scores[neg_index])
    mean = float(np.mean(outcomes))
    return AucEstimate(value=mean, std_error=_std_error(mean, n_samples), n_pairs=n_samples)


def b_mc(data: ScoredDataset, r: float, n_samples: int, seed: int) -> MonteCarloEstimate:
    """Compare a random positive with a random labelled item, redrawing same-item pairs.

    The labelled pool lists the positives above ``r`` first, so a pool index
    ``j < k`` is the positive ``first_pos + j``; drawing that same positive on
    both sides throws the whole pair away.
    """

    _check_samples(n_samples)
    first_pos = data.n_pos - int(count_above(data.pos_scores, r))
    first_neg = data.n_neg - int(count_above(data.neg_scores, r))
    pool = np.concatenate([data.pos_scores[first_pos:], data.neg_scores[first_neg:]])
    labelled_pos = data.n_pos - first_pos
    if pool.size == 0:
        raise EmptyLabelSet(r)
    if data.n_pos * pool.size == labelled_pos:
        raise NoValidPairs("the only labelled item is the only positive")

    rng = np.random.default_rng(seed)
    chosen_pos = np.empty(0, dtype=np.int64)
    chosen_pool = np.empty(0, dtype=np.int64)
    redraws = 0
    while chosen_pos.size < n_samples:
        needed = n_samples - chosen_pos.size
        pos_index = rng.integers(0, data.n_pos, size=needed)
        pool_index = rng.integers(0, pool.size, size=needed)
        same = (pool_index < labelled_pos) & (first_pos + pool_index == pos_index)
        redraws += int(np.count_nonzero(same))
        chosen_pos = np.concatenate([chosen_pos, pos_index[~same]])
        chosen_pool = np.concatenate([chosen_pool, pool_index[~same]])

    outcomes = _pair_outcomes(data.pos_scores[chosen_pos], pool[chosen_pool])
    mean = float(np.mean(outcomes))
    logger.debug("b_mc at r=%r: %d samples, %d same-item redraws", r, n_samples, redraws)
    return MonteCarloEstimate(
        value=mean, std_error=_std_error(mean, n_samples), n_samples=n_samples, n_redraws=redraws
    )
