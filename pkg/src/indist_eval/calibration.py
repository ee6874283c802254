"""Threshold calibration: solve B(r) = target on the empirical step function."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .balance import BalanceCurve, balance_curve
from .errors import DataValidationError, NoBalancedThreshold, NotConverged
from .logistic import LogisticModel
from .scores import ScoredDataset

logger = logging.getLogger(__name__)

DEFAULT_TARGETS = (0.4, 0.5, 0.6)


@dataclass(slots=True, frozen=True)
class BalanceTarget:
    target: float = 0.5

    def __post_init__(self) -> None:
        if not (math.isfinite(self.target) and 0.0 < self.target < 1.0):
            raise DataValidationError(f"balance target must lie in (0, 1), got {self.target}")


@dataclass(slots=True, frozen=True)
class BalanceThreshold:
    """Solution of B(r) = target with the grid bracket it came from.

    ``r`` interpolates linearly between ``r_lo`` (B > target) and ``r_hi``
    (B <= target). Metrics "at the threshold" use the labelled set at
    ``r_hi``, which keeps them invariant under increasing score transforms.
    """

    target: float
    r: float
    r_lo: float
    r_hi: float
    b_lo: float
    b_hi: float
    multi_crossing: bool = False

    @property
    def labelled_threshold(self) -> float:
        return self.r_hi


def solve_balance_threshold(
    data: ScoredDataset,
    target: BalanceTarget = BalanceTarget(),
    curve: Optional[BalanceCurve] = None,
) -> BalanceThreshold:
    """First down-crossing of ``target`` scanning the grid in increasing r."""

    curve = curve if curve is not None else balance_curve(data)
    level = target.target
    limit = float(curve.b[0])
    if limit <= level:
        raise NoBalancedThreshold(target=level, limit=limit)

    above = curve.b > level
    crossings = np.flatnonzero(above[:-1] & ~above[1:])
    first = int(crossings[0])
    multi = crossings.size > 1
    if multi:
        logger.warning("B(r) crosses %g %d times; using the smallest r", level, crossings.size)

    r_lo, r_hi = float(curve.thresholds[first]), float(curve.thresholds[first + 1])
    b_lo, b_hi = float(curve.b[first]), float(curve.b[first + 1])
    r = r_lo + (b_lo - level) / (b_lo - b_hi) * (r_hi - r_lo)
    return BalanceThreshold(
        target=level,
        r=float(r),
        r_lo=r_lo,
        r_hi=r_hi,
        b_lo=b_lo,
        b_hi=b_hi,
        multi_crossing=bool(multi),
    )


def naive_threshold(model: LogisticModel, probability: float = 0.5) -> float:
    """Score at which the fitted model predicts ``probability`` for the positive class.

    Scores are ``log p``, so the usual p = 1/2 cut sits at ``log(1/2)``
    whatever the coefficients.
    """

    if not model.converged:
        raise NotConverged("naive threshold needs a converged model", model.coefficients)
    return math.log(probability)
