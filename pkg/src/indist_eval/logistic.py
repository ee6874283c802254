"""One-feature logistic regression fitted by iteratively reweighted least squares."""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass
from typing import Any, Dict, Tuple

import numpy as np
from scipy.special import expit, log_expit

from .datasets import RawDataset
from .errors import NotConverged, SeparationDetected
from .scores import ScoredDataset

logger = logging.getLogger(__name__)

DEFAULT_MAX_ITER = 100
DEFAULT_TOL = 1e-10
# |beta| beyond this is treated as a diverging (separated) fit.
SEPARATION_CAP = 1e8


@dataclass(slots=True, frozen=True)
class LogisticModel:
    beta0: float
    beta1: float
    converged: bool = True
    iterations: int = 0

    def __post_init__(self) -> None:
        if self.converged and not (math.isfinite(self.beta0) and math.isfinite(self.beta1)):
            raise ValueError("converged model must have finite coefficients")

    @property
    def coefficients(self) -> Tuple[float, float]:
        return self.beta0, self.beta1

    def linear_predictor(self, x: np.ndarray) -> np.ndarray:
        return self.beta0 + self.beta1 * np.asarray(x, dtype=float)

    def predict_proba(self, x: np.ndarray) -> np.ndarray:
        """Predicted probability of the positive class."""

        return expit(self.linear_predictor(x))

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "LogisticModel":
        return cls(
            beta0=float(payload["beta0"]),
            beta1=float(payload["beta1"]),
            converged=bool(payload.get("converged", True)),
            iterations=int(payload.get("iterations", 0)),
        )


def _design(data: RawDataset) -> Tuple[np.ndarray, np.ndarray]:
    features = np.column_stack([np.ones(len(data)), data.x])
    target = (data.y.astype(float) + 1.0) / 2.0
    return features, target


def log_likelihood(coefficients: Tuple[float, float], data: RawDataset) -> float:
    """Bernoulli log-likelihood per record."""

    features, target = _design(data)
    eta = features @ np.asarray(coefficients, dtype=float)
    return float(np.mean(target * log_expit(eta) + (1.0 - target) * log_expit(-eta)))


def log_likelihood_gradient(coefficients: Tuple[float, float], data: RawDataset) -> np.ndarray:
    """Analytic gradient of :func:`log_likelihood` with respect to (beta0, beta1)."""

    features, target = _design(data)
    eta = features @ np.asarray(coefficients, dtype=float)
    return features.T @ (target - expit(eta)) / len(data)


def _check_separation(data: RawDataset) -> None:
    positives = data.x[data.y == 1]
    negatives = data.x[data.y == -1]
    if np.ptp(data.x) == 0.0:
        raise NotConverged("feature is constant; slope is not identifiable")
    # In one dimension the MLE is missing exactly when the classes do not overlap.
    if negatives.max() <= positives.min() or positives.max() <= negatives.min():
        raise SeparationDetected("classes are separable in x; likelihood has no maximum")


def fit_logistic_1d(
    data: RawDataset,
    max_iter: int = DEFAULT_MAX_ITER,
    tol: float = DEFAULT_TOL,
) -> LogisticModel:
    """Maximise the Bernoulli likelihood of ``y`` given ``x`` with Newton/IRLS steps.

    Convergence is declared once the largest coefficient change drops below
    ``tol``. Separable inputs raise :class:`SeparationDetected`, as does any
    iterate whose coefficients exceed ``SEPARATION_CAP``.
    """

    data.require_both_classes()
    _check_separation(data)
    features, target = _design(data)
    beta = np.zeros(2)

    for iteration in range(1, max_iter + 1):
        eta = features @ beta
        prob = expit(eta)
        weights = prob * (1.0 - prob)
        gradient = features.T @ (target - prob)
        hessian = features.T @ (features * weights[:, None])
        try:
            step = np.linalg.solve(hessian, gradient)
        except np.linalg.LinAlgError as exc:
            raise NotConverged(
                f"singular IRLS system at iteration {iteration}", coefficients=tuple(beta)
            ) from exc
        beta = beta + step
        if not np.all(np.isfinite(beta)) or np.max(np.abs(beta)) > SEPARATION_CAP:
            raise SeparationDetected(
                f"coefficients diverged past {SEPARATION_CAP:g}", coefficients=tuple(beta)
            )
        change = float(np.max(np.abs(step)))
        logger.debug("IRLS iteration %d: beta=%s change=%.3e", iteration, beta, change)
        if change < tol:
            return LogisticModel(
                beta0=float(beta[0]), beta1=float(beta[1]), converged=True, iterations=iteration
            )

    raise NotConverged(
        f"no convergence after {max_iter} iterations (tol={tol:g})", coefficients=tuple(beta)
    )


def score_dataset(model: LogisticModel, data: RawDataset) -> ScoredDataset:
    """Score every record with ``log p(x)``, the log predicted positive-class probability."""

    if not model.converged:
        raise NotConverged("cannot score with a model that did not converge", model.coefficients)
    scores = log_expit(model.linear_predictor(data.x))
    return ScoredDataset.from_labelled(scores, data.y)
