"""Exception hierarchy shared by the evaluation modules."""

from __future__ import annotations

from typing import Optional, Tuple


class IndistError(Exception):
    """Root of every error raised by ``indist_eval``."""


class DataValidationError(IndistError, ValueError):
    """Invalid dataset specification, record or file content."""


class FitError(IndistError):
    """Logistic fit could not produce a usable model."""

    reason = "fit_failed"

    def __init__(self, message: str, coefficients: Optional[Tuple[float, float]] = None) -> None:
        super().__init__(message)
        self.coefficients = coefficients


class SeparationDetected(FitError):
    """Classes are (quasi-)separable so the likelihood has no maximum."""

    reason = "separation"


class NotConverged(FitError):
    """IRLS stopped before the coefficient update fell below tolerance."""

    reason = "not_converged"


class MetricError(IndistError, ValueError):
    """A metric is undefined for the requested threshold or dataset."""


class EmptyLabelSet(MetricError):
    """No score lies strictly above the threshold."""

    def __init__(self, threshold: float) -> None:
        super().__init__(f"no score lies above threshold {threshold!r}")
        self.threshold = threshold


class UndefinedMetric(MetricError):
    """Metric formula degenerates (e.g. F1 with precision + recall = 0)."""


class NoBalancedThreshold(MetricError):
    """B(r) never drops through the requested target."""

    def __init__(self, target: float, limit: float) -> None:
        super().__init__(f"B(-inf)={limit:.6f} does not exceed target {target:g}")
        self.target = target
        self.limit = limit


class NoValidPairs(MetricError):
    """Every admissible pair would compare an item with itself."""


class PipelineError(IndistError):
    """A replication stage failed for one dataset."""

    def __init__(self, dataset: str, stage: str, cause: Exception) -> None:
        super().__init__(f"dataset {dataset}: stage {stage} failed: {cause}")
        self.dataset = dataset
        self.stage = stage
        self.cause = cause
